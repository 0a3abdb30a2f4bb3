from .base_bound import BaseBound
from .context import BoundContext, opposing_alpha, resolve_host
from .flux_phase import FluxPhaseScan, flux_phase_scan
from .half_band import HalfBandBound, half_band_check
from .zagreb import ZagrebBound, zagreb_bound_check, zagreb_bound_via_avp
