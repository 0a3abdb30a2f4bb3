"""Command line front end.

Every subcommand reads graph files in the text format of :mod:`maglap.io`
(or builds a named family with zero angles from ``named:FAMILY[:N]``, e.g.
``named:cycle:6``), prints one JSON document (CSV for ``scan``) on stdout and
logs on stderr.
Exit codes: 0 ok, 1 theorem violation or internal inconsistency, 2 input
error, 3 budget exceeded.
"""
import argparse
import json
import logging
import re
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from maglap._version import __version__
from maglap.avp import run_selftest
from maglap.bounds import (
    flux_phase_scan,
    half_band_check,
    zagreb_bound_check,
    zagreb_bound_via_avp,
)
from maglap.coloring import ColoringSearch, bipartite_search, tripartite_search
from maglap.config import BOUND_TOL, GRID_BUDGET, GRID_STEPS
from maglap.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    EighConvergenceError,
    GraphConstructionError,
    MaglapError,
    TheoremViolationError,
    WitnessExtractionError,
)
from maglap.flux import basis_fluxes, construct_gauge, equivalent_to_standard, walk_flux
from maglap.generators import named_graph
from maglap.graph import DirectedGraph, cycle_basis
from maglap.io import read_graph
from maglap.linalg import eigh
from maglap.operator import ThetaAssignment, constant_theta, laplacian, zero_theta
from maglap.utils import SCAN_COLUMNS, run_half_band_campaign, run_zagreb_campaign

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

SIGNIFICANT_DIGITS = 12
ZERO_SNAP = 1e-12

_PI_MULTIPLE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/(?P<den>\d+(?:\.\d+)?))?$"
)


# -----------------------------------------------------------------------------
# ---------------------------------- Output -----------------------------------
# -----------------------------------------------------------------------------


def round_float(x: float) -> Optional[float]:
    """Round to 12 significant digits, snapping ``|x| < 1e-12`` to zero.

    Examples
    --------
    >>> round_float(1 / 3)
    0.333333333333
    >>> round_float(-3e-15)
    0.0
    """
    x = float(x)
    if not np.isfinite(x):
        return None
    if abs(x) < ZERO_SNAP:
        return 0.0
    return float(format(x, f".{SIGNIFICANT_DIGITS}g"))


def to_jsonable(value: Any) -> Any:
    """Turn reports into plain JSON values with rounded floats."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return round_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [round_float(value.real), round_float(value.imag)]
    return value


def emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(to_jsonable(payload), sort_keys=True) + "\n")


# -----------------------------------------------------------------------------
# ------------------------------ Argument types -------------------------------
# -----------------------------------------------------------------------------


def parse_angle(text: str) -> float:
    """Read an angle given as a number or a multiple of pi.

    Examples
    --------
    >>> parse_angle("2pi/3") == 2 * np.pi / 3
    True
    >>> parse_angle("0.5")
    0.5
    """
    s = text.strip().lower().replace(" ", "")
    match = _PI_MULTIPLE.match(s)
    if match:
        coef = match.group("coef")
        if coef in ("", "+"):
            factor = 1.0
        elif coef == "-":
            factor = -1.0
        else:
            factor = float(coef)
        den = float(match.group("den")) if match.group("den") else 1.0
        if den == 0:
            raise argparse.ArgumentTypeError(f"angle {text!r} divides by zero.")
        return factor * np.pi / den
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"angle should be a number or a multiple of pi such as '2pi/3', got {text!r}."
        )
    if not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle should be finite, got {text!r}.")
    return value


def parse_walk(text: str) -> List[int]:
    """Read a walk given as comma separated vertices, e.g. ``0,1,2,0``."""
    try:
        walk = [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"walk should be comma separated vertex ids, got {text!r}."
        )
    if not walk:
        raise argparse.ArgumentTypeError("walk should contain at least one vertex.")
    return walk


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}.")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}.")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}.")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}.")
    return value


NAMED_PREFIX = "named:"


def _read_named(text: str) -> DirectedGraph:
    """Build ``named:FAMILY[:N]``, e.g. ``named:cycle:6`` or ``named:petersen``."""
    parts = text[len(NAMED_PREFIX) :].split(":")
    if len(parts) > 2:
        raise ValueError(f"expected named:FAMILY[:N], got {text!r}.")
    n = None
    if len(parts) == 2:
        if not parts[1].isdigit():
            raise ValueError(f"vertex count should be a non-negative int, got {parts[1]!r}.")
        n = int(parts[1])
    return named_graph(parts[0], n)


def _load(path: str, theta_constant: Optional[float] = None) -> Tuple[DirectedGraph, ThetaAssignment]:
    if path.startswith(NAMED_PREFIX):
        g = _read_named(path)
        theta = zero_theta(g)
    else:
        g, theta = read_graph(path)
    if theta_constant is not None:
        theta = constant_theta(g, theta_constant)
    return g, theta


# -----------------------------------------------------------------------------
# -------------------------------- Subcommands --------------------------------
# -----------------------------------------------------------------------------


def cmd_spectrum(args: argparse.Namespace) -> int:
    g, theta = _load(args.file, args.theta_constant)
    m = laplacian(g, theta)
    decomposition = eigh(m, method=args.method)
    emit({"eigenvalues": decomposition.eigenvalues, "residual": decomposition.residual(m)})
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    g, theta = _load(args.file, args.theta_constant)
    report = zagreb_bound_check(g, theta, args.k, d0=args.d0, tol=args.tol)
    holds = report["holds"]
    if args.via_avp:
        via_avp = zagreb_bound_via_avp(g, theta, args.k, d0=report["d0"], tol=args.tol)
        report["via_avp"] = via_avp
        holds = holds and via_avp["holds"]
    emit(report)
    return EXIT_OK if holds else EXIT_VIOLATION


def cmd_halfband(args: argparse.Namespace) -> int:
    g, theta = _load(args.file, args.theta_constant)
    report = half_band_check(g, theta, args.d, args.k, tol=args.tol)
    emit(report)
    return EXIT_OK if report["holds"] else EXIT_VIOLATION


def cmd_phase_scan(args: argparse.Namespace) -> int:
    g, _ = _load(args.file)
    scan = flux_phase_scan(
        g,
        args.k,
        grid_steps=args.grid_steps,
        budget=args.grid_budget,
        reduce_gauge=args.reduce_gauge,
        d0=args.d0,
    )
    emit(
        {
            "theta": scan.theta.values,
            "best_sum": scan.best_sum,
            "best_mean": scan.best_sum / args.k,
            "cap": scan.cap,
            "exhaustive": scan.exhaustive,
            "evaluations": scan.evaluations,
        }
    )
    return EXIT_OK


def _coloring_payload(search: ColoringSearch) -> Dict[str, Any]:
    return {
        "classes": None if search.witness is None else search.witness.classes(),
        "orientations_checked": search.orientations_checked,
    }


def cmd_bipartite(args: argparse.Namespace) -> int:
    g, _ = _load(args.file)
    search = bipartite_search(g, args.k, budget=args.budget)
    emit({"bipartite": search.answer, "k": args.k, **_coloring_payload(search)})
    return EXIT_OK


def cmd_tripartite(args: argparse.Namespace) -> int:
    g, _ = _load(args.file)
    search = tripartite_search(g, budget=args.budget)
    emit({"tripartite": search.answer, **_coloring_payload(search)})
    return EXIT_OK


def cmd_flux(args: argparse.Namespace) -> int:
    g, theta = _load(args.file, args.theta_constant)
    if args.walk is not None:
        emit({"walk": args.walk, "flux": walk_flux(g, theta, args.walk)})
        return EXIT_OK
    emit(
        {
            "cycles": cycle_basis(g).fundamental_cycles,
            "fluxes": basis_fluxes(g, theta),
            "equivalent_to_standard": equivalent_to_standard(g, theta),
        }
    )
    return EXIT_OK


def cmd_gauge_check(args: argparse.Namespace) -> int:
    g1, theta1 = _load(args.file_a)
    g2, theta2 = _load(args.file_b)
    if g1 != g2:
        raise GraphConstructionError(
            "both files should describe the same directed graph with the same edge order."
        )
    phase = construct_gauge(g1, theta1, ThetaAssignment(g1, theta2.values))
    emit(
        {
            "equivalent": phase is not None,
            "gauge": None if phase is None else np.angle(phase),
        }
    )
    return EXIT_OK


def cmd_avp_selftest(args: argparse.Namespace) -> int:
    counts = run_selftest(trials=args.trials, seed=args.seed, verbose=args.verbose)
    emit({"seed": args.seed, "trials": args.trials, "suites": counts})
    failed = sum(c["failed"] for c in counts.values())
    return EXIT_OK if failed == 0 else EXIT_VIOLATION


def cmd_scan(args: argparse.Namespace) -> int:
    if args.family == "random":
        results = run_zagreb_campaign(
            trials=args.trials, max_n=args.n, seed=args.seed, verbose=args.verbose
        )
        ok = bool(results["holds"].all() and results["avp_holds"].all() and results["agree"].all())
    else:
        results = run_half_band_campaign(
            trials=args.trials, max_n=args.n, seed=args.seed, verbose=args.verbose
        )
        ok = bool(results["holds"].all())

    table = results[SCAN_COLUMNS].copy()
    for column in ("mean", "bound", "slack"):
        table[column] = table[column].map(round_float)
    if args.format == "csv":
        sys.stdout.write(table.to_csv(index=False, float_format="%.12g"))
    else:
        emit(table.to_dict(orient="records"))
    if not ok:
        logger.warning("%s scan has failing rows", args.family)
    return EXIT_OK if ok else EXIT_VIOLATION


# -----------------------------------------------------------------------------
# ---------------------------------- Parser -----------------------------------
# -----------------------------------------------------------------------------


def _add_theta_constant(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--theta-constant",
        type=parse_angle,
        default=None,
        help="use this angle on every edge instead of the file column, e.g. "
        "'pi' or '2pi/3' (write negative values as --theta-constant=-pi)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maglap",
        description="Magnetic Laplacians of directed graphs: spectra, eigenvalue "
        "bounds, spectral colouring tests and flux checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--verbose", action="store_true", help="log progress on stderr (level INFO)"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("spectrum", help="eigenvalues of the magnetic Laplacian")
    p.add_argument("file")
    _add_theta_constant(p)
    p.add_argument("--method", choices=["jacobi", "lapack"], default="jacobi")
    p.set_defaults(func=cmd_spectrum)

    p = subparsers.add_parser("bounds", help="Zagreb bound on the mean of the k lowest eigenvalues")
    p.add_argument("file")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--d0", type=_positive_int, default=None, help="degree of the regular host")
    p.add_argument("--via-avp", action="store_true", help="also certify through the averaged principle")
    p.add_argument("--tol", type=float, default=BOUND_TOL)
    _add_theta_constant(p)
    p.set_defaults(func=cmd_bounds)

    p = subparsers.add_parser("halfband", help="d - 1 bound for subgraphs of d-regular graphs")
    p.add_argument("file")
    p.add_argument("--d", type=_positive_int, required=True)
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--tol", type=float, default=BOUND_TOL)
    _add_theta_constant(p)
    p.set_defaults(func=cmd_halfband)

    p = subparsers.add_parser("phase-scan", help="angles maximising the k lowest eigenvalues")
    p.add_argument("file")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--grid-steps", type=_positive_int, default=GRID_STEPS)
    p.add_argument("--grid-budget", type=_positive_int, default=GRID_BUDGET)
    p.add_argument("--reduce-gauge", action="store_true", help="fix spanning-tree angles to zero")
    p.add_argument("--d0", type=_positive_int, default=None)
    p.set_defaults(func=cmd_phase_scan)

    p = subparsers.add_parser("bipartite", help="spectral bipartiteness test")
    p.add_argument("file")
    p.add_argument("--k", type=_positive_int, default=1, help="use the angle pi/k (default: 1)")
    p.add_argument("--budget", type=_non_negative_int, default=None, help="maximum edge count scanned")
    p.set_defaults(func=cmd_bipartite)

    p = subparsers.add_parser("tripartite", help="spectral 3-colourability test")
    p.add_argument("file")
    p.add_argument("--budget", type=_non_negative_int, default=None, help="maximum edge count scanned")
    p.set_defaults(func=cmd_tripartite)

    p = subparsers.add_parser("flux", help="flux of a closed walk or of the cycle basis")
    p.add_argument("file")
    p.add_argument("--walk", type=parse_walk, default=None, help="closed walk, e.g. 0,1,2,0")
    _add_theta_constant(p)
    p.set_defaults(func=cmd_flux)

    p = subparsers.add_parser("gauge-check", help="whether two angle assignments are gauge equivalent")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.set_defaults(func=cmd_gauge_check)

    p = subparsers.add_parser("avp-selftest", help="random checks of the averaged variational principle")
    p.add_argument("--seed", type=_non_negative_int, default=0)
    p.add_argument("--trials", type=_non_negative_int, default=300)
    p.set_defaults(func=cmd_avp_selftest)

    p = subparsers.add_parser("scan", help="random bound campaign, one CSV row per check")
    p.add_argument("--family", choices=["random", "halfband"], default="random")
    p.add_argument("--n", type=_positive_int, default=12, help="largest vertex count")
    p.add_argument("--trials", type=_non_negative_int, default=20)
    p.add_argument("--seed", type=_non_negative_int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except BudgetExceededError as e:
        sys.stderr.write(f"maglap: budget exceeded: {e}\n")
        return EXIT_BUDGET
    except (TheoremViolationError, ConsistencyError, EighConvergenceError, WitnessExtractionError) as e:
        sys.stderr.write(f"maglap: {e}\n")
        return EXIT_VIOLATION
    except (MaglapError, ValueError, TypeError, KeyError, OSError) as e:
        sys.stderr.write(f"maglap: error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
