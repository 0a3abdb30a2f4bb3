"""Tests of the eigenvalue-mean bounds, the pair space behind them and the angle scan."""
import numpy as np
import pytest
from sklearn.utils import check_random_state

from maglap.bounds import (
    BoundContext,
    HalfBandBound,
    ZagrebBound,
    flux_phase_scan,
    half_band_check,
    opposing_alpha,
    resolve_host,
    zagreb_bound_check,
    zagreb_bound_via_avp,
)
from maglap.bounds.half_band import align_host
from maglap.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    GraphConstructionError,
)
from maglap.flux import basis_fluxes
from maglap.generators import (
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_graph,
    random_regular,
    random_subgraph,
)
from maglap.graph import DirectedGraph, min_regular_degree
from maglap.linalg import eigh
from maglap.operator import (
    ThetaAssignment,
    circle_distance,
    constant_theta,
    laplacian,
    random_theta,
    zero_theta,
)


@pytest.fixture
def c4() -> DirectedGraph:
    return cycle_graph(4)


def host_instances(count: int, seed: int = 0):
    """Random subgraphs of random regular graphs, with the host aligned to them."""
    rs = check_random_state(seed)
    for _ in range(count):
        n = int(rs.randint(4, 9))
        d = int(rs.choice([d for d in range(2, n) if n * d % 2 == 0]))
        host = random_regular(n, d, seed=rs)
        g = random_subgraph(host, float(rs.uniform(0.0, 1.0)), seed=rs)
        yield g, align_host(host, g), random_theta(g, seed=rs), rs


# -----------------------------------------------------------------------------
# -------------------------------- Pair space ---------------------------------
# -----------------------------------------------------------------------------


def test_opposing_alpha(c4):
    theta = ThetaAssignment(c4, [0.5, -1.0, np.pi, 0.0])
    alpha = opposing_alpha(theta)
    np.testing.assert_allclose(np.cos(alpha + theta.values), -1.0, atol=1e-12)


def test_test_vectors(c4):
    ctx = BoundContext(c4, zero_theta(c4))
    np.testing.assert_allclose(ctx.test_vector(0, 1), [1, 1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(ctx.test_vector(2, 2), [0, 0, 1, 0])
    # (0, 2) is not an edge of C4 and gets phase 0 in the oriented K4
    np.testing.assert_allclose(np.abs(ctx.test_vector(0, 2)), [1, 0, 1, 0])
    with pytest.raises(ValueError, match=r"pair \(0, 4\) names a vertex outside 0..3"):
        ctx.test_vector(0, 4)


def test_pair_weights(c4):
    ctx = BoundContext(c4, zero_theta(c4), a=0.25, b=3.0)
    assert ctx.pair_weight(0, 1) == 1.0
    assert ctx.pair_weight(1, 0) == 1.0
    assert ctx.pair_weight(0, 2) == 0.25
    assert ctx.pair_weight(3, 3) == 3.0
    assert ctx.d == 2
    assert ctx.normalization_constant() == pytest.approx(2 + 0.25 + 1.5)


def test_normalization_identity():
    for g, h, theta, rs in host_instances(100):
        a, b = rs.uniform(0, 2, size=2)
        ctx = BoundContext(g, theta, h=h, a=a, b=b)
        f = rs.normal(size=g.n_vertices) + 1j * rs.normal(size=g.n_vertices)
        expected = 2 * ctx.normalization_constant() * float(np.sum(np.abs(f) ** 2))
        assert ctx.weighted_overlap(f) == pytest.approx(expected, rel=1e-9)


def test_energy_and_mass_closed_forms():
    for g, h, theta, rs in host_instances(40, seed=1):
        alpha = rs.uniform(-np.pi, np.pi, size=g.n_edges)
        ctx = BoundContext(g, theta, h=h, a=0.5, b=1.5, alpha=alpha)
        pairs = ctx.pairs()
        assert ctx.energy_sum(pairs) == pytest.approx(ctx.energy_sum_direct(pairs), abs=1e-9)
        assert ctx.mass_sum(pairs) == pytest.approx(ctx.mass_sum_direct(pairs), abs=1e-9)
        edges = ctx.edge_pairs()
        assert ctx.energy_sum(edges) == pytest.approx(ctx.energy_sum_direct(edges), abs=1e-9)


def test_certify():
    for g, h, theta, _ in host_instances(20, seed=2):
        ctx = BoundContext(g, theta, h=h)
        k = max(1, g.n_edges // ctx.d)
        if k >= g.n_vertices:
            continue
        certificate = ctx.certify(k)
        assert certificate["holds"]
        if certificate["admissible"]:
            assert certificate["eigenvalue_sum"] <= certificate["bound"] + 1e-9


def test_context_validation(c4):
    with pytest.raises(ValueError, match="weights a and b should be non-negative"):
        BoundContext(c4, zero_theta(c4), a=-1.0)
    with pytest.raises(ValueError, match="alpha should have one angle per edge of g \\(4\\), got 2"):
        BoundContext(c4, zero_theta(c4), alpha=[0.0, 0.0])
    with pytest.raises(GraphConstructionError, match="same direction"):
        BoundContext(c4, zero_theta(c4), h=DirectedGraph(4, [(1, 0), (1, 2), (2, 3), (3, 0)]))
    with pytest.raises(GraphConstructionError, match="h should be regular"):
        BoundContext(
            path_graph(4), zero_theta(path_graph(4)), h=DirectedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
        )


def test_resolve_host(c4):
    assert resolve_host(c4) == (2, c4)
    d0, h = resolve_host(c4, d0=3)
    assert d0 == 3
    assert h.n_edges == 6
    with pytest.raises(ValueError, match="d0=3 disagrees with the degree 2 of h"):
        resolve_host(c4, d0=3, h=c4)
    with pytest.raises(GraphConstructionError, match="regular supergraph"):
        resolve_host(c4, h=path_graph(4))


# -----------------------------------------------------------------------------
# ------------------------------- Zagreb bound --------------------------------
# -----------------------------------------------------------------------------


def test_zagreb_on_c4(c4):
    report = zagreb_bound_check(c4, zero_theta(c4), 2)
    assert report["admissible"]
    assert report["d0"] == 2
    assert report["mean"] == pytest.approx(1.0)
    assert report["bound"] == pytest.approx(1.0)
    assert report["trace_form"] == pytest.approx(1.0)
    assert report["sharp"]
    assert report["holds"]

    flux_pi = zagreb_bound_check(c4, ThetaAssignment(c4, [np.pi, 0, 0, 0]), 2)
    assert flux_pi["mean"] == pytest.approx(2 - np.sqrt(2))
    assert not flux_pi["sharp"]

    inadmissible = zagreb_bound_check(c4, zero_theta(c4), 3)
    assert not inadmissible["admissible"]
    assert inadmissible["holds"]
    assert not inadmissible["sharp"]


def test_zagreb_on_triangle():
    k3 = complete_graph(3)
    rs = check_random_state(0)
    for _ in range(50):
        report = zagreb_bound_check(k3, random_theta(k3, seed=rs), 1)
        assert report["bound"] == pytest.approx(1.0)
        assert report["holds"]
    at_pi = zagreb_bound_check(k3, constant_theta(k3, np.pi), 1)
    assert at_pi["mean"] == pytest.approx(1.0)
    assert at_pi["sharp"]


def test_zagreb_on_random_graphs():
    rs = check_random_state(5)
    for _ in range(40):
        g = random_graph(int(rs.randint(3, 9)), float(rs.uniform(0.3, 0.9)), seed=rs)
        theta = random_theta(g, seed=rs)
        d0, h = min_regular_degree(g)
        for k in range(1, g.n_edges // d0 + 1):
            report = ZagrebBound().run_check(g, theta, k, h=h, raise_on_violation=True)
            assert report["admissible"]
            assert report["holds"]


def test_zagreb_errors(c4):
    with pytest.raises(ValueError, match="at least one edge"):
        zagreb_bound_check(DirectedGraph(1), None, 1)
    with pytest.raises(GraphConstructionError, match="zagreb requires a simple orientation"):
        zagreb_bound_check(DirectedGraph(2, [(0, 1), (1, 0)]), [0.5, -0.5], 1)


def test_zagreb_via_avp_on_c4(c4):
    report = zagreb_bound_via_avp(c4, zero_theta(c4), 2)
    assert report["admissible"]
    assert report["a"] == 0.0
    assert report["b"] == pytest.approx(0.0)
    assert report["C"] == pytest.approx(2.0)
    assert report["mean"] == pytest.approx(1.0)
    assert report["bound"] == pytest.approx(1.0)
    assert report["holds"]

    assert zagreb_bound_via_avp(c4, zero_theta(c4), 3)["admissible"] is False


def test_zagreb_via_avp_agrees_with_direct_check():
    rs = check_random_state(7)
    for _ in range(25):
        g = random_graph(int(rs.randint(3, 8)), float(rs.uniform(0.4, 0.9)), seed=rs)
        theta = random_theta(g, seed=rs)
        d0, h = min_regular_degree(g)
        for k in range(1, g.n_edges // d0 + 1):
            direct = zagreb_bound_check(g, theta, k, h=h)
            via = zagreb_bound_via_avp(g, theta, k, h=h)
            if not via["admissible"]:
                # the averaged route also needs k < n
                assert k >= g.n_vertices
                continue
            assert via["holds"]
            assert via["bound"] == pytest.approx(direct["bound"], abs=1e-9)
            assert via["mean"] == pytest.approx(direct["mean"], abs=1e-9)


# -----------------------------------------------------------------------------
# ------------------------------ Half-band bound ------------------------------
# -----------------------------------------------------------------------------


def test_half_band_on_c4(c4):
    report = half_band_check(c4, None, d=2, k=2)
    assert report["admissible"]
    assert report["mean"] == pytest.approx(1.0)
    assert report["bound"] == 1.0
    assert report["sharp"]

    in_k4 = half_band_check(c4, None, d=3, k=2)
    assert in_k4["mean"] == pytest.approx(1.0)
    assert in_k4["host_mean"] == pytest.approx(2.0)
    assert in_k4["bound"] == 2.0
    assert in_k4["holds"]

    inadmissible = half_band_check(c4, None, d=2, k=3)
    assert not inadmissible["admissible"]
    assert inadmissible["mean"] == pytest.approx(4 / 3)
    assert inadmissible["holds"]


def test_half_band_on_petersen():
    report = HalfBandBound().run_check(petersen_graph(), None, 5, 3)
    assert report["mean"] == pytest.approx(1.6)
    assert report["host_mean"] == pytest.approx(1.6)
    assert report["slack"] == pytest.approx(0.4)


def test_half_band_on_random_subgraphs():
    for g, h, theta, _ in host_instances(60, seed=3):
        d = h.max_degree
        for k in range(1, g.n_vertices // 2 + 1):
            report = half_band_check(g, theta, d=d, k=k, host=h, raise_on_violation=True)
            assert report["holds"]
            assert report["mean"] <= report["host_mean"] + 1e-9


def test_half_band_host_errors(c4):
    with pytest.raises(GraphConstructionError, match="host should be a loopless 3-regular graph"):
        half_band_check(c4, None, d=3, k=1, host=c4)
    with pytest.raises(GraphConstructionError, match="host should contain every edge of g"):
        half_band_check(
            path_graph(4), None, d=2, k=1, host=DirectedGraph(4, [(0, 1), (1, 3), (3, 2), (2, 0)])
        )
    with pytest.raises(GraphConstructionError, match="host has 5 vertices, g has 4"):
        half_band_check(c4, None, d=2, k=1, host=cycle_graph(5))


def test_align_host(c4):
    host = complete_graph(4)
    reversed_c4 = DirectedGraph(4, [(1, 0), (2, 1), (3, 2), (0, 3)])
    aligned = align_host(host, reversed_c4)
    assert aligned.edges[:4] == reversed_c4.edges
    assert aligned.n_edges == 6
    assert aligned.undirected_view() == host.undirected_view()


# -----------------------------------------------------------------------------
# -------------------------------- Angle scan ---------------------------------
# -----------------------------------------------------------------------------


def test_flux_phase_scan_on_c4(c4):
    scan = flux_phase_scan(c4, 2)
    assert scan.best_sum == pytest.approx(2.0)
    assert scan.cap == 2.0
    assert scan.exhaustive
    assert scan.evaluations == 8 ** 4

    reduced = flux_phase_scan(c4, 2, reduce_gauge=True)
    assert reduced.best_sum == pytest.approx(2.0)
    assert reduced.evaluations == 8


def test_flux_phase_scan_on_triangle_prefers_flux_pi():
    k3 = complete_graph(3)
    scan = flux_phase_scan(k3, 1, reduce_gauge=True)
    assert scan.best_sum == pytest.approx(1.0)
    (flux,) = basis_fluxes(k3, scan.theta)
    assert circle_distance(flux, np.pi) < 1e-9


def test_flux_phase_scan_small_grids():
    k3 = complete_graph(3)
    scan = flux_phase_scan(k3, 1, grid_steps=4)
    assert scan.exhaustive
    assert scan.evaluations == 4 ** 3
    assert scan.best_sum == pytest.approx(1.0)
    (flux,) = basis_fluxes(k3, scan.theta)
    assert circle_distance(flux, np.pi) < 1e-9
    np.testing.assert_allclose(eigh(laplacian(k3, scan.theta)).eigenvalues, [1, 1, 4], atol=1e-9)

    single_edge = DirectedGraph(2, [(0, 1)])
    assert flux_phase_scan(single_edge, 1, grid_steps=4).best_sum == pytest.approx(0.0, abs=1e-12)


def test_flux_phase_scan_fallback():
    g = petersen_graph()
    scan = flux_phase_scan(g, 5, reduce_gauge=True, budget=1000)
    assert not scan.exhaustive
    assert scan.best_sum <= scan.cap + 1e-9
    assert scan.cap == 10.0
    with pytest.raises(BudgetExceededError, match="exceeds the budget of 1000"):
        flux_phase_scan(g, 5, reduce_gauge=True, budget=1000, allow_fallback=False)


def test_flux_phase_scan_errors(c4):
    with pytest.raises(ValueError, match="k should be an int with 1 <= k <= n/2"):
        flux_phase_scan(c4, 3)
    with pytest.raises(ValueError, match="grid_steps should be positive"):
        flux_phase_scan(c4, 1, grid_steps=0)


def test_consistency_error_is_an_assertion():
    assert issubclass(ConsistencyError, AssertionError)
