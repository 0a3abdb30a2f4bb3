"""Tests of theta assignments and of the magnetic Laplacian constructions."""
import numpy as np
import pytest
from sklearn.utils import check_random_state

from maglap.exceptions import (
    AntisymmetryError,
    GraphConstructionError,
    NotUnimodularError,
    ThetaMismatchError,
)
from maglap.generators import complete_graph, cycle_graph, random_graph
from maglap.graph import DirectedGraph
from maglap.linalg import determinant, eigh, inner
from maglap.operator import (
    ThetaAssignment,
    adjacency_matrix,
    apply_pointwise,
    as_theta,
    circle_distance,
    constant_theta,
    extend_theta,
    gauge_conjugate,
    incidence,
    laplacian,
    laplacian_stack,
    quadratic_form,
    random_theta,
    reverse_edge,
    unit_phase,
    wrap_angle,
    zero_theta,
)


@pytest.fixture
def c4() -> DirectedGraph:
    return cycle_graph(4)


@pytest.fixture
def cyclic_triangle() -> DirectedGraph:
    return DirectedGraph(3, [(0, 1), (1, 2), (2, 0)])


def random_instances(count: int, seed: int = 0):
    rs = check_random_state(seed)
    for _ in range(count):
        g = random_graph(int(rs.randint(2, 9)), float(rs.uniform(0.3, 1.0)), seed=rs)
        yield g, random_theta(g, seed=rs), rs


def test_wrap_angle():
    assert wrap_angle(np.pi) == np.pi
    assert wrap_angle(-np.pi) == np.pi
    assert wrap_angle(0.0) == 0.0
    assert wrap_angle(2 * np.pi + 0.5) == pytest.approx(0.5)
    np.testing.assert_allclose(
        wrap_angle(np.array([-3 * np.pi / 2, 3 * np.pi / 2])), [np.pi / 2, -np.pi / 2]
    )
    assert circle_distance(np.pi - 1e-3, -np.pi + 1e-3) == pytest.approx(2e-3)


def test_theta_assignment_validation(c4):
    with pytest.raises(ThetaMismatchError, match="theta has 3 values but the graph has 4 edges"):
        ThetaAssignment(c4, [0.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="should be finite"):
        ThetaAssignment(c4, [0.0, np.nan, 0.0, 0.0])
    with pytest.raises(TypeError, match="graph should be a DirectedGraph"):
        ThetaAssignment("c4", [])

    theta = ThetaAssignment(c4, [-np.pi, 3 * np.pi, 0.25, 7.0])
    np.testing.assert_allclose(theta.values, [np.pi, np.pi, 0.25, 7.0 - 2 * np.pi])
    assert len(theta) == 4
    assert theta[2] == 0.25
    with pytest.raises(ValueError):
        theta.values[0] = 1.0


def test_antisymmetry_on_anti_parallel_pairs():
    g = DirectedGraph(2, [(0, 1), (1, 0)])
    ThetaAssignment(g, [0.3, -0.3])
    ThetaAssignment(g, [np.pi, np.pi])
    with pytest.raises(AntisymmetryError, match="should be opposite"):
        ThetaAssignment(g, [0.3, 0.3])
    with pytest.raises(AntisymmetryError):
        constant_theta(g, 1.0)
    theta = random_theta(g, seed=0)
    assert theta[0] == pytest.approx(-theta[1])


def test_along_and_keying(c4):
    theta = ThetaAssignment(c4, [0.1, 0.2, 0.3, 0.4])
    assert theta.along(1, 2) == pytest.approx(0.2)
    assert theta.along(2, 1) == pytest.approx(-0.2)
    with pytest.raises(KeyError):
        theta.along(0, 2)
    with pytest.raises(ThetaMismatchError, match="keyed to a different graph"):
        laplacian(cycle_graph(5), theta)
    with pytest.raises(TypeError, match="theta should be a ThetaAssignment"):
        laplacian(c4, [0.0] * 4)


def test_as_theta(c4):
    assert as_theta(c4, None) == zero_theta(c4)
    assert as_theta(c4, np.pi) == constant_theta(c4, np.pi)
    assert as_theta(c4, [0.1, 0.2, 0.3, 0.4])[3] == pytest.approx(0.4)


def test_incidence_and_pointwise_single_edge():
    g = DirectedGraph(2, [(0, 1)])
    theta = ThetaAssignment(g, [0.7])
    d = incidence(g, theta)
    np.testing.assert_allclose(d[:, 0], [-np.exp(-0.7j), 1.0])
    out = apply_pointwise(g, theta, [1.0, 0.0])
    np.testing.assert_allclose(out, [1.0, -np.exp(0.7j)])


def test_known_spectra(c4):
    k3 = complete_graph(3)
    np.testing.assert_allclose(
        eigh(laplacian(k3, constant_theta(k3, np.pi))).eigenvalues, [1, 1, 4], atol=1e-9
    )
    np.testing.assert_allclose(
        eigh(laplacian(c4, zero_theta(c4))).eigenvalues, [0, 2, 2, 4], atol=1e-9
    )
    flux_pi = ThetaAssignment(c4, [np.pi, 0.0, 0.0, 0.0])
    lap = laplacian(c4, flux_pi)
    s = np.sqrt(2)
    np.testing.assert_allclose(eigh(lap).eigenvalues, [2 - s, 2 - s, 2 + s, 2 + s], atol=1e-9)
    assert determinant(lap) == pytest.approx(4.0, abs=1e-9)


def test_cyclic_triangle_kernel(cyclic_triangle):
    theta = constant_theta(cyclic_triangle, 2 * np.pi / 3)
    omega = np.exp(2j * np.pi / 3)
    f = np.array([1, omega, omega ** 2])
    assert quadratic_form(cyclic_triangle, theta, f) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(laplacian(cyclic_triangle, theta) @ f, 0, atol=1e-12)


def test_quadratic_form_examples(c4):
    assert quadratic_form(c4, zero_theta(c4), np.ones(4)) == pytest.approx(0.0)
    assert quadratic_form(c4, constant_theta(c4, np.pi), np.ones(4)) == pytest.approx(16.0)
    assert quadratic_form(DirectedGraph(3), ThetaAssignment(DirectedGraph(3), []), [1, 2, 3]) == 0.0
    with pytest.raises(ValueError, match="vertex function has length 3"):
        quadratic_form(c4, zero_theta(c4), [1, 2, 3])


def test_constructions_agree():
    for g, theta, rs in random_instances(200):
        lap = laplacian(g, theta)
        d = incidence(g, theta)
        np.testing.assert_allclose(lap, d @ d.conj().T, atol=1e-12)
        np.testing.assert_allclose(lap, np.diag(g.degrees) - adjacency_matrix(g, theta), atol=1e-12)
        f = rs.normal(size=g.n_vertices) + 1j * rs.normal(size=g.n_vertices)
        np.testing.assert_allclose(apply_pointwise(g, theta, f), lap @ f, atol=1e-12)
        assert quadratic_form(g, theta, f) == pytest.approx(inner(f, lap @ f).real, abs=1e-10)
        np.testing.assert_allclose(lap, lap.conj().T)


def test_positivity():
    for g, theta, _ in random_instances(100, seed=1):
        assert eigh(laplacian(g, theta)).eigenvalues[0] >= -1e-9


def test_laplacian_stack_matches_laplacian():
    g = random_graph(6, 0.6, seed=5)
    rows = np.array([random_theta(g, seed=s).values for s in range(3)])
    stack = laplacian_stack(g, rows)
    for i in range(3):
        np.testing.assert_allclose(stack[i], laplacian(g, ThetaAssignment(g, rows[i])), atol=1e-12)
    with pytest.raises(ThetaMismatchError, match="theta rows have 2 columns"):
        laplacian_stack(g, np.zeros((1, 2)))


@pytest.mark.parametrize("angle", [0.0, np.pi])
def test_orientation_independence_at_zero_and_pi(angle):
    g = random_graph(7, 0.5, seed=11)
    base = laplacian(g, constant_theta(g, angle))
    flipped = g.reverse_edges(range(0, g.n_edges, 2))
    np.testing.assert_allclose(laplacian(flipped, constant_theta(flipped, angle)), base, atol=1e-12)


def test_reverse_edge_preserves_laplacian():
    g = random_graph(6, 0.5, seed=2)
    theta = random_theta(g, seed=3)
    flipped, flipped_theta = reverse_edge(g, theta, 0)
    assert flipped.edges[0] == g.edges[0][::-1]
    np.testing.assert_allclose(laplacian(flipped, flipped_theta), laplacian(g, theta), atol=1e-12)


def test_gauge_conjugate(c4):
    theta = ThetaAssignment(c4, [0.1, -0.4, 2.0, 3.0])
    assert gauge_conjugate(c4, theta, np.ones(4)) == theta
    assert gauge_conjugate(c4, theta, np.full(4, np.exp(0.9j))) == theta

    phase = unit_phase(check_random_state(0).uniform(-np.pi, np.pi, 4))
    conjugated = gauge_conjugate(c4, theta, phase)
    u = np.diag(phase)
    np.testing.assert_allclose(
        laplacian(c4, conjugated), u @ laplacian(c4, theta) @ u.conj().T, atol=1e-12
    )
    np.testing.assert_allclose(
        eigh(laplacian(c4, gauge_conjugate(c4, zero_theta(c4), phase))).eigenvalues,
        [0, 2, 2, 4],
        atol=1e-9,
    )
    with pytest.raises(NotUnimodularError, match="should have modulus 1"):
        gauge_conjugate(c4, theta, [1, 1, 2, 1])


def test_gauge_conjugation_preserves_spectrum():
    for g, theta, rs in random_instances(50, seed=7):
        phase = unit_phase(rs.uniform(-np.pi, np.pi, g.n_vertices))
        conjugated = gauge_conjugate(g, theta, phase)
        np.testing.assert_allclose(
            eigh(laplacian(g, conjugated)).eigenvalues,
            eigh(laplacian(g, theta)).eigenvalues,
            atol=1e-9,
        )


def test_extend_theta(c4):
    host = DirectedGraph(4, list(c4.edges) + [(0, 2)])
    theta = ThetaAssignment(c4, [0.1, 0.2, 0.3, 0.4])
    extended = extend_theta(theta, host)
    np.testing.assert_allclose(extended.values, [0.1, 0.2, 0.3, 0.4, 0.0])
    with pytest.raises(GraphConstructionError, match=r"edge \(3, 0\) is missing"):
        extend_theta(theta, DirectedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    with pytest.raises(GraphConstructionError, match="same vertices"):
        extend_theta(theta, complete_graph(5))
