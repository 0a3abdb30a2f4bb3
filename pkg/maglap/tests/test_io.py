import numpy as np
import pytest

from maglap.exceptions import GraphFormatError
from maglap.generators import petersen_graph
from maglap.io import format_graph, parse_graph, read_graph, write_graph
from maglap.operator import circle_distance, random_theta


C4_TEXT = """# the directed 4-cycle
4 4
0 1
1 2 0.5

2 3
3 0 3.14159265358979
"""


def test_parse_graph():
    g, theta = parse_graph(C4_TEXT)
    assert g.n_vertices == 4
    assert g.edges == ((0, 1), (1, 2), (2, 3), (3, 0))
    np.testing.assert_allclose(theta.values, [0.0, 0.5, 0.0, np.pi], atol=1e-12)


def test_parse_graph_accepts_tiny_overshoot():
    _, theta = parse_graph(f"2 1\n0 1 {np.pi + 1e-13!r}\n")
    assert circle_distance(theta[0], np.pi) < 1e-12


@pytest.mark.parametrize(
    "text, message",
    [
        ("3 2\n0 1\n1\n", "line 3: expected 'u v \\[theta\\]'"),
        ("3 2\n0 1\n1 2 x\n", "line 3: expected 'u v \\[theta\\]', got theta 'x'"),
        ("3 2\n0 1\n1 a\n", "line 3: expected 'u v \\[theta\\]'"),
        ("3\n0 1\n", "line 1: expected 'n m'"),
        ("-3 1\n0 1\n", "line 1: expected 'n m'"),
        ("# only a comment\n", "line 2: expected 'n m'"),
        ("3 1\n0 3\n", "line 2: edge \\(0, 3\\) names a vertex outside 0..2"),
        ("3 1\n1 1\n", "line 2: edge \\(1, 1\\) is a loop"),
        ("3 2\n0 1\n0 1\n", "line 3: edge \\(0, 1\\) is repeated"),
        ("3 1\n0 1 4.0\n", "line 2: theta 4.0 is outside \\[-pi, pi\\]"),
        ("3 1\n0 1 nan\n", "line 2: theta should be finite"),
        ("3 1\n0 1\n1 2\n", "line 3: more than the 1 declared edge lines"),
        ("3 2\n0 1\n", "line 3: expected 2 edge lines, found 1"),
    ],
)
def test_parse_graph_errors(text, message):
    with pytest.raises(GraphFormatError, match=message):
        parse_graph(text)


def test_format_error_carries_line():
    with pytest.raises(GraphFormatError) as info:
        parse_graph("2 1\n\n\n0 x\n")
    assert info.value.line == 4


def test_anti_parallel_pairs_must_be_antisymmetric():
    g, theta = parse_graph("2 2\n0 1 0.5\n1 0 -0.5\n")
    assert not g.is_simple_orientation()
    with pytest.raises(ValueError, match="should be opposite"):
        parse_graph("2 2\n0 1 0.5\n1 0 0.5\n")


def test_write_and_read_back(tmp_path):
    g = petersen_graph()
    theta = random_theta(g, seed=4)
    path = tmp_path / "petersen.txt"
    write_graph(path, g, theta)
    g2, theta2 = read_graph(path)
    assert g2 == g
    np.testing.assert_allclose(theta2.values, theta.values, atol=1e-12)
    assert format_graph(g).splitlines()[:2] == ["10 15", "0 1"]
