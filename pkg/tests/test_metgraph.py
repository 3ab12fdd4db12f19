from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import snf_invariants_sympy, spanning_trees_brute
from tropigusa.errors import DisconnectedGraph, NonCommensurableLengths, NonZeroDegree, UnknownVertex
from tropigusa.metgraph import (
    AbelianGroup,
    GraphDivisor,
    MetricGraph,
    default_unit,
    graph_jacobian,
    is_principal,
    laplacian_apply,
    laplacian_matrix,
    reduced_laplacian,
    spanning_tree_count,
    specialize,
    subdivide,
)


def theta(a, b, c):
    return MetricGraph.build(["x", "y"], [("x", "y", a), ("x", "y", b), ("x", "y", c)])


def cycle(n):
    return MetricGraph.build([f"C{k}" for k in range(n)], [(k, (k + 1) % n, 1) for k in range(n)])


# -- construction ----------------------------------------------------------------


def test_build_and_queries():
    G = MetricGraph.build([("E", 1), "L"], [("E", "L", 2), ("L", "L", "1/2")])
    assert G.n_vertices == 2
    assert G.betti_number == 1
    assert G.genus == 2
    assert G.total_length == Fraction(5, 2)
    assert G.index("L") == 1
    assert G.edges[1].is_loop


def test_unknown_vertex_and_disconnected():
    with pytest.raises(UnknownVertex):
        MetricGraph.build(["a"], [("a", "b", 1)])
    with pytest.raises(UnknownVertex):
        MetricGraph.build(["a"], [(0, 3, 1)])
    with pytest.raises(DisconnectedGraph):
        MetricGraph.build(["a", "b"], [])
    with pytest.raises(ValueError):
        MetricGraph.build(["a", "b"], [("a", "b", 0)])


def test_dot_and_json():
    G = theta(1, 2, "1/3")
    dot = G.to_dot()
    assert dot.startswith("graph G {") and dot.count("--") == 3
    assert G.to_json()["edges"][2] == ["x", "y", "1/3"]


# -- subdivision -------------------------------------------------------------------


def test_default_unit():
    assert default_unit(theta(1, 2, 3)) == 1
    assert default_unit(theta(Fraction(1, 2), Fraction(2, 3), 1)) == Fraction(1, 6)


def test_subdivide_counts():
    H = subdivide(theta(1, 2, 3))
    assert H.n_vertices == 2 + 0 + 1 + 2
    assert len(H.edges) == 6
    assert H.is_unit(Fraction(1))
    assert H.origin == (0, 1, 1, 2, 2, 2)
    assert H.names[:2] == ("x", "y")


def test_subdivide_loop():
    G = MetricGraph.build(["C"], [("C", "C", 3)])
    H = subdivide(G)
    assert H.n_vertices == 3 and len(H.edges) == 3
    assert not any(e.is_loop for e in H.edges)


def test_subdivide_incommensurable():
    with pytest.raises(NonCommensurableLengths):
        subdivide(theta(1, Fraction(1, 2), 1), 1)


# -- Laplacian -----------------------------------------------------------------------


def test_laplacian_of_cycle():
    L = laplacian_matrix(cycle(4))
    assert L[0] == [2, -1, 0, -1]
    assert all(sum(row) == 0 for row in L)


def test_laplacian_ignores_loops_and_counts_multi_edges():
    G = MetricGraph.build(["a", "b"], [("a", "b", 1), ("a", "b", 1), ("a", "a", 1)])
    assert laplacian_matrix(G) == [[2, -2], [-2, 2]]
    assert reduced_laplacian(G) == [[2]]


def test_laplacian_apply_sign():
    # on a cycle the coefficient at C_i is 2h_i - h_{i-1} - h_{i+1}
    D = laplacian_apply(cycle(5), [0, 3, 1, 0, 0])
    assert D.coeffs == (-3, 5, -1, -1, 0)
    assert D.degree == 0


# -- spanning trees and Jacobians -------------------------------------------------------


@pytest.mark.parametrize(
    "lengths, trees, factors",
    [((1, 1, 1), 3, (3,)), ((1, 2, 3), 11, (11,)), ((2, 2, 2), 12, (2, 6)), ((1, 1, 2), 5, (5,))],
)
def test_theta_graphs(lengths, trees, factors):
    G = theta(*lengths)
    assert spanning_tree_count(G) == trees
    assert graph_jacobian(G).invariant_factors == factors


def test_cycle_jacobian():
    for n in range(1, 9):
        G = MetricGraph.build(["C"], [("C", "C", n)])
        assert graph_jacobian(G).invariant_factors == ((n,) if n > 1 else ())


def test_single_vertex_graphs():
    G = MetricGraph.build([("C", 2)], [])
    assert graph_jacobian(G).order == 1
    assert spanning_tree_count(G) == 1
    assert is_principal(G, GraphDivisor((0,))) == (True, (0,))


edge_lists = st.lists(
    st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, 3)), min_size=1, max_size=8
)


def _connected_graph(n, edges):
    edges = [(u % n, v % n, w) for u, v, w in edges]
    edges += [(k, k + 1, 1) for k in range(n - 1)]  # a path keeps it connected
    return MetricGraph.build([f"v{k}" for k in range(n)], edges)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), edge_lists)
def test_kirchhoff_against_brute_force(n, edges):
    G = _connected_graph(n, edges)
    H = subdivide(G)
    if H.n_vertices > 6 or len(H.edges) > 9:
        return
    brute = spanning_trees_brute(H.n_vertices, [(e.u, e.v) for e in H.edges])
    assert spanning_tree_count(G) == brute == graph_jacobian(G).order


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), edge_lists)
def test_jacobian_against_sympy_snf(n, edges):
    G = _connected_graph(n, edges)
    H = subdivide(G)
    assert list(graph_jacobian(G).invariant_factors) == snf_invariants_sympy(reduced_laplacian(H))


def test_refining_the_unit_keeps_the_group_up_to_scaling():
    # halving the unit doubles every length: the cycle group Z/n becomes Z/2n
    G = theta(1, 2, 3)
    assert graph_jacobian(G, Fraction(1, 2)).invariant_factors == graph_jacobian(theta(2, 4, 6)).invariant_factors


def test_bridges_do_not_change_the_jacobian():
    G = MetricGraph.build(["a", "b", "c"], [("a", "a", 3), ("a", "b", 5), ("b", "c", 2), ("c", "c", 4)])
    assert graph_jacobian(G).invariant_factors == AbelianGroup.from_cyclic_orders([3, 4]).invariant_factors


def test_abelian_group():
    assert AbelianGroup.from_cyclic_orders([4, 6]).invariant_factors == (2, 12)
    assert AbelianGroup.from_cyclic_orders([1, 1]).invariant_factors == ()
    assert str(AbelianGroup((2, 6))) == "Z/2 x Z/6"
    assert str(AbelianGroup()) == "0"
    with pytest.raises(ValueError):
        AbelianGroup((4, 6))


# -- divisors and principality -----------------------------------------------------------


def test_specialize():
    G = cycle(4)
    D = specialize(G, [(2, "C1"), (1, "C2"), (-1, "C3"), (-2, 0)])
    assert D.coeffs == (-2, 2, 1, -1)
    assert D.degree == 0


def test_divisor_arithmetic():
    G = cycle(3)
    D = GraphDivisor.on(G, {"C0": 1, "C2": -1})
    assert (D - D).is_zero()
    assert (D + D).coeffs == (2, 0, -2)
    assert D.extend(5).coeffs == (1, 0, -1, 0, 0)


def test_is_principal_on_cycle():
    G = cycle(5)
    ok, phi = is_principal(G, GraphDivisor((-2, 2, 1, 0, -1)))
    assert ok and phi[0] == 0
    assert laplacian_apply(G, phi).coeffs == (-2, 2, 1, 0, -1)
    assert is_principal(G, GraphDivisor((-1, 1, 0, 0, 0))) == (False, None)


def test_is_principal_needs_degree_zero():
    with pytest.raises(NonZeroDegree):
        is_principal(cycle(3), GraphDivisor((1, 0, 0)))


def test_is_principal_on_subdivision():
    # a 4-cycle with a and b opposite: a - b has order 2 in Z/4
    G = MetricGraph.build(["a", "b"], [("a", "b", 2), ("a", "b", 2)])
    ok, phi = is_principal(G, GraphDivisor((2, -2)))
    H = subdivide(G)
    assert ok and laplacian_apply(H, phi).coeffs == (2, -2, 0, 0)
    assert not is_principal(G, GraphDivisor((1, -1)))[0]


def test_subdividing_first_changes_nothing():
    G = theta(Fraction(1, 2), 1, Fraction(3, 2))
    unit = Fraction(1, 2)
    H = subdivide(G, unit)
    assert graph_jacobian(H, unit) == graph_jacobian(G, unit)
    assert spanning_tree_count(H, unit) == spanning_tree_count(G, unit) == 11
