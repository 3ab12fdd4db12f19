from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cycle_heights, cycle_principal_mod
from tropigusa.errors import NotPrincipal
from tropigusa.metgraph import GraphDivisor, MetricGraph, subdivide
from tropigusa.tropfun import (
    PiecewiseAffineFunction,
    TropVerdict,
    breakpoints_csv,
    classify_trop,
    divisor_of,
    expansion_factor,
    separates_points,
    solve_function,
    trop_length,
)


def cycle(n, length=1):
    return MetricGraph.build([f"C{k}" for k in range(n)], [(k, (k + 1) % n, length) for k in range(n)])


def test_solve_round_trip_on_cycle():
    G = cycle(5)
    D = GraphDivisor((-2, 2, 1, 0, -1))
    F = solve_function(G, D)
    assert divisor_of(F) == D
    assert F.heights[0] == 0
    assert F.heights == tuple(Fraction(h) for h in cycle_heights(list(D.coeffs)))


def test_not_principal_raises():
    with pytest.raises(NotPrincipal):
        solve_function(cycle(5), GraphDivisor((-1, 1, 0, 0, 0)))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.lists(st.integers(-3, 3), min_size=n, max_size=n)))
def test_cycle_solver_matches_recursion(a):
    a[0] -= sum(a)  # force degree 0
    G = cycle(len(a))
    ref = cycle_heights(a)
    assert (ref is not None) == cycle_principal_mod(a)
    if ref is None:
        with pytest.raises(NotPrincipal):
            solve_function(G, GraphDivisor(tuple(a)))
        return
    F = solve_function(G, GraphDivisor(tuple(a)))
    assert list(F.heights) == ref
    assert divisor_of(F).coeffs == tuple(a)


def test_solution_on_subdivided_edges():
    # edges of length 2: heights scale with the edge length, slopes stay integral
    G = cycle(3, 2)
    F = solve_function(G, GraphDivisor((2, -1, -1)))
    assert F.graph.n_vertices == 6
    assert divisor_of(F).coeffs == (2, -1, -1, 0, 0, 0)
    assert all(isinstance(s, int) for s in F.slopes)


def test_fractional_unit_heights():
    G = cycle(4, Fraction(1, 2))
    F = solve_function(G, GraphDivisor((-1, 1, 1, -1)))
    assert divisor_of(F).coeffs == (-1, 1, 1, -1)
    assert F.heights == (0, Fraction(1, 2), Fraction(1, 2), 0)


def test_non_integral_slope_rejected():
    G = cycle(3)
    with pytest.raises(ValueError):
        PiecewiseAffineFunction(G, (0, Fraction(1, 2), 0))


def test_normalized():
    G = cycle(3)
    F = PiecewiseAffineFunction(G, (5, 6, 4))
    assert F.normalized().heights == (0, 1, -1)
    assert F.value("C2") == 4


# -- expansion, length, separation ------------------------------------------------


def _n5():
    G = cycle(5)
    f = solve_function(G, GraphDivisor((-2, 2, 1, 0, -1)))
    g = solve_function(G, GraphDivisor((-1, -1, 0, 2, 0)))
    return f, g


def test_expansion_factors_and_length_n5():
    f, g = _n5()
    assert tuple(expansion_factor(k, [f, g]) for k in range(5)) == (2, 1, 1, 1, 1)
    assert trop_length([f, g]) == 6
    assert trop_length([f, g], [0]) == 2


def test_classify_trop_scaled_n5():
    c = classify_trop(list(_n5()))
    assert c.verdict is TropVerdict.SCALED
    assert c.separated and c.collapsed_edges == ()


def test_classify_trop_faithful_n4():
    G = cycle(4)
    f = solve_function(G, GraphDivisor((-1, 1, 1, -1)))
    g = solve_function(G, GraphDivisor((-1, -1, 1, 1)))
    c = classify_trop([f, g])
    assert c.verdict is TropVerdict.FAITHFUL
    assert c.per_edge_expansion == (1, 1, 1, 1)


def test_single_function_on_cycle_folds():
    # one function on a cycle can never be injective
    G = cycle(4)
    f = solve_function(G, GraphDivisor((-1, 1, 1, -1)))
    sep = separates_points([f])
    assert not sep.separated and len(sep.describe(G)) == 2
    assert classify_trop([f]).verdict is TropVerdict.NOT_SCALED


def test_collapsed_edge_detected():
    G = cycle(3)
    f = PiecewiseAffineFunction(G, (0, 0, 1))
    c = classify_trop([f])
    assert c.collapsed_edges == (0,)
    assert c.verdict is TropVerdict.NOT_SCALED


def test_crossing_segments_witness():
    # images of edges C0-C1 and C2-C3 cross at an interior point of both
    G = cycle(4)
    f = PiecewiseAffineFunction(G, (0, 2, 2, 0))
    g = PiecewiseAffineFunction(G, (0, 2, 0, 2))
    sep = separates_points([f, g])
    assert not sep.separated
    p, q = sep.witness
    assert p.edge is not None and q.edge is not None


def test_functions_must_share_graph():
    with pytest.raises(ValueError):
        expansion_factor(0, [PiecewiseAffineFunction(cycle(3), (0, 0, 0)),
                             PiecewiseAffineFunction(cycle(4), (0, 0, 0, 0))])


def test_breakpoints_csv():
    f, g = _n5()
    text = breakpoints_csv([("F", f), ("G", g)], list(range(5)))
    rows = text.strip().splitlines()
    assert rows[0] == "function,vertex,position,height"
    assert len(rows) == 1 + 2 * 6
    assert rows[1] == "F,C0,0,0" and rows[6] == "F,C0,5,0"
    # deterministic
    assert text == breakpoints_csv([("F", f), ("G", g)], list(range(5)))


def test_subdivided_graph_is_kept():
    G = cycle(2, 3)
    F = solve_function(G, GraphDivisor((2, -2)))
    assert F.graph == subdivide(G)
    assert F.slopes == (-1, -1, -1, 1, 1, 1)


@st.composite
def graph_and_heights(draw):
    n = draw(st.integers(2, 8))
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 3)), max_size=8))
    edges = [(k, k + 1, draw(st.integers(1, 3))) for k in range(n - 1)] + extra
    G = MetricGraph.build([f"v{k}" for k in range(n)], edges)
    H = subdivide(G)
    heights = [0] + draw(st.lists(st.integers(-6, 6), min_size=H.n_vertices - 1, max_size=H.n_vertices - 1))
    return G, H, heights


@settings(max_examples=500, deadline=None)
@given(graph_and_heights())
def test_solve_inverts_divisor_of(data):
    G, H, heights = data
    F = PiecewiseAffineFunction(H, tuple(heights))
    D = divisor_of(F)
    assert D.degree == 0
    # solve on the subdivided graph itself: the unit is already 1
    F2 = solve_function(H, D)
    assert F2.heights == F.heights
    assert divisor_of(F2) == D
