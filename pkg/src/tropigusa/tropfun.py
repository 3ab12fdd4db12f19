"""Piecewise affine functions with integer slopes on metric graphs.

A function is stored by its values at the vertices of a unit-subdivided
graph; it is affine along each edge.  Its divisor follows the Laplacian sign
of :mod:`tropigusa.metgraph`, i.e. ``D(v) = -(sum of outgoing slopes at v)``.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import NotPrincipal
from .metgraph import GraphDivisor, MetricGraph, default_unit, is_principal, subdivide


@dataclass(frozen=True)
class PiecewiseAffineFunction:
    graph: MetricGraph
    heights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.heights) != self.graph.n_vertices:
            raise ValueError("one height per vertex required")
        object.__setattr__(self, "heights", tuple(Fraction(h) for h in self.heights))
        for k in range(len(self.graph.edges)):
            s = self._raw_slope(k)
            if s.denominator != 1:
                raise ValueError(f"slope {s} on edge {k} is not an integer")

    def _raw_slope(self, k: int) -> Fraction:
        e = self.graph.edges[k]
        return (self.heights[e.v] - self.heights[e.u]) / e.length

    def slope(self, k: int) -> int:
        """Slope along edge ``k`` oriented from ``u`` to ``v``."""
        return int(self._raw_slope(k))

    @property
    def slopes(self) -> tuple[int, ...]:
        return tuple(self.slope(k) for k in range(len(self.graph.edges)))

    def value(self, v) -> Fraction:
        return self.heights[self.graph.index(v)]

    def normalized(self) -> "PiecewiseAffineFunction":
        h0 = self.heights[0]
        return PiecewiseAffineFunction(self.graph, tuple(h - h0 for h in self.heights))


def solve_function(G: MetricGraph, D: GraphDivisor, unit=None) -> PiecewiseAffineFunction:
    """Find ``F`` with ``divisor_of(F) = D``, normalised so the first vertex has height 0.

    ``D`` is given on the vertices of ``G``; the returned function lives on
    the unit subdivision of ``G``.  Raises :class:`NotPrincipal` when no
    integer-slope solution exists.
    """
    unit = default_unit(G) if unit is None else Fraction(unit)
    H = subdivide(G, unit)
    ok, phi = is_principal(G, D, unit)
    if not ok:
        raise NotPrincipal(f"divisor {list(D.coeffs)} is not principal on this graph")
    return PiecewiseAffineFunction(H, tuple(unit * x for x in phi))


def divisor_of(F: PiecewiseAffineFunction) -> GraphDivisor:
    out = [Fraction(0)] * F.graph.n_vertices
    for k, e in enumerate(F.graph.edges):
        if e.is_loop:
            continue
        s = F._raw_slope(k)
        out[e.u] -= s
        out[e.v] += s
    return GraphDivisor(tuple(int(x) for x in out))


def _check_shared(fs: Sequence[PiecewiseAffineFunction]) -> MetricGraph:
    if not fs:
        raise ValueError("need at least one function")
    G = fs[0].graph
    if any(f.graph != G for f in fs[1:]):
        raise ValueError("all functions must share their base graph")
    return G


def expansion_factor(edge: int, fs: Sequence[PiecewiseAffineFunction]) -> int:
    """gcd of the nonzero |slopes| on ``edge``; 0 when every slope vanishes."""
    _check_shared(fs)
    g = 0
    for f in fs:
        g = gcd(g, abs(f.slope(edge)))
    return g


def trop_length(fs: Sequence[PiecewiseAffineFunction], edges: Sequence[int] | None = None) -> Fraction:
    """Length of the image: ``sum expansion_factor(e) * length(e)``."""
    G = _check_shared(fs)
    ks = range(len(G.edges)) if edges is None else edges
    return sum((expansion_factor(k, fs) * G.edges[k].length for k in ks), Fraction(0))


# ---------------------------------------------------------------------------
# Injectivity


@dataclass(frozen=True)
class GraphPoint:
    """A vertex, or the point at parameter ``s`` in (0, 1) of an edge."""

    vertex: int | None = None
    edge: int | None = None
    s: Fraction = Fraction(0)

    def describe(self, G: MetricGraph) -> str:
        if self.vertex is not None:
            return G.names[self.vertex]
        e = G.edges[self.edge]
        return f"{G.names[e.u]}-{G.names[e.v]}@{self.s}"


def _point_on(G: MetricGraph, k: int, s: Fraction) -> GraphPoint:
    e = G.edges[k]
    if s == 0:
        return GraphPoint(vertex=e.u)
    if s == 1:
        return GraphPoint(vertex=e.v)
    return GraphPoint(edge=k, s=s)


def _image(fs, v: int) -> tuple[Fraction, ...]:
    return tuple(f.heights[v] for f in fs)


def _segment_collision(a0, d0, a1, d1):
    """Parameters ``(s, u)`` in [0,1]^2 with ``a0 + s d0 == a1 + u d1``.

    Returns ``None`` when the segments are disjoint, a single pair when they
    meet in one point, or the two pairs bounding an overlap of positive length.
    """
    n = len(a0)
    diff = [a1[i] - a0[i] for i in range(n)]
    # 2x2 minors detect linear independence of d0, d1
    pivot = None
    for i in range(n):
        for j in range(i + 1, n):
            det = d0[i] * (-d1[j]) - (-d1[i]) * d0[j]
            if det != 0:
                pivot = (i, j, det)
                break
        if pivot:
            break
    if pivot:
        i, j, det = pivot
        s = (diff[i] * (-d1[j]) - (-d1[i]) * diff[j]) / det
        u = (d0[i] * diff[j] - diff[i] * d0[j]) / det
        if not (0 <= s <= 1 and 0 <= u <= 1):
            return None
        if any(a0[k] + s * d0[k] != a1[k] + u * d1[k] for k in range(n)):
            return None
        return [(s, u)]
    # parallel (or degenerate) directions
    zero0 = all(x == 0 for x in d0)
    zero1 = all(x == 0 for x in d1)
    if zero0 and zero1:
        return [(Fraction(0), Fraction(0))] if all(x == 0 for x in diff) else None
    if zero0:
        # point a0 against segment 1
        k = next(i for i in range(n) if d1[i] != 0)
        u = -diff[k] / d1[k]
        if 0 <= u <= 1 and all(a0[i] == a1[i] + u * d1[i] for i in range(n)):
            return [(Fraction(0), u)]
        return None
    if zero1:
        k = next(i for i in range(n) if d0[i] != 0)
        s = diff[k] / d0[k]
        if 0 <= s <= 1 and all(a0[i] + s * d0[i] == a1[i] for i in range(n)):
            return [(s, Fraction(0))]
        return None
    # both nonzero and parallel: d1 = lam * d0
    k = next(i for i in range(n) if d0[i] != 0)
    lam = d1[k] / d0[k]
    # collinear iff diff is parallel to d0
    c = diff[k] / d0[k]
    if any(diff[i] != c * d0[i] for i in range(n)):
        return None
    # a1 + u d1 = a0 + (c + u lam) d0 ; s = c + u lam
    lo_u, hi_u = Fraction(0), Fraction(1)
    # constrain s in [0, 1]
    b0, b1 = (-c) / lam, (1 - c) / lam
    lo_u, hi_u = max(lo_u, min(b0, b1)), min(hi_u, max(b0, b1))
    if lo_u > hi_u:
        return None
    pairs = [(c + lo_u * lam, lo_u)]
    if hi_u > lo_u:
        pairs.append((c + hi_u * lam, hi_u))
    return pairs


@dataclass(frozen=True)
class SeparationResult:
    separated: bool
    witness: tuple[GraphPoint, GraphPoint] | None = None

    def describe(self, G: MetricGraph) -> tuple[str, str] | None:
        if self.witness is None:
            return None
        return (self.witness[0].describe(G), self.witness[1].describe(G))


def separates_points(
    fs: Sequence[PiecewiseAffineFunction], edges: Sequence[int] | None = None
) -> SeparationResult:
    """Is ``v -> (F_1(v), ..., F_n(v))`` injective on the union of ``edges``?

    Exact: vertex images are compared first, then every pair of edge-image
    segments (including an edge against itself, which only fails if collapsed).
    """
    G = _check_shared(fs)
    ks = list(range(len(G.edges))) if edges is None else list(edges)
    verts = sorted({x for k in ks for x in (G.edges[k].u, G.edges[k].v)})
    if not ks:
        verts = list(range(G.n_vertices))

    seen: dict[tuple, int] = {}
    for v in verts:
        img = _image(fs, v)
        if img in seen:
            return SeparationResult(False, (GraphPoint(vertex=seen[img]), GraphPoint(vertex=v)))
        seen[img] = v

    segs = {}
    for k in ks:
        e = G.edges[k]
        a, b = _image(fs, e.u), _image(fs, e.v)
        segs[k] = (a, tuple(y - x for x, y in zip(a, b)))
        if e.is_loop or all(x == 0 for x in segs[k][1]):
            return SeparationResult(
                False, (_point_on(G, k, Fraction(1, 3)), _point_on(G, k, Fraction(2, 3)))
            )

    for idx, k0 in enumerate(ks):
        for k1 in ks[idx + 1:]:
            hit = _segment_collision(*segs[k0], *segs[k1])
            if not hit:
                continue
            if len(hit) == 2:
                (s0, u0), (s1, u1) = hit
                mid = ((s0 + s1) / 2, (u0 + u1) / 2)
                return SeparationResult(False, (_point_on(G, k0, mid[0]), _point_on(G, k1, mid[1])))
            s, u = hit[0]
            p, q = _point_on(G, k0, s), _point_on(G, k1, u)
            if p != q:
                return SeparationResult(False, (p, q))
    return SeparationResult(True)


# ---------------------------------------------------------------------------


class TropVerdict(enum.Enum):
    FAITHFUL = "Faithful"
    SCALED = "Scaled"
    NOT_SCALED = "NotScaled"


@dataclass(frozen=True)
class TropClassification:
    verdict: TropVerdict
    per_edge_expansion: tuple[int, ...]
    separated: bool
    collapsed_edges: tuple[int, ...] = ()
    witness: tuple[GraphPoint, GraphPoint] | None = None


def classify_trop(
    fs: Sequence[PiecewiseAffineFunction], edges: Sequence[int] | None = None
) -> TropClassification:
    G = _check_shared(fs)
    ks = list(range(len(G.edges))) if edges is None else list(edges)
    factors = tuple(expansion_factor(k, fs) for k in ks)
    sep = separates_points(fs, ks)
    collapsed = tuple(k for k, m in zip(ks, factors) if m == 0)
    if sep.separated and all(m == 1 for m in factors):
        verdict = TropVerdict.FAITHFUL
    elif sep.separated and all(m >= 1 for m in factors):
        verdict = TropVerdict.SCALED
    else:
        verdict = TropVerdict.NOT_SCALED
    return TropClassification(verdict, factors, sep.separated, collapsed, sep.witness)


def breakpoints_csv(
    named: Sequence[tuple[str, PiecewiseAffineFunction]], cycle: Sequence[int]
) -> str:
    """CSV rows ``function,vertex,position,height`` walking the vertex cycle ``cycle``.

    The walk is closed: the first vertex is repeated at the end, at position
    equal to the total length travelled.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["function", "vertex", "position", "height"])
    for label, F in named:
        G = F.graph
        pos = Fraction(0)
        walk = list(cycle) + [cycle[0]]
        for step, v in enumerate(walk):
            if step:
                prev = walk[step - 1]
                pos += _edge_between(G, prev, v).length
            w.writerow([label, G.names[v], str(pos), str(F.heights[v])])
    return buf.getvalue()


def _edge_between(G: MetricGraph, a: int, b: int):
    for e in G.edges:
        if {e.u, e.v} == {a, b}:
            return e
    raise ValueError(f"no edge between {G.names[a]} and {G.names[b]}")
