"""Metric graphs, divisors on them, the Laplacian and the graph Jacobian.

Sign convention for the Laplacian (kept everywhere in the package)::

    Delta(phi)(v) = sum over edges e = vw of (phi(v) - phi(w))

so on an N-cycle the divisor coefficient at ``C_i`` is ``2h_i - h_{i-1} - h_{i+1}``.
Loops contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    DisconnectedGraph,
    NonCommensurableLengths,
    NonZeroDegree,
    UnknownVertex,
)
from .intlinalg import bareiss_det, smith_diagonal, solve_rational

VertexRef = Union[int, str]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class MetricGraph:
    """Connected multigraph with genus-labelled vertices and positive rational lengths.

    ``origin[k]`` is the index of the edge of the graph this one was cut from
    by :func:`subdivide` (identity for graphs built directly).
    """

    names: tuple[str, ...]
    genera: tuple[int, ...]
    edges: tuple[Edge, ...]
    origin: tuple[int, ...] | None = None
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.names) != len(self.genera):
            raise ValueError("names and genera differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate vertex names")
        if not self.names:
            raise ValueError("a metric graph needs at least one vertex")
        n = len(self.names)
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise UnknownVertex(f"edge {e} references a missing vertex")
            if e.length <= 0:
                raise ValueError(f"edge lengths must be positive, got {e.length}")
        if any(g < 0 for g in self.genera):
            raise ValueError("vertex genera must be natural numbers")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.names)})
        if self.origin is None:
            object.__setattr__(self, "origin", tuple(range(len(self.edges))))
        if not self._connected():
            raise DisconnectedGraph("metric graphs must be connected")

    @classmethod
    def build(
        cls,
        vertices: Iterable[tuple[str, int] | str],
        edges: Iterable[tuple[VertexRef, VertexRef, Fraction | int | str]],
    ) -> "MetricGraph":
        """Build from ``[(name, genus), ...]`` and ``[(a, b, length), ...]``."""
        names, genera = [], []
        for v in vertices:
            name, genus = (v, 0) if isinstance(v, str) else v
            names.append(str(name))
            genera.append(int(genus))
        index = {name: i for i, name in enumerate(names)}

        def ref(x):
            if isinstance(x, int) and not isinstance(x, bool):
                if not 0 <= x < len(names):
                    raise UnknownVertex(f"no vertex with index {x}")
                return x
            if x not in index:
                raise UnknownVertex(f"no vertex named {x!r}")
            return index[x]

        es = tuple(Edge(ref(a), ref(b), Fraction(length)) for a, b, length in edges)
        return cls(tuple(names), tuple(genera), es)

    # -- basic queries -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    def index(self, v: VertexRef) -> int:
        if isinstance(v, int) and not isinstance(v, bool):
            if not 0 <= v < self.n_vertices:
                raise UnknownVertex(f"no vertex with index {v}")
            return v
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"no vertex named {v!r}") from None

    @property
    def betti_number(self) -> int:
        return len(self.edges) - self.n_vertices + 1

    @property
    def genus(self) -> int:
        """Arithmetic genus: vertex genera plus first Betti number."""
        return sum(self.genera) + self.betti_number

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def incident(self, v: int) -> list[int]:
        return [k for k, e in enumerate(self.edges) if v in (e.u, e.v)]

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj: dict[int, list[int]] = {i: [] for i in range(self.n_vertices)}
        for e in self.edges:
            adj[e.u].append(e.v)
            adj[e.v].append(e.u)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n_vertices

    def is_unit(self, unit: Fraction) -> bool:
        return all(e.length == unit for e in self.edges)

    def to_dot(self) -> str:
        lines = ["graph G {"]
        for name, g in zip(self.names, self.genera):
            lines.append(f'  "{name}" [label="{name} (g={g})"];')
        for e in self.edges:
            lines.append(f'  "{self.names[e.u]}" -- "{self.names[e.v]}" [label="{e.length}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vertices": [{"name": n, "genus": g} for n, g in zip(self.names, self.genera)],
            "edges": [[self.names[e.u], self.names[e.v], str(e.length)] for e in self.edges],
        }


@dataclass(frozen=True)
class GraphDivisor:
    """Integer coefficient per vertex, in vertex order."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "GraphDivisor":
        return cls((0,) * n)

    @classmethod
    def on(cls, G: MetricGraph, mults: Mapping[VertexRef, int]) -> "GraphDivisor":
        c = [0] * G.n_vertices
        for v, m in mults.items():
            c[G.index(v)] += int(m)
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def extend(self, n: int) -> "GraphDivisor":
        """Pad with zeros for the fresh vertices of a subdivision."""
        if n < len(self.coeffs):
            raise ValueError("cannot shrink a divisor")
        return GraphDivisor(self.coeffs + (0,) * (n - len(self.coeffs)))

    def __add__(self, other: "GraphDivisor") -> "GraphDivisor":
        return GraphDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GraphDivisor":
        return GraphDivisor(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "GraphDivisor") -> "GraphDivisor":
        return self + (-other)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group by invariant factors ``d1 | d2 | ...`` (1s dropped)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"{fs} is not a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        orders = [int(d) for d in orders]
        if any(d <= 0 for d in orders):
            raise ValueError("cyclic orders must be positive")
        n = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(tuple(d for d in smith_diagonal(diag) if d > 1))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


# ---------------------------------------------------------------------------


def default_unit(G: MetricGraph) -> Fraction:
    """``1/L`` where ``L`` is the lcm of the edge-length denominators.

    Integral lengths give unit 1: edges are then measured in the valuation
    unit, which is what the component group of the Néron model sees.
    """
    L = 1
    for e in G.edges:
        d = e.length.denominator
        L = L * d // gcd(L, d)
    return Fraction(1, L)


def subdivide(G: MetricGraph, unit: Fraction | int | str | None = None) -> MetricGraph:
    """Cut every edge of length ``k*unit`` into ``k`` unit edges.

    Original vertices keep their indices; fresh genus-0 vertices are appended.
    """
    unit = default_unit(G) if unit is None else Fraction(unit)
    if unit <= 0:
        raise ValueError("unit must be positive")
    names, genera = list(G.names), list(G.genera)
    edges: list[Edge] = []
    origin: list[int] = []
    for k, e in enumerate(G.edges):
        q = e.length / unit
        if q.denominator != 1:
            raise NonCommensurableLengths(f"edge length {e.length} is not a multiple of {unit}")
        steps = int(q)
        prev = e.u
        for s in range(1, steps):
            names.append(f"{G.names[e.u]}~{G.names[e.v]}#{k}.{s}")
            genera.append(0)
            cur = len(names) - 1
            edges.append(Edge(prev, cur, unit))
            origin.append(G.origin[k])
            prev = cur
        edges.append(Edge(prev, e.v, unit))
        origin.append(G.origin[k])
    return MetricGraph(tuple(names), tuple(genera), tuple(edges), tuple(origin))


def laplacian_matrix(G: MetricGraph) -> list[list[int]]:
    """Combinatorial Laplacian (edge lengths ignored, loops dropped)."""
    n = G.n_vertices
    L = [[0] * n for _ in range(n)]
    for e in G.edges:
        if e.is_loop:
            continue
        L[e.u][e.u] += 1
        L[e.v][e.v] += 1
        L[e.u][e.v] -= 1
        L[e.v][e.u] -= 1
    return L


def reduced_laplacian(G: MetricGraph, drop: int = 0) -> list[list[int]]:
    L = laplacian_matrix(G)
    return [[x for j, x in enumerate(row) if j != drop] for i, row in enumerate(L) if i != drop]


def laplacian_apply(G: MetricGraph, phi: Sequence[int]) -> GraphDivisor:
    """``Delta(phi)`` on a unit-subdivided graph."""
    if len(phi) != G.n_vertices:
        raise ValueError("phi needs one value per vertex")
    out = [0] * G.n_vertices
    for e in G.edges:
        if e.is_loop:
            continue
        d = phi[e.u] - phi[e.v]
        out[e.u] += d
        out[e.v] -= d
    return GraphDivisor(tuple(out))


def spanning_tree_count(G: MetricGraph, unit=None) -> int:
    """Kirchhoff: determinant of the reduced Laplacian of the unit subdivision."""
    H = subdivide(G, unit)
    if H.n_vertices == 1:
        return 1
    return int(bareiss_det(
        [[Fraction(x) for x in row] for row in reduced_laplacian(H)], Fraction(1), Fraction(0)
    ))


def graph_jacobian(G: MetricGraph, unit=None) -> AbelianGroup:
    """``Jac(G) = Div^0 / Prin`` via the Smith form of the reduced Laplacian."""
    H = subdivide(G, unit)
    if H.n_vertices == 1:
        return AbelianGroup()
    diag = smith_diagonal(reduced_laplacian(H))
    return AbelianGroup(tuple(d for d in diag if d > 1))


def specialize(
    G: MetricGraph, assignments: Iterable[tuple[int, VertexRef]]
) -> GraphDivisor:
    """``rho(sum n_P P) = sum n_P v(P)``, with each point given by the vertex it reduces to."""
    c = [0] * G.n_vertices
    for mult, v in assignments:
        c[G.index(v)] += int(mult)
    return GraphDivisor(tuple(c))


def is_principal(
    G: MetricGraph, D: GraphDivisor, unit=None
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide ``D in Delta(M(G))`` on the unit subdivision.

    Returns ``(True, phi)`` with ``phi`` normalised to ``phi[0] = 0`` on the
    subdivided vertex set, or ``(False, None)``.
    """
    if D.degree != 0:
        raise NonZeroDegree(f"divisor has degree {D.degree}")
    H = subdivide(G, unit)
    D = D.extend(H.n_vertices)
    if H.n_vertices == 1:
        return True, (0,)
    x = solve_rational(reduced_laplacian(H), D.coeffs[1:])
    if x is None:  # pragma: no cover - connected graphs have a nonsingular reduced Laplacian
        raise DisconnectedGraph("reduced Laplacian is singular")
    if any(v.denominator != 1 for v in x):
        return False, None
    return True, (0,) + tuple(int(v) for v in x)
