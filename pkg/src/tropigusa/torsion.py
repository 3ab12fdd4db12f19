"""Tropicalizations built from torsion points.

Elliptic case: a Tate curve whose skeleton is an N-cycle of components
``C_0..C_{N-1}``, each edge of length ``-v(j)/N``.  A divisor
``sum a_i P_i`` with ``P_i = [i]P_1`` specializes to ``sum a_i C_i`` and is
principal exactly when ``sum i a_i = 0 mod N``.

Genus-2 case: a 3-torsion class reducing to ``(e1/3, 0)`` on a component
group ``Z/e1 x ...``; two points ``P_1 -> C_i``, ``P_2 -> C_j`` with
``i + j = e1/3 mod e1`` give functions

    div f = 2P_1 + 2P_2 - s(P_1) - s(P_2) - 2inf,
    div g = 2s(P_1) + 2s(P_2) - P_1 - P_2 - 2inf,

where ``s`` is the hyperelliptic involution, acting as negation on
component indices.  Reductions of the torsion points are input data.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import InvalidConfig, NonZeroDegree, NotPrincipal
from .metgraph import GraphDivisor, MetricGraph, default_unit, subdivide
from .tropfun import (
    PiecewiseAffineFunction,
    TropClassification,
    breakpoints_csv,
    classify_trop,
    separates_points,
    solve_function,
)


@dataclass(frozen=True)
class CycleDivisorSpec:
    """Coefficients ``a_0..a_{N-1}`` on the components of an N-cycle."""

    N: int
    a: tuple[int, ...]
    edge_length: Fraction = Fraction(1)

    def __post_init__(self):
        if self.N < 2:
            raise InvalidConfig("a cycle needs N >= 2 components")
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "edge_length", Fraction(self.edge_length))
        if len(self.a) != self.N:
            raise InvalidConfig(f"expected {self.N} coefficients, got {len(self.a)}")
        if self.edge_length <= 0:
            raise InvalidConfig("edge length must be positive")

    @property
    def degree(self) -> int:
        return sum(self.a)

    @classmethod
    def from_points(cls, N: int, points: Mapping[str, int], edge_length=1) -> "CycleDivisorSpec":
        """From ``{"O": -2, "P1": 2, "P2": 1, "P4": -1}``; ``O`` is ``P0``."""
        a = [0] * N
        for name, mult in points.items():
            m = re.fullmatch(r"\s*(?:O|P(\d+))\s*", name)
            if not m:
                raise InvalidConfig(f"point name {name!r} is not O or P<k>")
            a[int(m.group(1) or 0) % N] += int(mult)
        return cls(N, tuple(a), Fraction(edge_length))

    def relabeled(self, u: int) -> "CycleDivisorSpec":
        """The same divisor written for the generator ``[u]P_1``: ``P_i`` becomes ``P_{u i}``."""
        a = [0] * self.N
        for i, x in enumerate(self.a):
            a[(u * i) % self.N] += x
        return CycleDivisorSpec(self.N, tuple(a), self.edge_length)


def cycle_graph(N: int, edge_length=1) -> MetricGraph:
    names = [f"C{k}" for k in range(N)]
    return MetricGraph.build(names, [(k, (k + 1) % N, edge_length) for k in range(N)])


def check_cycle_principal(spec: CycleDivisorSpec) -> bool:
    """``sum i a_i = 0 mod N``; degree must be 0."""
    if spec.degree != 0:
        raise NonZeroDegree(f"divisor {list(spec.a)} has degree {spec.degree}")
    return sum(i * x for i, x in enumerate(spec.a)) % spec.N == 0


def _format_vj(c: Fraction) -> str:
    if c == 1:
        return "v(j)"
    if c == -1:
        return "-v(j)"
    return f"{c}*v(j)"


@dataclass(frozen=True)
class EllipticReport:
    """Tropicalization of an N-cycle; lengths are in units of ``-v(j)/N``."""

    N: int
    specs: tuple[CycleDivisorSpec, ...]
    functions: tuple[PiecewiseAffineFunction, ...]
    classification: TropClassification

    @property
    def expansions(self) -> tuple[int, ...]:
        return self.classification.per_edge_expansion

    @property
    def length_coefficient(self) -> Fraction:
        """``c`` with cycle length ``c * v(j)``."""
        return -Fraction(sum(self.expansions), self.N)

    @property
    def length(self) -> str:
        return _format_vj(self.length_coefficient)

    def to_json(self) -> dict:
        G = self.functions[0].graph
        return {
            "N": self.N,
            "divisors": [list(s.a) for s in self.specs],
            "heights": [[str(h) for h in F.heights] for F in self.functions],
            "slopes": [list(F.slopes) for F in self.functions],
            "expansions": list(self.expansions),
            "length": self.length,
            "length_coefficient": str(self.length_coefficient),
            "classification": self.classification.verdict.value,
            "separated": self.classification.separated,
            "witness": _witness(G, self.classification.witness),
        }


def _witness(G: MetricGraph, w) -> list[str] | None:
    return None if w is None else [p.describe(G) for p in w]


def elliptic_trop(N: int, divisors: Sequence[CycleDivisorSpec]) -> EllipticReport:
    """Solve each divisor on the N-cycle (unit ``-v(j)/N`` edges) and tropicalize."""
    if not divisors:
        raise InvalidConfig("need at least one divisor")
    G = cycle_graph(N)
    fs = []
    for spec in divisors:
        if spec.N != N:
            raise InvalidConfig(f"divisor is for N={spec.N}, not {N}")
        if not check_cycle_principal(spec):
            raise NotPrincipal(f"sum i*a_i != 0 mod {N} for {list(spec.a)}")
        fs.append(solve_function(G, GraphDivisor(spec.a), 1))
    return EllipticReport(N, tuple(divisors), tuple(fs), classify_trop(fs))


# ---------------------------------------------------------------------------
# Genus 2


@dataclass(frozen=True)
class Genus2TorsionConfig:
    """Reductions ``P_1 -> C_i``, ``P_2 -> C_j`` on the first cycle (length ``e1``).

    ``e0`` and ``e2`` optionally describe the rest of a dumbbell skeleton:
    a bridge of length ``e0`` from ``C_0`` to a second loop of length ``e2``.
    """

    e1: int
    i: int
    j: int
    e2: Fraction | None = None
    e0: Fraction | None = None

    def __post_init__(self):
        if self.e1 <= 0 or self.e1 % 3:
            raise InvalidConfig(f"e1 must be a positive multiple of 3, got {self.e1}")
        if (self.e0 is None) != (self.e2 is None):
            raise InvalidConfig("give both e0 and e2 or neither")
        if self.e0 is not None:
            object.__setattr__(self, "e0", Fraction(self.e0))
            object.__setattr__(self, "e2", Fraction(self.e2))
            if self.e0 <= 0 or self.e2 <= 0:
                raise InvalidConfig("e0 and e2 must be positive")
        object.__setattr__(self, "i", self.i % self.e1)
        object.__setattr__(self, "j", self.j % self.e1)

    @property
    def valid(self) -> bool:
        return (self.i + self.j - self.e1 // 3) % self.e1 == 0

    def graph(self) -> MetricGraph:
        e1 = self.e1
        verts = [f"C{k}" for k in range(e1)]
        edges = [(k, (k + 1) % e1, 1) for k in range(e1)]
        if self.e0 is not None:
            verts.append("D")
            edges += [(0, e1, self.e0), (e1, e1, self.e2)]
        return MetricGraph.build(verts, edges)

    def to_json(self) -> dict:
        out = {"e1": self.e1, "i": self.i, "j": self.j}
        if self.e0 is not None:
            out.update(e0=str(self.e0), e2=str(self.e2))
        return out


def genus2_divisor_pair(
    cfg: Genus2TorsionConfig, check: bool = True
) -> tuple[CycleDivisorSpec, CycleDivisorSpec]:
    """Specializations of ``div f`` and ``div g`` to the first cycle."""
    if check and not cfg.valid:
        raise InvalidConfig(
            f"i + j = {cfg.i + cfg.j} is not {cfg.e1 // 3} mod {cfg.e1}"
        )
    n = cfg.e1
    f = [0] * n
    g = [0] * n
    for k in (cfg.i, cfg.j):
        f[k] += 2
        f[-k % n] -= 1
        g[-k % n] += 2
        g[k] -= 1
    f[0] -= 2
    g[0] -= 2
    return CycleDivisorSpec(n, tuple(f)), CycleDivisorSpec(n, tuple(g))


@dataclass(frozen=True)
class Genus2Report:
    config: Genus2TorsionConfig
    specs: tuple[CycleDivisorSpec, CycleDivisorSpec]
    F: PiecewiseAffineFunction
    G: PiecewiseAffineFunction
    cycle_edges: tuple[int, ...]  # edge indices of the subdivided graph on the first cycle
    slopes_F: tuple[int, ...]
    slopes_G: tuple[int, ...]
    expansions: tuple[int, ...]
    separated: bool
    witness: tuple | None

    @property
    def length(self) -> Fraction:
        return Fraction(sum(self.expansions))

    def witness_names(self) -> list[str] | None:
        return _witness(self.F.graph, self.witness)

    def to_json(self) -> dict:
        n = self.config.e1
        out = {
            "config": self.config.to_json(),
            "divisor_f": list(self.specs[0].a),
            "divisor_g": list(self.specs[1].a),
            "heights_F": [str(self.F.heights[k]) for k in range(n)],
            "heights_G": [str(self.G.heights[k]) for k in range(n)],
            "slopes_F": list(self.slopes_F),
            "slopes_G": list(self.slopes_G),
            "expansions": list(self.expansions),
            "length": str(self.length),
            "separated": self.separated,
            "witness": self.witness_names(),
        }
        if self.witness is not None:
            vals = {}
            for p in self.witness:
                if p.vertex is not None:
                    name = self.F.graph.names[p.vertex]
                    vals[name] = [str(self.F.heights[p.vertex]), str(self.G.heights[p.vertex])]
            out["witness_values"] = vals
        return out

    def breakpoints_csv(self) -> str:
        return breakpoints_csv([("F", self.F), ("G", self.G)], list(range(self.config.e1)))


def genus2_trop(cfg: Genus2TorsionConfig, check: bool = True) -> Genus2Report:
    """Solve ``F``, ``G`` on the skeleton and tropicalize the first cycle.

    With ``check=False`` an invalid configuration is still attempted; it then
    fails with :class:`NotPrincipal` unless ``3(i + j) = 0 mod e1``.
    """
    sf, sg = genus2_divisor_pair(cfg, check)
    G = cfg.graph()
    unit = default_unit(G)
    n = cfg.e1

    def solve(spec):
        D = GraphDivisor(spec.a + (0,) * (G.n_vertices - n))
        return solve_function(G, D, unit)

    F, Gf = solve(sf), solve(sg)
    H = subdivide(G, unit)
    cycle = tuple(k for k, o in enumerate(H.origin) if o < n)
    # cycle edges have length 1 and no divisor support inside, so the slope
    # is constant along each of them even when the unit splits it
    slopes_F = tuple(int(F.heights[(k + 1) % n] - F.heights[k]) for k in range(n))
    slopes_G = tuple(int(Gf.heights[(k + 1) % n] - Gf.heights[k]) for k in range(n))
    expansions = tuple(gcd(abs(a), abs(b)) for a, b in zip(slopes_F, slopes_G))
    sep = separates_points([F, Gf], cycle)
    return Genus2Report(
        cfg, (sf, sg), F, Gf, cycle, slopes_F, slopes_G, expansions,
        sep.separated, sep.witness,
    )


def valid_configs(e1: int) -> list[Genus2TorsionConfig]:
    return [Genus2TorsionConfig(e1, i, (e1 // 3 - i) % e1) for i in range(e1)]


@dataclass(frozen=True)
class ScanReport:
    e1_max: int
    checked: int
    counterexamples: tuple[dict, ...]
    not_separated: tuple[dict, ...]

    def to_json(self) -> dict:
        return {
            "e1_max": self.e1_max,
            "configurations_checked": self.checked,
            "counterexamples": list(self.counterexamples),
            "not_separated": list(self.not_separated),
        }


def nonzero_slope_scan(e1_max: int) -> ScanReport:
    """Check that ``F`` or ``G`` has nonzero slope on every cycle edge, for all valid configs."""
    checked = 0
    bad: list[dict] = []
    unsep: list[dict] = []
    for e1 in range(3, e1_max + 1, 3):
        for cfg in valid_configs(e1):
            rep = genus2_trop(cfg)
            checked += 1
            flat = [k for k in range(e1) if rep.slopes_F[k] == 0 and rep.slopes_G[k] == 0]
            if flat:
                bad.append({**cfg.to_json(), "edges": [f"C{k}-C{(k + 1) % e1}" for k in flat]})
            if not rep.separated:
                unsep.append({**cfg.to_json(), "witness": rep.witness_names()})
    return ScanReport(e1_max, checked, tuple(bad), tuple(unsep))
