"""Stable reduction type, thicknesses and skeleton of a genus-2 curve.

Everything here is a function of the tropical Igusa invariants (the
valuations of the J- and I-invariants) and of ``epsilon``, which depends on
the residue characteristic only.

Classification evaluates all seven case predicates.  A case *strictly*
matches when its predicate holds and every thickness it prescribes is finite
and positive; the verdict is the strict match, and the raw predicate hits are
reported alongside it.  For example ``X^5 - X`` has all valuations 0, which
satisfies both the smooth predicate and the single-double-point predicate,
but the latter would give a node of thickness ``w2x/6 = 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import AmbiguousVerdict, NoCaseMatches, NonPositiveThickness
from .igusa import TropIgusa
from .metgraph import AbelianGroup, MetricGraph
from .valfield import ExtRat, ext_combine, lcm_denominator


def epsilon(residue_char: int) -> int:
    """1, 3 or 4 according as the residue characteristic is not 2 or 3, is 3, is 2."""
    if residue_char == 2:
        return 4
    if residue_char == 3:
        return 3
    return 1


def _vI2eps(tv: TropIgusa, eps: int) -> ExtRat:
    return {1: tv.vI2, 3: tv.vI6, 4: tv.vI8}[eps]


@dataclass(frozen=True)
class WTable:
    """The weight-0 linear forms in the valuations that drive the classification."""

    tv: TropIgusa
    eps: int
    w1: tuple[ExtRat, ...]
    w2: tuple[ExtRat, ...]
    w2x: ExtRat
    w3: tuple[ExtRat, ...]
    w3x: ExtRat
    w3y1: ExtRat
    w3y2: ExtRat
    w2c1: ExtRat
    w2c2: ExtRat
    w2c3: ExtRat
    w5_1: ExtRat
    w5_2: ExtRat
    w6_1: ExtRat
    w6_2: ExtRat
    w7_1: ExtRat
    w7_2: ExtRat

    @property
    def w4(self) -> tuple[ExtRat, ...]:
        return self.w3

    def as_dict(self) -> dict[str, ExtRat]:
        out: dict[str, ExtRat] = {}
        for name in ("w1", "w2", "w3", "w4"):
            for i, x in enumerate(getattr(self, name), 1):
                out[f"{name}_{i}"] = x
        for name in (
            "w2x", "w3x", "w3y1", "w3y2", "w2c1", "w2c2", "w2c3",
            "w5_1", "w5_2", "w6_1", "w6_2", "w7_1", "w7_2",
        ):
            out[name] = getattr(self, name)
        return out

    def __eq__(self, other):
        if not isinstance(other, WTable):
            return NotImplemented
        return self.eps == other.eps and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self.eps, tuple(self.as_dict().items())))


def w_table(tv: TropIgusa, eps: int) -> WTable:
    if eps not in (1, 3, 4):
        raise ValueError(f"epsilon must be 1, 3 or 4, not {eps}")
    L = ext_combine
    vJ10, vI4, vI12, vJ4, vJ6 = tv.vJ10, tv.vI4, tv.vI12, tv.vJ4, tv.vJ6
    vI2e = _vI2eps(tv, eps)
    idx = range(1, 6)
    w1 = tuple(L([(5, tv.vJ(i)), (-i, vJ10)]) for i in idx)
    w2 = tuple(L([(6, tv.vJ(i)), (-i, vI12)]) for i in idx)
    w3 = tuple(L([(2, tv.vJ(i)), (-i, vI4)]) for i in idx)
    w6_1 = L([(3, vI4), (-1, vI12)])
    return WTable(
        tv=tv,
        eps=eps,
        w1=w1,
        w2=w2,
        w2x=L([(6, vJ10), (-5, vI12)]),
        w3=w3,
        w3x=L([(1, vI12), (-3, vI4)]),
        w3y1=L([(1, vJ4), (-1, vI4)]),
        w3y2=L([(2, vJ6), (-3, vI4)]),
        w2c1=L([(eps, vI4), (-2, vI2e)]),
        w2c2=L([(eps, vJ10), (-5, vI2e)]),
        w2c3=L([(eps, vI12), (-6, vI2e)]),
        w5_1=L([(3 * eps, vI4), (-eps, vJ10), (-1, vI2e)]),
        w5_2=L([(eps, vI12), (-eps, vJ10), (-1, vI2e)]),
        w6_1=w6_1,
        w6_2=L([(eps, vJ10), (1, vI2e), (-eps, vI12)]),
        w7_1=L([(1, vI12), (-3, vI4)]),
        w7_2=L([(eps, vJ10), (1, vI2e), (-3 * eps, vI4)]),
    )


class ReductionType(enum.Enum):
    SMOOTH = "Smooth"
    SINGLE_DOUBLE_POINT = "SingleDoublePoint"
    DOUBLE_DOUBLE_POINT = "DoubleDoublePoint"
    CHESTNUT = "Chestnut"
    TWO_ELLIPTIC_CURVES = "TwoEllipticCurves"
    ELLIPTIC_PLUS_SINGULAR_LINE = "EllipticPlusSingularLine"
    TWO_SINGULAR_LINES = "TwoSingularLines"

    def __str__(self):
        return self.value


_ORDER = list(ReductionType)
RT = ReductionType

NOTES = {
    RT.CHESTNUT: "n = v(I12) - 6 v(J2): the printed 'v(J12)' has no such invariant, "
    "and J2 is the reading that makes n weight 0 like l and m",
    RT.TWO_ELLIPTIC_CURVES: "e = (eps v(J10) - 5 v(I_2eps)) / (12 eps), with the whole "
    "difference divided by 12 eps as in w2c2",
    RT.DOUBLE_DOUBLE_POINT: "the condition 'w3y1 = 0 or w3y2 = 0' is tested as an inclusive or",
}

# every interpretive choice behind a verdict, embedded in CLI reports
INTERPRETATIONS = (
    "smooth case: 'w_i >= 0 for i <= 5' is read as w_{1,i}",
    "a case matches strictly when its predicate holds and all its thicknesses are positive",
    "J10 = v0^2 disc(f) / 2^12, which has weight 10",
) + tuple(NOTES[r] for r in (RT.DOUBLE_DOUBLE_POINT, RT.CHESTNUT, RT.TWO_ELLIPTIC_CURVES))


def _predicate(rt: ReductionType, w: WTable) -> bool:
    ge = lambda x: x >= 0  # noqa: E731
    gt = lambda x: x > 0  # noqa: E731
    two_comp = gt(w.w2c1) and gt(w.w2c2) and gt(w.w2c3)
    if rt is RT.SMOOTH:
        return all(map(ge, w.w1))
    if rt is RT.SINGLE_DOUBLE_POINT:
        return all(map(ge, w.w2)) and ge(w.w2x)
    if rt is RT.DOUBLE_DOUBLE_POINT:
        return (
            all(map(ge, w.w3))
            and gt(w.w3[4])
            and ge(w.w3x)
            and (w.w3y1 == 0 or w.w3y2 == 0)
        )
    if rt is RT.CHESTNUT:
        return all(gt(x) for x in w.w4[1:])
    if rt is RT.TWO_ELLIPTIC_CURVES:
        return two_comp and ge(w.w5_1) and ge(w.w5_2)
    if rt is RT.ELLIPTIC_PLUS_SINGULAR_LINE:
        return two_comp and ge(w.w6_1) and gt(w.w6_2)
    return two_comp and gt(w.w7_1) and gt(w.w7_2)


def _raw_thicknesses(rt: ReductionType, w: WTable) -> dict[str, ExtRat]:
    tv, eps = w.tv, w.eps
    vI2e = _vI2eps(tv, eps)
    L = ext_combine
    if rt is RT.SMOOTH:
        return {}
    if rt is RT.SINGLE_DOUBLE_POINT:
        return {"e": w.w2x / 6}
    if rt is RT.DOUBLE_DOUBLE_POINT:
        e1 = min(w.w3x, w.w3[4] / 4)
        return {"e1": e1, "e2": w.w3[4] / 2 - e1}
    if rt is RT.CHESTNUT:
        l = L([(1, tv.vJ10), (-5, tv.vJ2)])  # noqa: E741
        n = L([(1, tv.vI12), (-6, tv.vJ2)])
        m = L([(1, tv.vJ4), (-2, tv.vJ2)])
        e1 = min(l / 3, n / 2, m)
        e2 = min((l - e1) / 2, n - e1)
        return {"e1": e1, "e2": e2, "e3": l - e1 - e2}
    if rt is RT.TWO_ELLIPTIC_CURVES:
        return {"e": w.w2c2 / (12 * eps)}
    if rt is RT.ELLIPTIC_PLUS_SINGULAR_LINE:
        return {
            "e0": w.w2c3 / (12 * eps),
            "e1": L([(eps, tv.vJ10), (1, vI2e), (-eps, tv.vI12)]) / eps,
        }
    e1 = min(w.w7_1, w.w7_2 / (2 * eps))
    return {
        "e0": w.w2c1 / (4 * eps),
        "e1": e1,
        "e2": w.w7_2 / eps - e1,
    }


def _positive(ts: dict[str, ExtRat]) -> bool:
    return all(x.is_finite and x > 0 for x in ts.values())


@dataclass(frozen=True)
class ReductionVerdict:
    rtype: ReductionType
    matched_cases: tuple[ReductionType, ...]
    predicate_matches: tuple[ReductionType, ...]
    ambiguous: bool
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "type": self.rtype.value,
            "matched_cases": [r.value for r in self.matched_cases],
            "predicate_matches": [r.value for r in self.predicate_matches],
            "ambiguous": self.ambiguous,
            "notes": list(self.notes),
        }


def classify(w: WTable) -> ReductionVerdict:
    """Evaluate every case; the verdict is the first strict match in the fixed order."""
    preds = tuple(rt for rt in _ORDER if _predicate(rt, w))
    strict = tuple(rt for rt in preds if _positive(_raw_thicknesses(rt, w)))
    if not strict:
        hits = ", ".join(r.value for r in preds) or "none"
        raise NoCaseMatches(
            f"no reduction type matches with positive thicknesses (raw predicate hits: {hits})"
        )
    rtype = strict[0]
    notes = tuple(NOTES[r] for r in strict if r in NOTES)
    return ReductionVerdict(rtype, strict, preds, len(strict) != 1, notes)


# ---------------------------------------------------------------------------
# Thicknesses, component groups, skeletons


@dataclass(frozen=True)
class SkeletonData:
    rtype: ReductionType
    thicknesses: dict[str, Fraction]
    component_group: AbelianGroup
    dual_graph: MetricGraph
    integral_over_K: bool
    ramification: int = 1
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "type": self.rtype.value,
            "thicknesses": {k: str(v) for k, v in self.thicknesses.items()},
            "component_group": list(self.component_group.invariant_factors),
            "component_group_str": str(self.component_group),
            "integral_over_K": self.integral_over_K,
            "ramification": self.ramification,
            "dual_graph": self.dual_graph.to_json(),
            "notes": list(self.notes),
        }


def component_group(rtype: ReductionType, ts: dict[str, Fraction]) -> AbelianGroup:
    """Closed-form component group for integral thicknesses."""
    t = {k: int(v) for k, v in ts.items()}
    if rtype in (RT.SMOOTH, RT.TWO_ELLIPTIC_CURVES):
        return AbelianGroup()
    if rtype is RT.SINGLE_DOUBLE_POINT:
        return AbelianGroup.from_cyclic_orders([t["e"]])
    if rtype is RT.CHESTNUT:
        e1, e2, e3 = t["e1"], t["e2"], t["e3"]
        d1 = gcd(e1, gcd(e2, e3))
        d2 = (e1 * e2 + e2 * e3 + e1 * e3) // d1
        return AbelianGroup.from_cyclic_orders([d1, d2])
    if rtype is RT.ELLIPTIC_PLUS_SINGULAR_LINE:
        return AbelianGroup.from_cyclic_orders([t["e1"]])
    # two loops: double double point, two singular lines
    return AbelianGroup.from_cyclic_orders([t["e1"], t["e2"]])


def skeleton_graph(rtype: ReductionType, ts: dict[str, Fraction]) -> MetricGraph:
    """Dual graph of the special fibre with thicknesses as edge lengths."""
    if rtype is RT.SMOOTH:
        return MetricGraph.build([("C", 2)], [])
    if rtype is RT.SINGLE_DOUBLE_POINT:
        return MetricGraph.build([("C", 1)], [("C", "C", ts["e"])])
    if rtype is RT.DOUBLE_DOUBLE_POINT:
        return MetricGraph.build([("C", 0)], [("C", "C", ts["e1"]), ("C", "C", ts["e2"])])
    if rtype is RT.CHESTNUT:
        return MetricGraph.build(
            [("L1", 0), ("L2", 0)], [("L1", "L2", ts[k]) for k in ("e1", "e2", "e3")]
        )
    if rtype is RT.TWO_ELLIPTIC_CURVES:
        return MetricGraph.build([("E1", 1), ("E2", 1)], [("E1", "E2", ts["e"])])
    if rtype is RT.ELLIPTIC_PLUS_SINGULAR_LINE:
        return MetricGraph.build(
            [("E", 1), ("L", 0)], [("E", "L", ts["e0"]), ("L", "L", ts["e1"])]
        )
    return MetricGraph.build(
        [("L1", 0), ("L2", 0)],
        [("L1", "L1", ts["e1"]), ("L1", "L2", ts["e0"]), ("L2", "L2", ts["e2"])],
    )


def thickness(verdict: ReductionVerdict, tv: TropIgusa, eps: int) -> SkeletonData:
    """Thicknesses, component group and metric dual graph for a verdict.

    Non-integral thicknesses are kept exact; the component group is then the
    one over the extension of ramification index ``lcm`` of their
    denominators, where every thickness becomes integral.
    """
    if verdict.ambiguous:
        raise AmbiguousVerdict(
            "ambiguous verdict: " + ", ".join(r.value for r in verdict.matched_cases)
        )
    rt = verdict.rtype
    raw = _raw_thicknesses(rt, w_table(tv, eps))
    if not _positive(raw):
        bad = ", ".join(f"{k}={v}" for k, v in raw.items())
        raise NonPositiveThickness(f"{rt.value} thicknesses not all positive: {bad}")
    ts = {k: v.value for k, v in raw.items()}
    ram = lcm_denominator(list(ts.values())) if ts else 1
    group = component_group(rt, {k: v * ram for k, v in ts.items()})
    notes = (NOTES[rt],) if rt in NOTES else ()
    return SkeletonData(rt, ts, group, skeleton_graph(rt, ts), ram == 1, ram, notes)


def analyze(tv: TropIgusa, eps: int) -> tuple[WTable, ReductionVerdict, SkeletonData]:
    w = w_table(tv, eps)
    verdict = classify(w)
    return w, verdict, thickness(verdict, tv, eps)
