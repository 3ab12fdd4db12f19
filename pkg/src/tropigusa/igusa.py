"""Igusa invariants of genus-2 curves ``y^2 = f(X)`` given by a quintic.

The quintic is stored with alternating signs,

    f(X) = v0 X^5 - v1 X^4 + v2 X^3 - v3 X^2 + v4 X - v5,

which is the convention the explicit invariant formulas below are written in.
:meth:`QuinticModel.from_monomial` converts from plain coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateCurve, NotARoot, RootNotSimple, ZeroLeadingCoefficient
from .intlinalg import bareiss_det
from .valfield import ExtRat, Poly, RatFunc, ValuedField, ValuedScalar, lcm_denominator, val

F = Fraction


@dataclass(frozen=True)
class QuinticModel:
    field: ValuedField
    v: tuple[ValuedScalar, ...]

    def __post_init__(self):
        if len(self.v) != 6:
            raise ValueError("a quintic model has six coefficients v0..v5")
        object.__setattr__(self, "v", tuple(self.field(x) for x in self.v))
        if self.v[0].is_zero():
            raise ZeroLeadingCoefficient("v0 must be nonzero for a quintic model")

    @classmethod
    def from_monomial(cls, field: ValuedField, coeffs: Sequence) -> "QuinticModel":
        """``coeffs = [c0, ..., c5]`` with ``f = c0 + c1 X + ... + c5 X^5``."""
        if len(coeffs) != 6:
            raise ValueError("expected six monomial coefficients c0..c5")
        c = [field(x) for x in coeffs]
        return cls(field, (c[5], -c[4], c[3], -c[2], c[1], -c[0]))

    def monomial(self) -> list[ValuedScalar]:
        """``[c0, ..., c5]``, inverse of :meth:`from_monomial`."""
        v = self.v
        return [-v[5], v[4], -v[3], v[2], -v[1], v[0]]

    def substitute(self, a, b) -> "QuinticModel":
        """Model of ``f(a X + b)``."""
        a, b = self.field(a), self.field(b)
        lin = [b, a]
        out = [self.field(0)] * 6
        power = [self.field(1)]
        for k, ck in enumerate(self.monomial()):
            for i, x in enumerate(power):
                out[i] = out[i] + ck * x
            power = _poly_mul(power, lin)
        return QuinticModel.from_monomial(self.field, out)

    def scaled(self, lam) -> "QuinticModel":
        """Model of ``lam * f(X)`` (the substitution ``y -> sqrt(lam) y``)."""
        lam = self.field(lam)
        return QuinticModel(self.field, tuple(lam * x for x in self.v))


def _poly_mul(p: list, q: list) -> list:
    out = [p[0] * 0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


_NAMES = ("J2", "J4", "J6", "J8", "J10", "I2", "I4", "I6", "I8", "I12")


@dataclass(frozen=True)
class IgusaInvariants:
    J2: ValuedScalar
    J4: ValuedScalar
    J6: ValuedScalar
    J8: ValuedScalar
    J10: ValuedScalar
    I2: ValuedScalar
    I4: ValuedScalar
    I6: ValuedScalar
    I8: ValuedScalar
    I12: ValuedScalar

    def relation(self) -> ValuedScalar:
        """``J4^2 - J2 J6 + 4 J8``; identically zero."""
        return self.J4 * self.J4 - self.J2 * self.J6 + 4 * self.J8

    def as_dict(self) -> dict[str, ValuedScalar]:
        return {name: getattr(self, name) for name in _NAMES}


@dataclass(frozen=True)
class TropIgusa:
    vJ2: ExtRat
    vJ4: ExtRat
    vJ6: ExtRat
    vJ8: ExtRat
    vJ10: ExtRat
    vI2: ExtRat
    vI4: ExtRat
    vI6: ExtRat
    vI8: ExtRat
    vI12: ExtRat

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, ExtRat(getattr(self, f.name)))
        if not self.vJ10.is_finite:
            raise DegenerateCurve("v(J10) must be finite")

    @classmethod
    def from_values(cls, **vals) -> "TropIgusa":
        """Build from plain valuations; missing ones default to 0."""
        return cls(**{f"v{name}": ExtRat(vals.get(name, 0)) for name in _NAMES})

    def vJ(self, i: int) -> ExtRat:
        """``v(J_{2i})`` for ``i = 1..5``."""
        return getattr(self, f"vJ{2 * i}")

    def as_dict(self) -> dict[str, ExtRat]:
        return {name: getattr(self, f"v{name}") for name in _NAMES}


# ---------------------------------------------------------------------------


def _J2(v0, v1, v2, v3, v4, v5):
    return 5 * v0 * v4 - 2 * v1 * v3 + F(3, 4) * v2 ** 2


def _J4(v0, v1, v2, v3, v4, v5):
    s = (
        25 * v0 ** 2 * v3 * v5
        - 15 * v0 ** 2 * v4 ** 2
        - 15 * v0 * v1 * v2 * v5
        + 7 * v0 * v1 * v3 * v4
        + F(1, 2) * v0 * v2 ** 2 * v4
        - v0 * v2 * v3 ** 2
        + 4 * v1 ** 3 * v5
        - v1 ** 2 * v2 * v4
        - v1 ** 2 * v3 ** 2
        + v1 * v2 ** 2 * v3
        - F(3, 16) * v2 ** 4
    )
    return F(-1, 8) * s


def _J6(v0, v1, v2, v3, v4, v5):
    s = (
        F(125, 2) * v0 ** 3 * v2 * v5 ** 2
        - 25 * v0 ** 3 * v3 * v4 * v5
        + 5 * v0 ** 3 * v4 ** 3
        - 25 * v0 ** 2 * v1 ** 2 * v5 ** 2
        - 10 * v0 ** 2 * v1 * v2 * v4 * v5
        + 10 * v0 ** 2 * v1 * v3 ** 2 * v5
        - v0 ** 2 * v1 * v3 * v4 ** 2
        - F(5, 4) * v0 ** 2 * v2 ** 2 * v3 * v5
        - F(11, 4) * v0 ** 2 * v2 ** 2 * v4 ** 2
        + F(7, 2) * v0 ** 2 * v2 * v3 ** 2 * v4
        - v0 ** 2 * v3 ** 4
        + 6 * v0 * v1 ** 3 * v4 * v5
        - 3 * v0 * v1 ** 2 * v2 * v3 * v5
        + F(7, 2) * v0 * v1 ** 2 * v2 * v4 ** 2
        - 2 * v0 * v1 ** 2 * v3 ** 2 * v4
        + F(3, 4) * v0 * v1 * v2 ** 3 * v5
        - F(7, 4) * v0 * v1 * v2 ** 2 * v3 * v4
        + v0 * v1 * v2 * v3 ** 3
        + F(7, 16) * v0 * v2 ** 4 * v4
        - F(1, 4) * v0 * v2 ** 3 * v3 ** 2
        - v1 ** 4 * v4 ** 2
        + v1 ** 3 * v2 * v3 * v4
        - F(1, 4) * v1 ** 2 * v2 ** 3 * v4
        - F(1, 4) * v1 ** 2 * v2 ** 2 * v3 ** 2
        + F(1, 8) * v1 * v2 ** 4 * v3
        - F(1, 64) * v2 ** 6
    )
    return F(-1, 16) * s


def discriminant(q: QuinticModel) -> ValuedScalar:
    """Discriminant of the quintic, ``Res(f, f') / lead(f)``.

    For degree 5 the usual sign factor ``(-1)^(n(n-1)/2)`` is +1, so
    ``disc(X^5 + aX + b) = 5^5 b^4 + 4^4 a^5``.

    The coefficients are first scaled into ``Z`` (or ``Z[t]``); the
    discriminant has degree 8 in them, so the common factor comes back out
    as its 8th power.
    """
    field = q.field
    c, scale = _integral_coeffs(q)
    fc = list(reversed(c))  # highest degree first
    dc = [(5 - k) * fc[k] for k in range(5)]
    zero, one = (0, 1) if field.kind == "padic" else (Poly(), Poly.const(1))
    rows = []
    for shift in range(4):
        rows.append([zero] * shift + fc + [zero] * (3 - shift))
    for shift in range(5):
        rows.append([zero] * shift + dc + [zero] * (4 - shift))
    res = bareiss_det(rows, one, zero, _exact_div)
    if field.kind == "padic":
        return field(Fraction(res, fc[0])) / scale ** 8
    return field(RatFunc(res, fc[0])) / scale ** 8


def _lift(field: ValuedField, x) -> ValuedScalar:
    return field(RatFunc(x) if isinstance(x, Poly) else x)


def _exact_div(a, b):
    if isinstance(a, int):
        q, r = divmod(a, b)
        assert r == 0
        return q
    q, r = a.divmod(b)
    assert r.is_zero()
    return q


def _integral_coeffs(q: QuinticModel):
    """Monomial coefficients times a common ``s`` making them lie in Z or Z[t]."""
    field = q.field
    vals = [x.value for x in q.monomial()]
    if field.kind == "padic":
        s = lcm_denominator(vals)
        return [int(x * s) for x in vals], field(s)
    den = Poly.const(1)
    for x in vals:
        g = den.gcd(x.den)
        den = den * x.den.divmod(g)[0]
    polys = [(x.num * den).divmod(x.den)[0] for x in vals]
    k = lcm_denominator([a for p in polys for a in p.c] or [1])
    polys = [p.scale(k) for p in polys]
    return polys, field(RatFunc(den.scale(k)))


def igusa_from_quintic(q: QuinticModel) -> IgusaInvariants:
    """Igusa J- and I-invariants of ``y^2 = f(X)``.

    ``J10`` is ``v0^2 * disc(f) / 2^12``: the discriminant of ``f`` viewed as a
    binary sextic with a root at infinity.  For monic ``f`` this is just
    ``disc(f) / 2^12``; the ``v0^2`` keeps ``J10`` of weight 10 like the others.
    """
    v = q.v
    if v[0].is_zero():
        raise ZeroLeadingCoefficient("v0 must be nonzero")
    disc = discriminant(q)
    if disc.is_zero():
        raise DegenerateCurve("f has a repeated root (discriminant 0)")
    # each invariant is homogeneous (J_{2k} of degree 2k) in the coefficients:
    # evaluate on the integral rescaling and divide the scale back out
    c, s = _integral_coeffs(q)
    w = (c[5], -c[4], c[3], -c[2], c[1], -c[0])
    j2, j4, j6 = _J2(*w), _J4(*w), _J6(*w)
    j8 = F(1, 4) * (j2 * j6 - j4 * j4)
    i4 = j2 * j2 - 24 * j4
    i12 = -8 * j4 ** 3 + 9 * j2 * j4 * j6 - 27 * j6 * j6 - j2 * j2 * j8

    def lift(x, degree):
        return _lift(q.field, x) / s ** degree

    J2, J4, J6, J8 = lift(j2, 2), lift(j4, 4), lift(j6, 6), lift(j8, 8)
    I4, I12 = lift(i4, 4), lift(i12, 12)
    J10 = v[0] * v[0] * disc / 4096
    I2 = J2 / 12
    return IgusaInvariants(J2, J4, J6, J8, J10, I2, I4, J6, J8, I12)


def trop_igusa(J: IgusaInvariants) -> TropIgusa:
    return TropIgusa(**{f"v{name}": val(x) for name, x in J.as_dict().items()})


def sextic_to_quintic(field: ValuedField, coeffs: Sequence, root) -> QuinticModel:
    """Quintic model of ``y^2 = P(x)``, ``P = c0 + ... + c6 x^6``, from a simple root.

    Uses ``x -> root + 1/x, y -> y / x^3``; the new leading coefficient is
    ``P'(root)``.
    """
    if len(coeffs) != 7:
        raise ValueError("expected seven monomial coefficients c0..c6")
    c = [field(x) for x in coeffs]
    r = field(root)
    value = sum((ck * r ** k for k, ck in enumerate(c)), field(0))
    if not value.is_zero():
        raise NotARoot(f"{r} is not a root of the sextic")
    deriv = sum((k * ck * r ** (k - 1) for k, ck in enumerate(c) if k), field(0))
    if deriv.is_zero():
        raise RootNotSimple(f"{r} is a multiple root of the sextic")
    # X^6 P(r + 1/X) = sum_k c_k (r X + 1)^k X^(6-k)
    out = [field(0)] * 7
    for k, ck in enumerate(c):
        term = [field(1)]
        for _ in range(k):
            term = _poly_mul(term, [field(1), r])  # (1 + r X)
        term = [field(0)] * (6 - k) + term
        for i, x in enumerate(term):
            out[i] = out[i] + ck * x
    assert out[6].is_zero()
    return QuinticModel.from_monomial(field, out[:6])
