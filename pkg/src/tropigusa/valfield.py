"""Exact arithmetic over discretely valued fields.

Two kinds of base field are supported, both with exact elements:

* ``padic(p)``: the rationals with the p-adic valuation,
* ``tadic()``:  rational functions in ``t`` over the rationals with the
  ``t``-adic valuation (``ord_t``).

Valuations land in :class:`ExtRat`, the rationals extended by ``+inf`` and a
``-inf`` flag used to make linear forms in valuations total.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InvalidField, ParseError

Rational = Union[int, Fraction]

__all__ = [
    "ExtRat",
    "INF",
    "NEG_INF",
    "ext_combine",
    "Poly",
    "RatFunc",
    "ValuedField",
    "ValuedScalar",
    "padic",
    "tadic",
    "val",
]


# ---------------------------------------------------------------------------
# Extended rationals


_NEG, _FIN, _POS = 0, 1, 2


@functools.total_ordering
class ExtRat:
    """An exact rational, ``+inf``, or the ``-inf`` flag.

    ``-inf`` only arises from a negative multiple of ``+inf``; it sorts below
    every rational so that any ``>= 0`` / ``> 0`` / ``== 0`` test on it fails.
    """

    __slots__ = ("_kind", "_value")

    def __init__(self, value: Rational | "ExtRat" = 0, *, _kind: int = _FIN):
        if isinstance(value, ExtRat):
            self._kind, self._value = value._kind, value._value
            return
        self._kind = _kind
        self._value = Fraction(value) if _kind == _FIN else None

    @property
    def is_finite(self) -> bool:
        return self._kind == _FIN

    @property
    def is_inf(self) -> bool:
        return self._kind == _POS

    @property
    def is_flag(self) -> bool:
        return self._kind == _NEG

    @property
    def value(self) -> Fraction:
        if self._kind != _FIN:
            raise ValueError(f"{self} has no finite value")
        return self._value

    def _key(self):
        return (self._kind, self._value if self._kind == _FIN else 0)

    @staticmethod
    def _coerce(other) -> "ExtRat":
        if isinstance(other, ExtRat):
            return other
        if isinstance(other, (int, Fraction)):
            return ExtRat(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_flag or other.is_flag:
            return NEG_INF
        if self.is_inf or other.is_inf:
            return INF
        return ExtRat(self._value + other._value)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ExtRat(other) - self

    def scale(self, c: Rational) -> "ExtRat":
        """``c * self`` with ``0 * inf = 0`` and ``c * inf = -inf flag`` for c < 0."""
        c = Fraction(c)
        if c == 0:
            return ExtRat(0)
        if self.is_finite:
            return ExtRat(c * self._value)
        if self.is_inf and c > 0:
            return INF
        return NEG_INF

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __repr__(self):
        return f"ExtRat({self})"

    def __str__(self):
        if self._kind == _POS:
            return "+inf"
        if self._kind == _NEG:
            return "-inf"
        return str(self._value)


INF = ExtRat(_kind=_POS)
NEG_INF = ExtRat(_kind=_NEG)


def ext_combine(terms: Iterable[tuple[Rational, ExtRat | Rational]]) -> ExtRat:
    """Evaluate ``sum(c * v)``; any ``c < 0`` against ``+inf`` yields the flag."""
    total = ExtRat(0)
    for c, v in terms:
        total = total + ExtRat._coerce(v).scale(c)
    return total


# ---------------------------------------------------------------------------
# Polynomials in t over Q


def _norm(x):
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    return _norm(Fraction(a) / b)


class Poly:
    """Dense polynomial in ``t`` with rational coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        # integral coefficients are kept as int: Bareiss on integer
        # polynomials then never touches Fraction
        c = [_norm(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x: Rational) -> "Poly":
        return cls((x,))

    @classmethod
    def monomial(cls, k: int, coeff: Rational = 1) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_const(self) -> bool:
        return len(self.c) <= 1

    @property
    def lead(self) -> Rational:
        return self.c[-1] if self.c else 0

    def ord_t(self) -> int:
        for k, x in enumerate(self.c):
            if x:
                return k
        raise ValueError("ord_t of the zero polynomial")

    def shift(self, k: int) -> "Poly":
        """Multiply by ``t**k`` (``k`` may be negative if divisible)."""
        if k >= 0:
            return Poly((0,) * k + self.c)
        assert all(x == 0 for x in self.c[:-k])
        return Poly(self.c[-k:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other: "Poly | Rational") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> "Poly":
        return Poly([-x for x in self.c])

    __radd__ = __add__

    def __sub__(self, other: "Poly | Rational") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly | Rational") -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not self.c or not other.c:
            return Poly()
        if len(other.c) == 1:
            s = other.c[0]
            return Poly([x * s for x in self.c])
        if len(self.c) == 1:
            s = self.c[0]
            return Poly([x * s for x in other.c])
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, s: Rational) -> "Poly":
        s = _norm(s)
        return Poly([x * s for x in self.c])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dq = len(r) - len(other.c)
        if dq < 0:
            return Poly(), self
        q = [0] * (dq + 1)
        lead = other.lead
        n = len(other.c)
        for k in range(dq, -1, -1):
            coef = _div(r[k + n - 1], lead)
            if coef:
                q[k] = coef
                for j, y in enumerate(other.c):
                    r[k + j] -= coef * y
        return Poly(q), Poly(r[: n - 1])

    def monic(self) -> "Poly":
        return self.scale(_div(1, self.lead)) if self.c else self

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x: Rational) -> Rational:
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def __repr__(self):
        return f"Poly({self.format()})"

    def format(self) -> str:
        if not self.c:
            return "0"
        parts: list[str] = []
        for k, x in enumerate(self.c):
            if x == 0:
                continue
            sign = "-" if x < 0 else "+"
            mag = abs(x)
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_ONE = Poly.const(1)


class RatFunc:
    """Quotient of two polynomials in ``t``.

    Reduction by the gcd is lazy: construction only folds constant or
    exactly dividing denominators and cancels common powers of ``t``.
    :meth:`reduced` gives the canonical form (monic denominator).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Rational, den: Poly | Rational = 1):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = Poly(), _ONE
        elif not den.is_const():
            k = min(num.ord_t(), den.ord_t())
            if k:
                num, den = num.shift(-k), den.shift(-k)
            if not den.is_const():
                q, r = num.divmod(den)
                if r.is_zero():
                    num, den = q, _ONE
        if den.is_const() and den != _ONE:
            num, den = num.scale(_div(1, den.c[0])), _ONE
        self.num, self.den = num, den

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc(x)
        if isinstance(x, Poly):
            return RatFunc(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def ord_t(self) -> int:
        return self.num.ord_t() - self.den.ord_t()

    def reduced(self) -> "RatFunc":
        g = self.num.gcd(self.den)
        num, den = self.num.divmod(g)[0], self.den.divmod(g)[0]
        s = _div(1, den.lead)
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = num.scale(s), den.scale(s)
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(1) / self ** (-k)
        out = RatFunc(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def format(self) -> str:
        r = self.reduced()
        if r.den == _ONE:
            return r.num.format()
        return f"({r.num.format()})/({r.den.format()})"

    def __repr__(self):
        return f"RatFunc({self.format()})"


# ---------------------------------------------------------------------------
# Fields and scalars


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _padic_val(x: Fraction, p: int) -> int:
    out = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        out += 1
    while d % p == 0:
        d //= p
        out -= 1
    return out


@dataclass(frozen=True)
class ValuedField:
    """``kind`` is ``"padic"`` (with prime ``p``) or ``"tadic"``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "padic":
            if not _is_prime(self.p):
                raise InvalidField(f"p-adic field needs a prime, got {self.p}")
        elif self.kind == "tadic":
            if self.p != 0:
                raise InvalidField("t-adic field takes no prime")
        else:
            raise InvalidField(f"unknown field kind {self.kind!r}")

    @property
    def residue_char(self) -> int:
        return self.p

    def __call__(self, x) -> "ValuedScalar":
        if isinstance(x, ValuedScalar):
            if x.field != self:
                raise ValueError(f"{x!r} lives in {x.field}, not {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "padic":
            if not isinstance(x, (int, Fraction)):
                raise TypeError(f"cannot coerce {x!r} into {self}")
            return ValuedScalar(Fraction(x), self)
        return ValuedScalar(RatFunc._coerce(x), self)

    @property
    def t(self) -> "ValuedScalar":
        if self.kind != "tadic":
            raise ParseError("the variable t only exists in the t-adic field")
        return ValuedScalar(RatFunc(Poly.monomial(1)), self)

    @property
    def uniformizer(self) -> "ValuedScalar":
        return self.t if self.kind == "tadic" else self(self.p)

    def zero(self) -> "ValuedScalar":
        return self(0)

    def one(self) -> "ValuedScalar":
        return self(1)

    def parse(self, text: str) -> "ValuedScalar":
        return _Parser(text, self).parse()

    def to_json(self) -> dict:
        if self.kind == "padic":
            return {"kind": "padic", "p": self.p}
        return {"kind": "tadic"}

    def __str__(self):
        return f"(Q, v_{self.p})" if self.kind == "padic" else "(Q(t), v_t)"


def padic(p: int) -> ValuedField:
    return ValuedField("padic", p)


def tadic() -> ValuedField:
    return ValuedField("tadic")


class ValuedScalar:
    """Immutable field element bound to its :class:`ValuedField`."""

    __slots__ = ("value", "field")

    def __init__(self, value: Fraction | RatFunc, field: ValuedField):
        self.value = value
        self.field = field

    def _other(self, other):
        if isinstance(other, ValuedScalar):
            if other.field != self.field:
                raise ValueError(f"mixed fields {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return other
        return NotImplemented

    def _wrap(self, value) -> "ValuedScalar":
        return ValuedScalar(value, self.field)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value / o)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if isinstance(self.value, RatFunc):
            return self._wrap(RatFunc._coerce(o) / self.value)
        return self._wrap(Fraction(o) / self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, k: int):
        if isinstance(self.value, RatFunc):
            return self._wrap(self.value ** k)
        return self._wrap(self.value ** k)

    def is_zero(self) -> bool:
        v = self.value
        return v.is_zero() if isinstance(v, RatFunc) else v == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.value - o) == 0 if isinstance(self.value, RatFunc) else self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def val(self) -> ExtRat:
        return val(self)

    def __str__(self):
        v = self.value
        return v.format() if isinstance(v, RatFunc) else str(v)

    def __repr__(self):
        return f"ValuedScalar({self}, {self.field})"


def val(x: ValuedScalar) -> ExtRat:
    """Valuation of ``x``; ``+inf`` for zero."""
    if x.is_zero():
        return INF
    if x.field.kind == "padic":
        return ExtRat(_padic_val(x.value, x.field.p))
    return ExtRat(x.value.ord_t())


# ---------------------------------------------------------------------------
# Literal parser


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


class _Parser:
    """Recursive descent over ``+ - * / ^ ( )``, integers and ``t``."""

    def __init__(self, text: str, field: ValuedField):
        if not isinstance(text, str):
            raise ParseError(f"scalar literal must be a string, got {text!r}")
        self.text = text
        self.field = field
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> list[str]:
        out, i = [], 0
        stripped = text.rstrip()
        while i < len(stripped):
            m = _TOKEN.match(stripped, i)
            if not m:
                raise ParseError(f"unexpected character in scalar literal {text!r} at {i}")
            out.append(m.group(m.lastindex))
            i = m.end()
        if not out:
            raise ParseError("empty scalar literal")
        return out

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise ParseError(f"unexpected end of scalar literal {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> ValuedScalar:
        value = self._expr()
        if self._peek() is not None:
            raise ParseError(f"trailing input in scalar literal {self.text!r}")
        return value

    def _expr(self):
        acc = self._term()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _term(self):
        acc = self._factor()
        while self._peek() in ("*", "/"):
            op = self._next()
            rhs = self._factor()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero in {self.text!r}")
                acc = acc / rhs
        return acc

    def _factor(self):
        tok = self._peek()
        if tok in ("+", "-"):
            self._next()
            inner = self._factor()
            return -inner if tok == "-" else inner
        base = self._primary()
        if self._peek() == "^":
            self._next()
            exp = self._next()
            if not exp.isdigit():
                raise ParseError(f"exponent must be a natural number in {self.text!r}")
            base = base ** int(exp)
        return base

    def _primary(self):
        tok = self._next()
        if tok.isdigit():
            return self.field(int(tok))
        if tok == "t":
            return self.field.t
        if tok == "(":
            inner = self._expr()
            if self._next() != ")":
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def format_scalar(x: ValuedScalar) -> str:
    return str(x)


def lcm_denominator(values: Sequence[Fraction]) -> int:
    out = 1
    for v in values:
        d = Fraction(v).denominator
        out = out * d // gcd(out, d)
    return out
