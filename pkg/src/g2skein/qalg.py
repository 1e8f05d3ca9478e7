"""Exact arithmetic in Q(q): Laurent polynomials, rational functions, quantum integers.

Polynomial gcd and division are delegated to FLINT's ``fmpq_poly``; everything
else (Laurent shifts, canonical forms, text I/O) lives here.

>>> str(qint(3))
'q^2 + 1 + q^-2'
>>> x = RatFunc(qint(2) * qint(7) * qint(12)) / (qint(4) * qint(6))
>>> x.eval_at(1)
Fraction(7, 1)
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

from flint import fmpq, fmpq_poly

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "ZeroDivision",
    "PoleError",
    "qint",
    "qfact",
    "qbinom",
    "bar",
    "eval_at",
    "parse_laurent",
    "parse_ratfunc",
]


class ZeroDivision(ZeroDivisionError):
    """Division by the zero rational function."""


class PoleError(ValueError):
    """Evaluation point is a pole (or q0 = 0)."""


def _to_rational(c) -> Rational:
    if isinstance(c, fmpq):
        c = Fraction(int(c.p), int(c.q))
    elif not isinstance(c, Rational):
        raise TypeError(f"exact rational expected, got {type(c).__name__}")
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _to_fmpq(c) -> fmpq:
    if isinstance(c, int):
        return fmpq(c)
    return fmpq(c.numerator, c.denominator)


def _poly_key(p: fmpq_poly) -> tuple:
    return tuple((int(c.p), int(c.q)) for c in p.coeffs())


def _strip(p: fmpq_poly) -> tuple[int, fmpq_poly]:
    """Split p = q^k * r with r(0) != 0. Zero maps to (0, 0)."""
    cs = p.coeffs()
    k = 0
    while k < len(cs) and cs[k] == 0:
        k += 1
    if k == len(cs):
        return 0, fmpq_poly()
    if k == 0:
        return 0, p
    return k, fmpq_poly(cs[k:])


class LaurentPoly:
    """Immutable Laurent polynomial in q with exact rational coefficients.

    Stored as ``q^val * poly`` where ``poly(0) != 0``; ``terms`` exposes the
    exponent -> coefficient mapping.
    """

    __slots__ = ("_val", "_poly", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        terms = {e: _to_rational(c) for e, c in (terms or {}).items() if c != 0}
        if not terms:
            self._val, self._poly = 0, fmpq_poly()
        else:
            lo, hi = min(terms), max(terms)
            cs = [_to_fmpq(terms.get(e, 0)) for e in range(lo, hi + 1)]
            self._val, self._poly = lo, fmpq_poly(cs)
        self._hash = None

    @classmethod
    def _raw(cls, val: int, poly: fmpq_poly) -> LaurentPoly:
        k, poly = _strip(poly)
        obj = cls.__new__(cls)
        obj._val = val + k if not poly.is_zero() else 0
        obj._poly = poly
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Rational) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Rational = 1) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (Rational, fmpq)):
            return cls.const(_to_rational(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    @property
    def terms(self) -> dict[int, Rational]:
        return {
            self._val + i: _to_rational(c)
            for i, c in enumerate(self._poly.coeffs())
            if c != 0
        }

    def is_zero(self) -> bool:
        return self._poly.is_zero()

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero polynomial")
        return self._val

    def degree(self) -> int:
        if self.is_zero():
            raise ValueError("degree of zero polynomial")
        return self._val + self._poly.degree()

    def is_monomial(self) -> bool:
        return self._poly.degree() == 0

    def __iter__(self) -> Iterator[tuple[int, Rational]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._val == other._val and self._poly == other._poly

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._val, _poly_key(self._poly)))
        return self._hash

    def _aligned(self, other: LaurentPoly) -> tuple[int, fmpq_poly, fmpq_poly]:
        lo = min(self._val, other._val)
        a = self._poly * fmpq_poly([0] * (self._val - lo) + [1])
        b = other._poly * fmpq_poly([0] * (other._val - lo) + [1])
        return lo, a, b

    def __add__(self, other) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lo, a, b = self._aligned(other)
        return LaurentPoly._raw(lo, a + b)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self._val, -self._poly)

    def __sub__(self, other) -> LaurentPoly:
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, RatFunc):
            return NotImplemented
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return LaurentPoly._raw(self._val + other._val, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            c = _to_rational(self._poly.coeffs()[0])
            return LaurentPoly.monomial(-self._val, Fraction(1) / c) ** (-n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Divide, raising ValueError unless the quotient is a Laurent polynomial."""
        other = LaurentPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivision("division by zero polynomial")
        quo, rem = divmod(self._poly, other._poly)
        if not rem.is_zero():
            raise ValueError("division is not exact")
        return LaurentPoly._raw(self._val - other._val, quo)

    def bar(self) -> LaurentPoly:
        """Substitute q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def eval_at(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0:
            raise PoleError("q0 = 0")
        v = self._poly(fmpq(q0.numerator, q0.denominator))
        return Fraction(int(v.p), int(v.q)) * q0 ** self._val

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self:
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if parts:
                parts.append(("- " if neg else "+ ") + body)
            else:
                parts.append(("-" if neg else "") + body)
        return " ".join(parts)


Scalar = Union[int, Fraction, LaurentPoly, "RatFunc"]


class RatFunc:
    """Canonical element of Q(q).

    Stored as ``num/den`` with ``den`` a polynomial in q with nonzero constant
    term and leading coefficient 1, and gcd(num, den) = 1. Equal values have
    identical representations.
    """

    __slots__ = ("_val", "_n", "_d", "_hash")

    def __init__(self, num=0, den=1):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivision("zero denominator")
        self._set(num._val - den._val, num._poly, den._poly)

    def _set(self, val: int, n: fmpq_poly, d: fmpq_poly) -> None:
        # n, d may carry factors of q; normalise them into val.
        kn, n = _strip(n)
        kd, d = _strip(d)
        self._hash = None
        if n.is_zero():
            self._val, self._n, self._d = 0, n, fmpq_poly([1])
            return
        if d.degree() > 0:
            g = n.gcd(d)
            if g.degree() > 0:
                n = n // g
                d = d // g
        lead = d.coeffs()[-1]
        if lead != 1:
            n = n / lead
            d = d / lead
        self._val, self._n, self._d = val + kn - kd, n, d

    @classmethod
    def _raw(cls, val: int, n: fmpq_poly, d: fmpq_poly) -> RatFunc:
        obj = cls.__new__(cls)
        obj._set(val, n, d)
        return obj

    @classmethod
    def coerce(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        return cls(LaurentPoly.coerce(x))

    @classmethod
    def q(cls, e: int = 1) -> RatFunc:
        return cls(LaurentPoly.monomial(e))

    @property
    def num(self) -> LaurentPoly:
        return LaurentPoly._raw(self._val, self._n)

    @property
    def den(self) -> LaurentPoly:
        return LaurentPoly._raw(0, self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_laurent(self) -> bool:
        return self._d.degree() == 0

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return self.num

    def canonicalize(self) -> RatFunc:
        return RatFunc._raw(self._val, self._n, self._d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self._val == other._val and self._n == other._n and self._d == other._d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._val, _poly_key(self._n), _poly_key(self._d)))
        return self._hash

    def __add__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        lo = min(self._val, other._val)
        a = self._n * fmpq_poly([0] * (self._val - lo) + [1])
        b = other._n * fmpq_poly([0] * (other._val - lo) + [1])
        if self._d == other._d:
            return RatFunc._raw(lo, a + b, self._d)
        return RatFunc._raw(lo, a * other._d + b * self._d, self._d * other._d)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        obj = RatFunc.__new__(RatFunc)
        obj._val, obj._n, obj._d, obj._hash = self._val, -self._n, self._d, None
        return obj

    def __sub__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc:
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc(0)
        return RatFunc._raw(self._val + other._val, self._n * other._n, self._d * other._d)

    __rmul__ = __mul__

    def inv(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivision("inverse of zero")
        return RatFunc._raw(-self._val, self._d, self._n)

    def __truediv__(self, other) -> RatFunc:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inv() ** (-n)
        out = RatFunc(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self) -> RatFunc:
        return RatFunc(self.num.bar(), self.den.bar())

    def eval_at(self, q0) -> Fraction:
        q0 = Fraction(q0)
        if q0 == 0:
            raise PoleError("q0 = 0")
        d = self.den.eval_at(q0)
        if d == 0:
            raise PoleError(f"pole at q = {q0}")
        return self.num.eval_at(q0) / d

    def __repr__(self) -> str:
        return f"RatFunc('{self}')"

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"


def qint(n: int) -> LaurentPoly:
    """Quantum integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n).

    >>> str(qint(2))
    'q + q^-1'
    """
    if n < 0:
        raise ValueError("qint requires n >= 0")
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


def qfact(n: int) -> LaurentPoly:
    if n < 0:
        raise ValueError("qfact requires n >= 0")
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def qbinom(m: int, n: int) -> LaurentPoly:
    if n < 0 or m < 0 or n > m:
        raise ValueError("qbinom requires 0 <= n <= m")
    return qfact(m).exact_div(qfact(n) * qfact(m - n))


def bar(f) -> RatFunc:
    return RatFunc.coerce(f).bar()


def eval_at(f, q0) -> Fraction:
    return RatFunc.coerce(f).eval_at(q0)


# -- text input -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\[\s*\d+\s*\])|(q)|(\^\s*[+-]?\d+)|([-+*/(){}]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"unexpected input at {text[pos:]!r}")
        out.append(m.group(0).strip().replace(" ", ""))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of input")
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        if not self.toks:
            raise ValueError("empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input {self.peek()!r}")
        return out

    def expr(self) -> RatFunc:
        if self.peek() in ("+", "-"):
            sign = self.take()
            out = self.term()
            if sign == "-":
                out = -out
        else:
            out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> RatFunc:
        out = self.power()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.power()
                out = out * rhs if tok == "*" else out / rhs
            elif tok is not None and (tok[0].isdigit() or tok[0] in "[q({"):
                out = out * self.power()
            else:
                return out

    def power(self) -> RatFunc:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok.startswith("^"):
            self.take()
            base = base ** int(tok[1:])
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        if tok.isdigit():
            return RatFunc(int(tok))
        if tok == "q":
            return RatFunc.q()
        if tok.startswith("["):
            return RatFunc(qint(int(tok[1:-1])))
        if tok in ("(", "{"):
            inner = self.expr()
            close = self.take()
            if close != {"(": ")", "{": "}"}[tok]:
                raise ValueError("unbalanced brackets")
            return inner
        if tok == "-":
            return -self.power()
        raise ValueError(f"unexpected token {tok!r}")


def parse_ratfunc(text: str) -> RatFunc:
    """Parse an expression in q, [n], rationals, + - * / ^ and brackets.

    >>> parse_ratfunc("[2][7][12]/([4][6])").eval_at(1)
    Fraction(7, 1)
    """
    return _Parser(text).parse()


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the rendered form ``c*q^e + ...`` (also accepting ``[n]``)."""
    return parse_ratfunc(text).as_laurent()
