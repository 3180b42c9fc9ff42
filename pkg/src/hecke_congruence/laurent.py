"""Laurent polynomials in a formal symbol ``p`` with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentP:
    """Immutable Laurent polynomial sum_k c_k p^k, c_k in Q.

    Stored as a sorted tuple of (exponent, coefficient) pairs with no zero
    coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for k, c in items:
            if not isinstance(k, int) or isinstance(k, bool):
                raise TypeError(f"exponent must be an int, got {k!r}")
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c != 0))

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> LaurentP:
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: Scalar) -> LaurentP:
        return cls({0: c})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == ((0, Fraction(1)),)

    def coeff(self, k: int) -> Fraction:
        for e, c in self._terms:
            if e == k:
                return c
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentP.const(other)
        if not isinstance(other, LaurentP):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @staticmethod
    def _coerce(x) -> LaurentP:
        if isinstance(x, LaurentP):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return LaurentP.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")

    def __add__(self, other):
        other = self._coerce(other)
        return LaurentP(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentP((k, -c) for k, c in self._terms)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[int, Fraction] = {}
        for a, c in self._terms:
            for b, d in other._terms:
                acc[a + b] = acc.get(a + b, Fraction(0)) + c * d
        return LaurentP(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (k, c), = self._terms
            return LaurentP.monomial(-k * -n, Fraction(1) / c ** -n)
        out = LaurentP.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> LaurentP:
        """Multiply by p^k."""
        return LaurentP((e + k, c) for e, c in self._terms)

    def specialize(self, p: Scalar) -> Fraction:
        p = Fraction(p)
        if p == 0 and any(k < 0 for k, _ in self._terms):
            raise ZeroDivisionError("negative power of p at p = 0")
        return sum((c * p**k for k, c in self._terms), Fraction(0))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in reversed(self._terms):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "p" if k == 1 else f"p^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentP({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> LaurentP:
        return parse_laurent(text)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*(?P<p1>p(?:\^(?P<e1>-?\d+))?))?
          |
          (?P<p2>p(?:\^(?P<e2>-?\d+))?)
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentP:
    """Inverse of ``str(LaurentP)``; also accepts unspaced input such as ``2*p^3-1``."""
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos, terms, first = 0, [], True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at offset {pos}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("p1"):
                k = int(m.group("e1")) if m.group("e1") else 1
            else:
                k = 0
        else:
            c = Fraction(1)
            k = int(m.group("e2")) if m.group("e2") else 1
        terms.append((k, sign * c))
        pos = m.end()
    return LaurentP(terms)


ZERO = LaurentP()
ONE = LaurentP.const(1)
P = LaurentP.monomial(1)
