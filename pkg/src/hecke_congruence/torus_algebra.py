"""The torus Hecke algebra Q[p, 1/p][X_*(T)^sigma], its Weyl dot action, and
polynomials in one variable ``x`` over it.

An element is a finite sum of terms c(p) * h_nu, where h_nu is the
characteristic function of p^nu T_c and c is a :class:`LaurentP`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InvarianceError, NotDivisibleError
from .laurent import LaurentP, parse_laurent
from .root_datum import BasedRootDatum, Cochar, LeviDatum, WeylElement, dot, vsub


class TorusAlgebraElement:
    """Immutable element of the torus algebra, canonical (no zero terms).

    Terms are kept sorted by exponent in descending lexicographic order; this
    order is used by both the text and JSON forms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Sequence[int], LaurentP] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Cochar, LaurentP] = {}
        for nu, c in items:
            nu = tuple(int(a) for a in nu)
            if not isinstance(c, LaurentP):
                c = LaurentP.const(c)
            acc[nu] = acc[nu] + c if nu in acc else c
        self._terms = tuple(sorted(((k, v) for k, v in acc.items() if v), reverse=True))

    @classmethod
    def h(cls, nu: Sequence[int], coeff: LaurentP | int | Fraction = 1) -> TorusAlgebraElement:
        return cls([(nu, coeff)])

    @classmethod
    def one(cls, rank: int) -> TorusAlgebraElement:
        return cls.h((0,) * rank)

    @classmethod
    def zero(cls) -> TorusAlgebraElement:
        return cls()

    @property
    def terms(self) -> tuple[tuple[Cochar, LaurentP], ...]:
        return self._terms

    @property
    def support(self) -> tuple[Cochar, ...]:
        return tuple(k for k, _ in self._terms)

    def coeff(self, nu: Sequence[int]) -> LaurentP:
        nu = tuple(nu)
        for k, v in self._terms:
            if k == nu:
                return v
        return LaurentP()

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and not any(self._terms[0][0]) and self._terms[0][1].is_one()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TorusAlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __add__(self, other: TorusAlgebraElement) -> TorusAlgebraElement:
        return TorusAlgebraElement(self._terms + other._terms)

    def __neg__(self) -> TorusAlgebraElement:
        return TorusAlgebraElement((k, -v) for k, v in self._terms)

    def __sub__(self, other: TorusAlgebraElement) -> TorusAlgebraElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (LaurentP, int, Fraction)):
            return TorusAlgebraElement((k, v * other) for k, v in self._terms)
        acc: dict[Cochar, LaurentP] = {}
        for a, c in self._terms:
            for b, e in other._terms:
                key = tuple(x + y for x, y in zip(a, b))
                acc[key] = acc[key] + c * e if key in acc else c * e
        return TorusAlgebraElement(acc)

    def __rmul__(self, other):
        return self * other

    def specialize(self, p: int | Fraction) -> TorusAlgebraElement:
        """Substitute a number for the symbol p in every coefficient."""
        return TorusAlgebraElement((k, LaurentP.const(v.specialize(p))) for k, v in self._terms)

    def is_sigma_invariant(self, d: BasedRootDatum) -> bool:
        return all(d.apply_sigma(k) == k for k in self.support)

    # -- text forms --------------------------------------------------------

    def _signed_terms(self) -> list[tuple[str, str]]:
        out = []
        for nu, c in self._terms:
            h = "h(" + ",".join(str(a) for a in nu) + ")"
            if len(c.terms) == 1:
                k, a = c.terms[0]
                sign = "-" if a < 0 else "+"
                mono = str(LaurentP.monomial(k, abs(a)))
                body = h if mono == "1" else f"{mono}*{h}"
            else:
                sign, body = "+", f"({c})*{h}"
            out.append((sign, body))
        return out

    def signed_str(self) -> tuple[str, str]:
        """(sign, body) with a single-term element's sign pulled out."""
        parts = self._signed_terms()
        if len(parts) == 1:
            return parts[0]
        return "+", _join(parts)

    def __str__(self) -> str:
        return _join(self._signed_terms())

    def __repr__(self) -> str:
        return f"TorusAlgebraElement({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"exponent": list(k), "coeff": str(v)} for k, v in self._terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> TorusAlgebraElement:
        try:
            return cls((tuple(t["exponent"]), parse_laurent(t["coeff"])) for t in data["terms"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed torus algebra element: {data!r}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def loads(cls, text: str) -> TorusAlgebraElement:
        return cls.from_json(json.loads(text))


def _join(parts: list[tuple[str, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------


class HeckePolynomial:
    """Polynomial in x with torus-algebra coefficients, lowest degree first."""

    __slots__ = ("rank", "_coeffs")

    def __init__(self, coefficients: Iterable[TorusAlgebraElement], rank: int):
        cs = list(coefficients)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.rank = rank
        self._coeffs = tuple(cs)

    @classmethod
    def x_power_minus(cls, m: int, c: TorusAlgebraElement, rank: int) -> HeckePolynomial:
        """x^m - c."""
        zero = TorusAlgebraElement()
        return cls([-c] + [zero] * (m - 1) + [TorusAlgebraElement.one(rank)], rank)

    @classmethod
    def one(cls, rank: int) -> HeckePolynomial:
        return cls([TorusAlgebraElement.one(rank)], rank)

    @property
    def coefficients(self) -> tuple[TorusAlgebraElement, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> TorusAlgebraElement:
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else TorusAlgebraElement()

    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1].is_one()

    def __eq__(self, other):
        if not isinstance(other, HeckePolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other: HeckePolynomial) -> HeckePolynomial:
        n = max(len(self._coeffs), len(other._coeffs))
        return HeckePolynomial(
            (self.coefficient(k) + other.coefficient(k) for k in range(n)), self.rank
        )

    def __neg__(self) -> HeckePolynomial:
        return HeckePolynomial((-c for c in self._coeffs), self.rank)

    def __sub__(self, other: HeckePolynomial) -> HeckePolynomial:
        return self + (-other)

    def __mul__(self, other: HeckePolynomial) -> HeckePolynomial:
        if not self._coeffs or not other._coeffs:
            return HeckePolynomial((), self.rank)
        out = [TorusAlgebraElement() for _ in range(len(self._coeffs) + len(other._coeffs) - 1)]
        for i, a in enumerate(self._coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = out[i + j] + a * b
        return HeckePolynomial(out, self.rank)

    def divmod(self, divisor: HeckePolynomial) -> tuple[HeckePolynomial, HeckePolynomial]:
        """Long division by a monic divisor."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        m = divisor.degree
        rem = list(self._coeffs)
        quot = [TorusAlgebraElement() for _ in range(max(len(rem) - m, 0))]
        for k in range(len(rem) - 1, m - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            quot[k - m] = c
            for j, b in enumerate(divisor._coeffs):
                rem[k - m + j] = rem[k - m + j] - c * b
        return HeckePolynomial(quot, self.rank), HeckePolynomial(rem[:m], self.rank)

    def exact_divide(self, divisor: HeckePolynomial) -> HeckePolynomial:
        """Quotient q with self == divisor * q, or NotDivisibleError."""
        q, r = self.divmod(divisor)
        if r.coefficients:
            raise NotDivisibleError(r.degree, r.coefficients[-1])
        return q

    def divides(self, other: HeckePolynomial) -> bool:
        return not other.divmod(self)[1].coefficients

    def evaluate(self, x: TorusAlgebraElement) -> TorusAlgebraElement:
        acc = TorusAlgebraElement()
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def specialize(self, p: int | Fraction) -> HeckePolynomial:
        return HeckePolynomial((c.specialize(p) for c in self._coeffs), self.rank)

    def __str__(self) -> str:
        parts = []
        for k in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[k]
            if c.is_zero():
                continue
            xk = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if c.is_one() and k > 0:
                parts.append(("+", xk))
                continue
            if (-c).is_one() and k > 0:
                parts.append(("-", xk))
                continue
            if len(c.terms) > 1:
                lead = c.terms[0][1].terms[-1][1]
                sign, c = ("-", -c) if lead < 0 else ("+", c)
                body = f"({c})"
            else:
                sign, body = c.signed_str()
            parts.append((sign, body if k == 0 else f"{body}*{xk}"))
        return _join(parts)

    def __repr__(self) -> str:
        return f"HeckePolynomial({str(self)!r})"

    def to_json(self) -> dict:
        return {"rank": self.rank, "coefficients": [c.to_json() for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> HeckePolynomial:
        try:
            return cls(
                (TorusAlgebraElement.from_json(c) for c in data["coefficients"]), int(data["rank"])
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed Hecke polynomial: {data!r}") from exc


_H_RE = re.compile(r"h\(([-\d,\s]*)\)")


def parse_element(text: str) -> TorusAlgebraElement:
    """Parse the text form produced by ``str(TorusAlgebraElement)``."""
    s = text.strip()
    if s == "0":
        return TorusAlgebraElement()
    terms = []
    pos = 0
    first = True
    term_re = re.compile(
        r"\s*(?P<sign>[+-])?\s*(?:\((?P<paren>[^()]*)\)\*|(?P<mono>[^h()\s][^h()]*?)\*)?h\((?P<nu>[-\d,\s]*)\)\s*"
    )
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse torus algebra element {text!r} at offset {pos}")
        first = False
        coeff_text = m.group("paren") or m.group("mono") or "1"
        c = parse_laurent(coeff_text)
        if m.group("sign") == "-":
            c = -c
        nu = tuple(int(a) for a in m.group("nu").split(",") if a.strip())
        terms.append((nu, c))
        pos = m.end()
    return TorusAlgebraElement(terms)


# ---------------------------------------------------------------------------
# dot action


def dot_act(
    d: BasedRootDatum,
    w: WeylElement,
    e: TorusAlgebraElement,
    rho2: Sequence[int] | None = None,
) -> TorusAlgebraElement:
    """w . h_nu = p^{<rho, nu - w(nu)>} h_{w(nu)}, extended linearly.

    ``rho2`` is twice the half-sum used in the exponent; it defaults to that of
    ``d`` and may be replaced by the one of a Levi subgroup.
    """
    if not d.commutes_with_sigma(w):
        raise ValueError(f"Weyl element {w.name} does not commute with sigma")
    rho2 = d.two_rho if rho2 is None else tuple(rho2)
    out = []
    for nu, c in e.terms:
        image = w(nu)
        twice = dot(rho2, vsub(nu, image))
        if twice % 2:
            raise ArithmeticError(f"half-integral dot exponent for {list(nu)} under {w.name}")
        out.append((image, c.shift(twice // 2)))
    return TorusAlgebraElement(out)


def invariance_witness(
    d: BasedRootDatum,
    e: TorusAlgebraElement,
    levi: LeviDatum | None = None,
    elements: Iterable[WeylElement] | None = None,
    rho2: Sequence[int] | None = None,
) -> WeylElement | None:
    """First Weyl element (of the given list, else the generators of W_M^sigma)
    that moves ``e`` under the dot action, or None."""
    if elements is None:
        levi = d.full_levi if levi is None else levi
        elements = levi.relative_simple_reflections
    for w in elements:
        if dot_act(d, w, e, rho2) != e:
            return w
    return None


def is_dot_invariant(
    d: BasedRootDatum,
    e: TorusAlgebraElement,
    levi: LeviDatum | None = None,
    elements: Iterable[WeylElement] | None = None,
) -> bool:
    return invariance_witness(d, e, levi, elements) is None


def assert_dot_invariant(
    d: BasedRootDatum, poly: HeckePolynomial, levi: LeviDatum | None = None
) -> None:
    """Raise InvarianceError naming the first non-invariant coefficient."""
    for k, c in enumerate(poly.coefficients):
        w = invariance_witness(d, c, levi)
        if w is not None:
            raise InvarianceError(k, w.name)
