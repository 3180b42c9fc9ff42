"""The Hecke polynomial of a minuscule cocharacter, built from its Frobenius-orbit
factorization in the torus model."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvarianceError, NotDivisibleError
from .laurent import LaurentP
from .reports import Report
from .root_datum import BasedRootDatum, Cochar, LeviDatum, neg, vsub
from .torus_algebra import (
    HeckePolynomial,
    TorusAlgebraElement,
    assert_dot_invariant,
    invariance_witness,
)


@dataclass(frozen=True)
class OrbitFactor:
    """x^size - p^exponent h_norm for one sigma^n-orbit of weights."""

    rep: Cochar
    members: tuple[Cochar, ...]
    size: int
    exponent: int
    norm: Cochar
    factor: HeckePolynomial

    def to_dict(self) -> dict:
        return {
            "rep": list(self.rep),
            "members": [list(v) for v in self.members],
            "size": self.size,
            "exponent": self.exponent,
            "norm": list(self.norm),
            "factor": str(self.factor),
        }


def normalize_mu(d: BasedRootDatum, mu: Sequence[int]) -> Cochar:
    """Validate length and minusculeness; return the dominant representative."""
    if len(mu) != d.rank:
        raise ValueError(f"mu has length {len(mu)}, expected {d.rank}")
    d.check_minuscule(mu)
    return d.dominant_rep(tuple(int(a) for a in mu))


def sigma_n_orbit(d: BasedRootDatum, nu: Sequence[int], n: int) -> tuple[Cochar, ...]:
    nu = tuple(nu)
    out = [nu]
    y = d.apply_sigma(nu, n)
    while y != nu:
        out.append(y)
        y = d.apply_sigma(y, n)
    return tuple(out)


def orbit_factor(d: BasedRootDatum, mu: Cochar, nu: Sequence[int], n: int) -> OrbitFactor:
    """The factor attached to the sigma^n-orbit of a weight ``nu`` of W.mu^{-1}."""
    members = sigma_n_orbit(d, nu, n)
    m = len(members)
    rep = max(members)
    e = n * m * d.pair_rho(vsub(mu, rep))
    if e.denominator != 1:
        raise ArithmeticError(f"non-integral orbit exponent {e} for {list(rep)}")
    norm = d.sigma_norm(rep, 1, n * m)
    c = TorusAlgebraElement.h(norm, LaurentP.monomial(int(e)))
    factor = HeckePolynomial.x_power_minus(m, c, d.rank)
    return OrbitFactor(rep, tuple(sorted(members, reverse=True)), m, int(e), norm, factor)


@lru_cache(maxsize=256)
def _orbit_factors(d: BasedRootDatum, mu: Cochar) -> tuple[OrbitFactor, ...]:
    n = d.reflex_degree(mu)
    remaining = set(d.weyl_orbit(neg(mu)))
    out = []
    while remaining:
        nu = max(remaining)
        f = orbit_factor(d, mu, nu, n)
        remaining.difference_update(f.members)
        out.append(f)
    return tuple(out)


def orbit_factors(d: BasedRootDatum, mu: Sequence[int]) -> tuple[OrbitFactor, ...]:
    """One factor per sigma^n-orbit of W.mu^{-1}, ordered by representative
    (lexicographically greatest first)."""
    return _orbit_factors(d, normalize_mu(d, mu))


def product(polys: Iterable[HeckePolynomial], rank: int) -> HeckePolynomial:
    out = HeckePolynomial.one(rank)
    for f in polys:
        out = out * f
    return out


@lru_cache(maxsize=256)
def _hecke_polynomial(d: BasedRootDatum, mu: Cochar) -> HeckePolynomial:
    return product((f.factor for f in _orbit_factors(d, mu)), d.rank)


def hecke_polynomial(d: BasedRootDatum, mu: Sequence[int]) -> HeckePolynomial:
    return _hecke_polynomial(d, normalize_mu(d, mu))


def satake_view(d: BasedRootDatum, value, levi: LeviDatum):
    """Return ``value`` unchanged after checking it is W_M^sigma dot-invariant.

    In the torus model the restriction from G to a Levi M is the inclusion of
    invariant subalgebras, so only the invariance has content.
    """
    if isinstance(value, TorusAlgebraElement):
        w = invariance_witness(d, value, levi)
        if w is not None:
            raise InvarianceError(0, w.name, f"element is not dot-invariant under {w.name}")
        return value
    assert_dot_invariant(d, value, levi)
    return value


def hecke_report(d: BasedRootDatum, mu: Sequence[int]) -> Report:
    """Structural checks on the Hecke polynomial of one datum."""
    mu = normalize_mu(d, mu)
    factors = _orbit_factors(d, mu)
    poly = _hecke_polynomial(d, mu)
    orbit = d.weyl_orbit(neg(mu))
    r = Report("hecke")
    r.data.update(
        mu=list(mu),
        reflex_degree=d.reflex_degree(mu),
        polynomial=str(poly),
        polynomial_json=poly.to_json(),
        factors=[f.to_dict() for f in factors],
    )
    r.add("degree equals orbit size", poly.degree == len(orbit), f"{poly.degree} vs {len(orbit)}")
    r.add("monic", poly.is_monic())
    r.add("orbit sizes sum to degree", sum(f.size for f in factors) == poly.degree)
    r.add(
        "orbit norms sigma-invariant",
        all(d.apply_sigma(f.norm) == f.norm for f in factors),
    )
    r.add("orbit exponents nonnegative", all(f.exponent >= 0 for f in factors))
    bad = [
        (k, w.name)
        for k, c in enumerate(poly.coefficients)
        if (w := invariance_witness(d, c)) is not None
    ]
    r.add(
        "coefficients dot-invariant under W^sigma",
        not bad,
        "" if not bad else f"coefficient x^{bad[0][0]} moved by {bad[0][1]}",
    )
    return r


def dominant_weight_factor_check(d: BasedRootDatum, mu: Sequence[int]) -> Report:
    """The factor attached to the dominant weight of W.mu^{-1} divides H and has
    coefficients invariant under the Levi centralizing its norm."""
    mu = normalize_mu(d, mu)
    n = d.reflex_degree(mu)
    lam = d.dominant_rep(neg(mu))
    f = orbit_factor(d, mu, lam, n)
    poly = _hecke_polynomial(d, mu)
    r = Report("dominant-weight factor")
    norm0 = d.sigma_norm(lam, 0, n * f.size)
    levi = d.levi_centralizer(norm0)
    r.data.update(
        weight=list(lam),
        period=f.size,
        norm=list(f.norm),
        exponent=f.exponent,
        factor=str(f.factor),
        levi=list(levi.indices),
    )
    r.add("norm independent of starting index", norm0 == f.norm)
    try:
        q = poly.exact_divide(f.factor)
        r.add("dominant-weight factor divides H", True, f"quotient {q}")
    except NotDivisibleError as exc:
        r.add("dominant-weight factor divides H", False, str(exc))
    try:
        assert_dot_invariant(d, f.factor, levi)
        r.add("factor invariant under its centralizer Levi", True)
    except InvarianceError as exc:
        r.add("factor invariant under its centralizer Levi", False, str(exc))
    if f.size == 1:
        r.add("linear factor has exponent zero", f.exponent == 0, f"exponent {f.exponent}")
    return r


def exponent_of(d: BasedRootDatum, mu: Cochar, nu: Sequence[int], k: int) -> int:
    e = k * d.pair_rho(vsub(mu, nu))
    if e.denominator != 1:
        raise ArithmeticError(f"non-integral exponent {e}")
    return int(e)

