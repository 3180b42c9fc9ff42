"""Unramified sigma-conjugacy classes: Newton points, Kottwitz invariants, the
dominance order, enumeration of B(G, upsilon)_unr, dimensions and Hodge-Newton
decomposability."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import Matrix as SymMatrix, Rational

from .errors import EnumerationError
from .hecke import normalize_mu
from .lattice import coinvariants, fundamental_group, in_sublattice, sigma_minus_one_generators
from .reports import Report
from .root_datum import (
    BasedRootDatum,
    Cochar,
    LeviDatum,
    RatCochar,
    as_fractions,
    neg,
    vsub,
)

UPSILON = "sigma-mu-inverse"
MU_INVERSE = "mu-inverse"
CONVENTIONS = (UPSILON, MU_INVERSE)


def upsilon(d: BasedRootDatum, mu: Sequence[int], convention: str = UPSILON) -> Cochar:
    """sigma(mu^{-1}) by default; plain mu^{-1} under the alternative convention."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    inv = neg(mu)
    return d.apply_sigma(inv) if convention == UPSILON else inv


def upsilon_bar(d: BasedRootDatum, mu: Sequence[int], convention: str = UPSILON) -> RatCochar:
    """sigma-average of the dominant representative of upsilon."""
    return d.sigma_average(d.dominant_rep(upsilon(d, mu, convention)))


def newton_point(d: BasedRootDatum, tau: Sequence[int]) -> RatCochar:
    return d.dominant_rep(d.sigma_average(tau))


@lru_cache(maxsize=None)
def _cartan_inverse(d: BasedRootDatum) -> tuple[tuple[Fraction, ...], ...]:
    inv = SymMatrix(d.cartan_matrix).applyfunc(Rational).inv()
    return tuple(
        tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(inv.rows)
    )


def coroot_coefficients(d: BasedRootDatum, x: Sequence) -> tuple[Fraction, ...] | None:
    """Rational c with x = sum c_j alpha_j^vee, or None if x is not in their span."""
    x = as_fractions(x)
    if not d.semisimple_rank:
        return () if not any(x) else None
    pairings = [sum((Fraction(a) * b for a, b in zip(r, x)), Fraction(0)) for r in d.simple_roots]
    inv = _cartan_inverse(d)
    # C[i][j] = <alpha_i, alpha_j^vee>, so the pairings are C c
    c = tuple(sum((inv[j][i] * pairings[i] for i in d.indices), Fraction(0)) for j in d.indices)
    back = [Fraction(0)] * d.rank
    for cj, cor in zip(c, d.simple_coroots):
        for k, a in enumerate(cor):
            back[k] += cj * a
    return c if tuple(back) == x else None


def newton_leq(d: BasedRootDatum, nu1: Sequence, nu2: Sequence) -> bool:
    """nu1 <= nu2: the difference is a nonnegative rational combination of simple coroots."""
    c = coroot_coefficients(d, vsub(as_fractions(nu2), as_fractions(nu1)))
    return c is not None and all(a >= 0 for a in c)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SigmaClass:
    """An unramified class [p^tau] in B(G, upsilon)."""

    index: int
    tau: Cochar
    coinvariant: tuple[int, ...]
    newton: RatCochar
    kottwitz: tuple[int, ...]
    levi: LeviDatum
    is_ordinary: bool
    is_basic: bool

    @property
    def label(self) -> str:
        if self.is_ordinary:
            return "ordinary"
        return "basic" if self.is_basic else f"class {self.index}"

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "tau": list(self.tau),
            "tau_sigma": list(self.coinvariant),
            "newton": [str(a) for a in self.newton],
            "kottwitz": list(self.kottwitz),
            "levi": list(self.levi.indices),
            "is_ordinary": self.is_ordinary,
            "is_basic": self.is_basic,
        }


def box_bound(d: BasedRootDatum, ups: Sequence[int], scale: int = 1) -> int:
    return max(1, d.rank * max(abs(a) for a in ups) * d.sigma_order) * scale


def _class_dominant(d: BasedRootDatum, x: Sequence[int]) -> bool:
    # <alpha, Norm(x)> >= 0 for all alpha, i.e. the sigma-average is dominant
    return d.is_dominant(d.sigma_norm(x, 0, d.sigma_order))


def _prefilter(d, coinv, pi1, target, ranges) -> list[tuple[int, ...]]:
    """Box points whose lift has Kottwitz class ``target`` and dominant
    sigma-norm, in itertools.product order. Both conditions are linear, so the
    whole box is screened at once; survivors are re-checked exactly."""
    axes = [np.arange(r.start, r.stop, dtype=np.int64) for r in ranges]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))
    x = grid @ np.array(coinv.section, dtype=np.int64).reshape(len(axes), d.rank)
    y = x @ np.array(pi1.projection, dtype=np.int64).reshape(-1, d.rank).T
    f = pi1.free_rank
    keep = np.all(y[:, :f] == np.array(target[:f], dtype=np.int64), axis=1)
    if pi1.torsion:
        tors = np.array(pi1.torsion, dtype=np.int64)
        keep &= np.all(y[:, f:] % tors == np.array(target[f:], dtype=np.int64), axis=1)
    if d.simple_roots:
        norm = np.zeros((d.rank, d.rank), dtype=np.int64)
        step = np.eye(d.rank, dtype=np.int64)
        sigma = np.array(d.sigma, dtype=np.int64)
        for _ in range(d.sigma_order):
            norm += step
            step = sigma @ step
        pairings = x @ norm.T @ np.array(d.simple_roots, dtype=np.int64).T
        keep &= np.all(pairings >= 0, axis=1)
    out = []
    for row in grid[keep]:
        coords = tuple(int(c) for c in row)
        xs = coinv.lift(coords)
        if pi1.class_of(xs) == target and _class_dominant(d, xs):
            out.append(coords)
    return out


@lru_cache(maxsize=128)
def _enumerate(
    d: BasedRootDatum, mu: Cochar, convention: str, box_scale: int
) -> tuple[SigmaClass, ...]:
    ups = upsilon(d, mu, convention)
    ups_dom = d.dominant_rep(ups)
    ubar = d.sigma_average(ups_dom)
    coinv = coinvariants(d)
    pi1 = fundamental_group(d)
    target = pi1.class_of(ups)
    bound = box_bound(d, ups, box_scale)

    ranges = []
    for row in coinv.projection[: coinv.free_rank]:
        b = sum(abs(a) for a in row) * bound
        ranges.append(range(-b, b + 1))
    ranges += [range(t) for t in coinv.torsion]

    # representatives from W.upsilon, keyed by coinvariant class
    orbit_reps: dict[tuple[int, ...], Cochar] = {}
    for lam in d.weyl_orbit(ups):
        key = coinv.class_of(lam)
        if key not in orbit_reps or lam > orbit_reps[key]:
            orbit_reps[key] = lam

    wsig = d.sigma_fixed_weyl_group
    found, seen = [], set()
    for coords in _prefilter(d, coinv, pi1, target, ranges):
        x = coinv.lift(coords)
        nu = d.sigma_average(x)
        if not newton_leq(d, nu, ubar):
            continue
        # a dominant class is unique in its W^sigma-orbit up to torsion; dedup the rest
        if coords in seen:
            continue
        seen.update(coinv.class_of(w(x)) for w in wsig)
        tau = orbit_reps.get(tuple(coords), x)
        found.append((tuple(coords), tau, nu))

    ordinary = [f for f in found if f[2] == ubar]
    if len(ordinary) != 1:
        raise EnumerationError(f"expected exactly one ordinary class, found {len(ordinary)}")
    found.sort(key=lambda f: (f[2] != ubar, -d.pair_rho(f[2]), tuple(-c for c in f[0])))
    out = []
    for i, (coords, tau, nu) in enumerate(found):
        out.append(
            SigmaClass(
                index=i,
                tau=tau,
                coinvariant=coords,
                newton=nu,
                kottwitz=pi1.class_of(tau),
                levi=d.levi_centralizer(nu),
                is_ordinary=nu == ubar,
                is_basic=d.is_central(nu),
            )
        )
    return tuple(out)


def enumerate_unramified(
    d: BasedRootDatum, mu: Sequence[int], convention: str = UPSILON, box_scale: int = 1
) -> tuple[SigmaClass, ...]:
    """All unramified classes in B(G, upsilon), ordinary first, then by
    decreasing <rho, nu>.

    Classes are parametrized by elements of X_*(T)_sigma whose sigma-average is
    dominant; each W^sigma-orbit of such elements has exactly one, so no further
    deduplication is needed.
    """
    upsilon(d, mu, convention)
    return _enumerate(d, normalize_mu(d, mu), convention, box_scale)


def select_class(classes: Sequence[SigmaClass], which: str | int) -> SigmaClass:
    """Pick ``ordinary``, ``basic`` or a numeric index."""
    if isinstance(which, str) and which in ("ordinary", "basic"):
        attr = "is_ordinary" if which == "ordinary" else "is_basic"
        hits = [c for c in classes if getattr(c, attr)]
        if not hits:
            raise LookupError(f"no {which} class among the unramified classes")
        return hits[0]
    try:
        k = int(which)
    except ValueError:
        raise LookupError(f"unknown class selector {which!r}") from None
    if not 0 <= k < len(classes):
        raise LookupError(f"class index {k} out of range (0..{len(classes) - 1})")
    return classes[k]


# ---------------------------------------------------------------------------
# dimensions


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {x}")
    return int(x)


def adlv_dimension(d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass) -> int:
    """<rho, mu - nu>; the defect term vanishes for unramified classes."""
    mu = normalize_mu(d, mu)
    return _integral(d.pair_rho(mu) - d.pair_rho(cls.newton), "ADLV dimension")


def newton_stratum_dimension(d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass) -> int:
    """<rho, mu + nu>."""
    mu = normalize_mu(d, mu)
    return _integral(d.pair_rho(mu) + d.pair_rho(cls.newton), "Newton stratum dimension")


# ---------------------------------------------------------------------------
# Hodge-Newton decomposability


class HNVerdict(enum.Enum):
    DECOMPOSABLE = "decomposable"
    INDECOMPOSABLE = "indecomposable"
    TRIVIAL = "trivial (M = G)"


def hn_decomposable(
    d: BasedRootDatum,
    mu: Sequence[int],
    cls: SigmaClass,
    levi: LeviDatum | None = None,
    proper_only: bool = True,
    convention: str = UPSILON,
) -> HNVerdict:
    """Compare the images of tau and of the dominant upsilon in pi_1(M)_Gamma."""
    mu = normalize_mu(d, mu)
    levi = cls.levi if levi is None else levi
    if not levi.contains(cls.levi):
        raise ValueError(
            f"Levi {list(levi.indices)} does not contain the Newton centralizer "
            f"{list(cls.levi.indices)}"
        )
    if not levi.is_sigma_stable:
        raise ValueError(f"Levi {list(levi.indices)} is not sigma-stable")
    if proper_only and levi.is_full:
        return HNVerdict.TRIVIAL
    q = fundamental_group(d, levi)
    ups = d.dominant_rep(upsilon(d, mu, convention))
    same = q.class_of(cls.tau) == q.class_of(ups)
    return HNVerdict.DECOMPOSABLE if same else HNVerdict.INDECOMPOSABLE


def check_hodge_newton_condition(
    d: BasedRootDatum,
    mu: Sequence[int],
    proper_only: bool = True,
    convention: str = UPSILON,
) -> Report:
    """Every unramified class is Hodge-Newton decomposable for its own Newton
    centralizer. Verdicts with M = G are listed separately as vacuous."""
    classes = enumerate_unramified(d, mu, convention)
    r = Report("hodge-newton condition")
    rows = []
    for c in classes:
        v = hn_decomposable(d, mu, c, None, proper_only, convention)
        rows.append({"class": c.index, "label": c.label, "levi": list(c.levi.indices), "verdict": v.value})
    bad = [row for row in rows if row["verdict"] == HNVerdict.INDECOMPOSABLE.value]
    trivial = [row["class"] for row in rows if row["verdict"] == HNVerdict.TRIVIAL.value]
    r.data.update(proper_only=proper_only, convention=convention, verdicts=rows, trivial_classes=trivial)
    r.add(
        "each class decomposable for its Newton centralizer",
        not bad,
        "" if not bad else "indecomposable: " + ", ".join(str(row["class"]) for row in bad),
    )
    return r


def class_report(
    d: BasedRootDatum, mu: Sequence[int], convention: str = UPSILON, box_scale: int = 1
) -> Report:
    """Enumeration with the membership conditions re-checked independently."""
    mu = normalize_mu(d, mu)
    classes = enumerate_unramified(d, mu, convention, box_scale)
    ups = upsilon(d, mu, convention)
    ubar = upsilon_bar(d, mu, convention)
    pi1 = fundamental_group(d)
    gens = sigma_minus_one_generators(d)
    r = Report("unramified classes")
    rows = []
    for c in classes:
        row = c.to_dict()
        row["adlv_dimension"] = adlv_dimension(d, mu, c)
        row["newton_stratum_dimension"] = newton_stratum_dimension(d, mu, c)
        rows.append(row)
        r.add(f"class {c.index}: Kottwitz invariant matches upsilon", pi1.class_of(c.tau) == pi1.class_of(ups))
        r.add(f"class {c.index}: Newton point bounded by upsilon-bar", newton_leq(d, c.newton, ubar))
        r.add(f"class {c.index}: Newton point equals sigma-average of tau", newton_point(d, c.tau) == c.newton)
        r.add(
            f"class {c.index}: dimensions sum to 2<rho,mu>",
            row["adlv_dimension"] + row["newton_stratum_dimension"] == 2 * d.pair_rho(mu),
        )
        r.add(
            f"class {c.index}: dimensions nonnegative",
            row["adlv_dimension"] >= 0 and row["newton_stratum_dimension"] >= 0,
        )
    ords = [c for c in classes if c.is_ordinary]
    r.add("exactly one ordinary class", len(ords) == 1)
    if ords:
        r.add("ordinary class has ADLV dimension 0", adlv_dimension(d, mu, ords[0]) == 0)
        r.add(
            "ordinary class is maximal",
            all(newton_leq(d, c.newton, ords[0].newton) for c in classes),
        )
    distinct = all(
        not in_sublattice(gens, vsub(a.tau, b.tau))[0]
        for a, b in itertools.combinations(classes, 2)
    )
    r.add("representatives pairwise distinct in X_*(T)_sigma", distinct)
    r.data.update(
        mu=list(mu),
        upsilon=list(ups),
        upsilon_bar=[str(a) for a in ubar],
        convention=convention,
        box_bound=box_bound(d, ups, box_scale),
        classes=rows,
    )
    return r

