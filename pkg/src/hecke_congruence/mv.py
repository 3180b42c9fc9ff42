"""Labels of irreducible components for minuscule mu: the weights of W.upsilon
congruent to tau modulo (sigma - 1)X_*(T), their epsilon values, and the
minimal dominant correction nu_b."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import EnumerationError
from .hecke import normalize_mu, sigma_n_orbit
from .isocrystal import UPSILON, SigmaClass, enumerate_unramified, upsilon
from .lattice import coinvariants, in_sublattice, sigma_minus_one_generators
from .reports import Report
from .root_datum import BasedRootDatum, Cochar, vadd, vsub


@dataclass(frozen=True)
class MinimalNu:
    nu: Cochar
    pairings: tuple[int, ...]
    tight_orbits: tuple[tuple[int, int], ...]  # (orbit start index, index achieving equality)
    box: int
    widened: bool


@dataclass(frozen=True)
class MVLabel:
    lam: Cochar
    epsilon: tuple[int, ...]
    nu_b: Cochar
    tau_b: Cochar
    orbit_period: int
    certificate: MinimalNu

    def to_dict(self) -> dict:
        return {
            "lambda": list(self.lam),
            "epsilon": list(self.epsilon),
            "nu_b": list(self.nu_b),
            "tau_b": list(self.tau_b),
            "orbit_period": self.orbit_period,
            "nu_b_pairings": list(self.certificate.pairings),
        }


def epsilon(d: BasedRootDatum, lam: Sequence[int]) -> tuple[int, ...]:
    """max(0, -<lambda, alpha_i>) for each simple root."""
    return tuple(max(0, -v) for v in d.pairings(lam))


def _root_columns(d: BasedRootDatum) -> tuple[tuple[int, ...], ...]:
    # columns of the (simple roots) x rank pairing matrix
    return tuple(tuple(r[k] for r in d.simple_roots) for k in range(d.rank))


def lift_pairings(d: BasedRootDatum, target: Sequence[int]) -> Cochar | None:
    """An integral nu with <alpha_i, nu> = target_i, or None if there is none."""
    ok, coeffs = in_sublattice(_root_columns(d), tuple(target))
    return tuple(coeffs) if ok else None


def _feasible(d: BasedRootDatum, lam: Cochar, eps: tuple[int, ...], target) -> Cochar | None:
    if any(t < e for t, e in zip(target, eps)):
        return None
    nu = lift_pairings(d, target)
    if nu is None:
        return None
    if not d.is_dominant(vadd(lam, vsub(nu, d.apply_sigma(nu)))):
        return None
    return nu


def _tight_orbits(d: BasedRootDatum, pairings, eps) -> tuple[tuple[int, int], ...] | None:
    out = []
    for orbit in d.sigma_orbits():
        hit = next((j for j in orbit if pairings[j] == eps[j]), None)
        if hit is None:
            return None
        out.append((orbit[0], hit))
    return tuple(out)


def minimal_nu(d: BasedRootDatum, lam: Sequence[int], eps: Sequence[int] | None = None) -> MinimalNu:
    """Componentwise-minimal pairing vector of a dominant nu with
    lambda + nu - sigma(nu) dominant and <alpha, nu> >= epsilon_alpha.

    nu is determined by its pairings up to X_*(Z_G). The search runs over the
    box 0 <= <alpha_i, nu> <= max(2, max eps + 1), widened once by doubling.
    """
    lam = tuple(lam)
    eps = epsilon(d, lam) if eps is None else tuple(eps)
    s = d.semisimple_rank
    box = max(2, max(eps, default=0) + 1)
    for widened in (False, True):
        feasible = {}
        for target in itertools.product(range(box + 1), repeat=s):
            nu = _feasible(d, lam, eps, target)
            if nu is not None:
                feasible[target] = nu
        if feasible:
            low = tuple(min(t[i] for t in feasible) for i in range(s))
            if low not in feasible:
                raise EnumerationError(
                    f"no componentwise-minimal nu for lambda {list(lam)}: "
                    f"the pointwise minimum {list(low)} is infeasible"
                )
            tight = _tight_orbits(d, low, eps)
            if tight is None:
                raise EnumerationError(f"minimal nu for {list(lam)} fails the orbit equality test")
            return MinimalNu(feasible[low], low, tight, box, widened)
        box *= 2
    raise EnumerationError(f"no feasible nu for lambda {list(lam)} within box {box // 2}")


def mv_set(
    d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass, convention: str = UPSILON
) -> tuple[MVLabel, ...]:
    """Weights lambda of W.upsilon with lambda - tau in (sigma - 1)X_*(T),
    lexicographically greatest first."""
    mu = normalize_mu(d, mu)
    n = d.reflex_degree(mu)
    gens = sigma_minus_one_generators(d)
    out = []
    for lam in sorted(d.weyl_orbit(upsilon(d, mu, convention)), reverse=True):
        if not in_sublattice(gens, vsub(lam, cls.tau))[0]:
            continue
        eps = epsilon(d, lam)
        cert = minimal_nu(d, lam, eps)
        nu = cert.nu
        tau_b = vadd(lam, vsub(nu, d.apply_sigma(nu)))
        period = len(sigma_n_orbit(d, lam, n))
        out.append(MVLabel(lam, eps, nu, tau_b, period, cert))
    if not out:
        raise EnumerationError(f"class {cls.index} has no labels in W.upsilon")
    return tuple(out)


def label_checks(d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass, label: MVLabel) -> Report:
    """The structural properties every label must satisfy."""
    mu = normalize_mu(d, mu)
    n = d.reflex_degree(mu)
    r = Report("label")
    tag = f"label {list(label.lam)}"
    pr = d.pairings(label.nu_b)
    r.add(f"{tag}: epsilon closed form", label.epsilon == tuple(max(0, -v) for v in d.pairings(label.lam)))
    r.add(f"{tag}: nu_b dominant", d.is_dominant(label.nu_b))
    r.add(f"{tag}: tau_b dominant", d.is_dominant(label.tau_b))
    r.add(f"{tag}: nu_b bounds epsilon", all(a >= e for a, e in zip(pr, label.epsilon)))
    r.add(f"{tag}: orbit equality certificate", _tight_orbits(d, pr, label.epsilon) is not None)
    k = n * label.orbit_period
    r.add(
        f"{tag}: sigma^{k}(nu_b) - nu_b central",
        d.is_central(vsub(d.apply_sigma(label.nu_b, k), label.nu_b)),
    )
    r.add(
        f"{tag}: tau_b congruent to tau",
        in_sublattice(sigma_minus_one_generators(d), vsub(label.tau_b, cls.tau))[0],
    )
    return r


def orbit_period_lcm(labels: Sequence[MVLabel]) -> int:
    return math.lcm(*(l.orbit_period for l in labels))


def component_count(
    d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass, convention: str = UPSILON
) -> dict:
    labels = mv_set(d, mu, cls, convention)
    return {
        "labels": len(labels),
        "periods": [l.orbit_period for l in labels],
        "m": orbit_period_lcm(labels),
        "hyperspecial_factor": "one hyperspecial class per component family (not enumerated)",
    }


def orbit_partition(d: BasedRootDatum, mu: Sequence[int], convention: str = UPSILON) -> dict:
    """Which class (if any) each weight of W.upsilon is a label of.

    A weight whose coinvariant class is a W^sigma-translate of an enumerated
    class, but not the class itself, is reported as a conjugate.
    """
    mu = normalize_mu(d, mu)
    classes = enumerate_unramified(d, mu, convention)
    coinv = coinvariants(d)
    by_coinv = {c.coinvariant: c.index for c in classes}
    conj = {}
    for c in classes:
        for w in d.sigma_fixed_weyl_group:
            conj.setdefault(coinv.class_of(w(c.tau)), c.index)
    rows = []
    for lam in sorted(d.weyl_orbit(upsilon(d, mu, convention)), reverse=True):
        key = coinv.class_of(lam)
        if key in by_coinv:
            rows.append({"lambda": list(lam), "class": by_coinv[key], "kind": "label"})
        elif key in conj:
            rows.append({"lambda": list(lam), "class": conj[key], "kind": "conjugate coset"})
        else:
            rows.append({"lambda": list(lam), "class": None, "kind": "other coset"})
    return {"rows": rows}


def mv_report(
    d: BasedRootDatum, mu: Sequence[int], cls: SigmaClass, convention: str = UPSILON
) -> Report:
    labels = mv_set(d, mu, cls, convention)
    r = Report("labels")
    for l in labels:
        r.extend(label_checks(d, mu, cls, l))
    r.data.update(
        {
            "class": cls.to_dict(),
            "labels": [l.to_dict() for l in labels],
            "count": component_count(d, mu, cls, convention),
        }
    )
    return r
