"""Based root data with a Frobenius action.

Cocharacters are plain integer tuples in a fixed basis of X_*(T); rational
cocharacters (Newton points) are tuples of :class:`fractions.Fraction`.
Characters live in the dual basis, so pairing is the ordinary dot product.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import NotMinusculeError, RootDatumError

Cochar = tuple[int, ...]
RatCochar = tuple[Fraction, ...]
Matrix = tuple[tuple[int, ...], ...]

WEYL_ORDER_CAP = 10**7
ROOT_COUNT_CAP = 10**4


def dot(x: Sequence, y: Sequence):
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def matvec(m: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def vadd(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def neg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def as_fractions(x: Sequence) -> RatCochar:
    return tuple(Fraction(a) for a in x)


def is_integral(x: Sequence) -> bool:
    return all(Fraction(a).denominator == 1 for a in x)


def as_ints(x: Sequence) -> Cochar:
    if not is_integral(x):
        raise ValueError(f"{x} is not integral")
    return tuple(int(a) for a in x)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element acting on X_*(T), with a reduced word for reporting."""

    matrix: Matrix
    word: tuple[int, ...] = field(default=(), compare=False)

    def __call__(self, x: Sequence) -> tuple:
        return matvec(self.matrix, x)

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(matmul(self.matrix, other.matrix), self.word + other.word)

    @property
    def name(self) -> str:
        return "".join(f"s{i}" for i in self.word) or "1"

    def __repr__(self) -> str:
        return f"WeylElement({self.name})"


def _generate_group(gens: Sequence[WeylElement], rank: int, cap: int) -> tuple[WeylElement, ...]:
    # BFS from the identity, so every stored word is reduced.
    one = WeylElement(identity(rank), ())
    seen = {one.matrix: one}
    queue = deque([one])
    while queue:
        w = queue.popleft()
        for g in gens:
            v = g * w
            if v.matrix not in seen:
                if len(seen) >= cap:
                    raise RootDatumError("infinite Weyl group (order bound exceeded)")
                seen[v.matrix] = v
                queue.append(v)
    return tuple(seen.values())


@dataclass(frozen=True)
class ValidationReport:
    name: str | None
    rank: int
    semisimple_rank: int
    weyl_order: int
    sigma_order: int
    sigma_permutation: tuple[int, ...]
    cartan_matrix: Matrix

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "semisimple_rank": self.semisimple_rank,
            "weyl_order": self.weyl_order,
            "sigma_order": self.sigma_order,
            "sigma_permutation": list(self.sigma_permutation),
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
        }


@dataclass(frozen=True)
class BasedRootDatum:
    """Simple roots and coroots in a basis of X_*(T), plus Frobenius sigma.

    ``sigma`` acts on cocharacters by ``x -> sigma @ x`` and on characters by
    the inverse transpose.
    """

    rank: int
    simple_roots: tuple[Cochar, ...]
    simple_coroots: tuple[Cochar, ...]
    sigma: Matrix
    name: str | None = None

    def __post_init__(self):
        roots = tuple(tuple(int(a) for a in r) for r in self.simple_roots)
        coroots = tuple(tuple(int(a) for a in r) for r in self.simple_coroots)
        sigma = tuple(tuple(int(a) for a in r) for r in self.sigma)
        object.__setattr__(self, "simple_roots", roots)
        object.__setattr__(self, "simple_coroots", coroots)
        object.__setattr__(self, "sigma", sigma)
        if self.rank < 1:
            raise RootDatumError("rank must be positive")
        if len(roots) != len(coroots):
            raise RootDatumError(
                f"{len(roots)} simple roots but {len(coroots)} simple coroots"
            )
        for label, vecs in (("simple_roots", roots), ("simple_coroots", coroots)):
            for v in vecs:
                if len(v) != self.rank:
                    raise RootDatumError(f"{label} entry {list(v)} does not have length {self.rank}")
        if len(sigma) != self.rank or any(len(r) != self.rank for r in sigma):
            raise RootDatumError(f"sigma must be a {self.rank}x{self.rank} matrix")

    # -- structure -----------------------------------------------------

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @property
    def indices(self) -> range:
        return range(self.semisimple_rank)

    @cached_property
    def cartan_matrix(self) -> Matrix:
        """Entries <alpha_i, alpha_j^vee>."""
        return tuple(
            tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots
        )

    @cached_property
    def sigma_order(self) -> int:
        cap = math.factorial(self.rank) * 12
        one = identity(self.rank)
        power = self.sigma
        for k in range(1, cap + 1):
            if power == one:
                return k
            power = matmul(self.sigma, power)
        raise RootDatumError(f"sigma does not have finite order (checked up to {cap})")

    @cached_property
    def sigma_inverse(self) -> Matrix:
        power = identity(self.rank)
        for _ in range(self.sigma_order - 1):
            power = matmul(self.sigma, power)
        return power

    @cached_property
    def sigma_permutation(self) -> tuple[int, ...]:
        """pi with sigma(alpha_i^vee) = alpha_{pi(i)}^vee and sigma(alpha_i) = alpha_{pi(i)}."""
        lookup = {c: j for j, c in enumerate(self.simple_coroots)}
        # sigma on characters is the inverse transpose
        on_chars = transpose(self.sigma_inverse)
        perm = []
        for i, (a, c) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            image = matvec(self.sigma, c)
            if image not in lookup:
                raise RootDatumError(
                    f"sigma does not permute the simple coroots: sigma({list(c)}) = {list(image)}"
                )
            j = lookup[image]
            if matvec(on_chars, a) != self.simple_roots[j]:
                raise RootDatumError(
                    f"sigma maps coroot {i} to coroot {j} but not root {i} to root {j}"
                )
            perm.append(j)
        return tuple(perm)

    def sigma_orbits(self, subset: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """sigma-orbits on simple-root indices (restricted to ``subset``)."""
        pool = set(self.indices if subset is None else subset)
        perm = self.sigma_permutation
        orbits = []
        for i in sorted(pool):
            if any(i in o for o in orbits):
                continue
            orbit, j = [i], perm[i]
            while j != i:
                orbit.append(j)
                j = perm[j]
            orbits.append(tuple(orbit))
        return orbits

    def apply_sigma(self, x: Sequence, power: int = 1) -> tuple:
        m = self.sigma if power >= 0 else self.sigma_inverse
        out = tuple(x)
        for _ in range(abs(power) % self.sigma_order):
            out = matvec(m, out)
        return out

    def sigma_norm(self, x: Sequence, start: int, count: int) -> tuple:
        """sum_{j=start}^{start+count-1} sigma^j(x)."""
        total = tuple(0 for _ in x)
        y = self.apply_sigma(x, start)
        for _ in range(count):
            total = vadd(total, y)
            y = matvec(self.sigma, y)
        return total

    def sigma_average(self, x: Sequence) -> RatCochar:
        n = self.sigma_order
        return tuple(Fraction(a, n) for a in self.sigma_norm(x, 0, n))

    def sigma_period(self, x: Sequence) -> int:
        x = tuple(x)
        y = matvec(self.sigma, x)
        k = 1
        while y != x:
            y = matvec(self.sigma, y)
            k += 1
        return k

    # -- roots and pairings --------------------------------------------

    def reflect(self, i: int, x: Sequence) -> tuple:
        c = dot(self.simple_roots[i], x)
        return tuple(a - c * b for a, b in zip(x, self.simple_coroots[i]))

    def pairings(self, x: Sequence) -> tuple:
        """(<alpha_i, x>)_i."""
        return tuple(dot(a, x) for a in self.simple_roots)

    @cached_property
    def roots(self) -> tuple[tuple[Cochar, tuple[int, ...]], ...]:
        """All roots with their coefficients in the simple-root basis."""
        r = self.semisimple_rank
        start = [(a, tuple(int(i == j) for j in range(r))) for i, a in enumerate(self.simple_roots)]
        seen = dict(start)
        queue = deque(start)
        while queue:
            beta, coeffs = queue.popleft()
            for i in self.indices:
                c = dot(beta, self.simple_coroots[i])
                if c == 0:
                    continue
                image = tuple(b - c * a for b, a in zip(beta, self.simple_roots[i]))
                if image not in seen:
                    if len(seen) >= ROOT_COUNT_CAP:
                        raise RootDatumError("infinite Weyl group (root count bound exceeded)")
                    new = tuple(k - c * int(i == j) for j, k in enumerate(coeffs))
                    seen[image] = new
                    queue.append((image, new))
        for beta, coeffs in seen.items():
            if not (all(k >= 0 for k in coeffs) or all(k <= 0 for k in coeffs)):
                raise RootDatumError(f"root {list(beta)} is neither positive nor negative")
        return tuple(sorted(seen.items()))

    @cached_property
    def positive_roots(self) -> tuple[Cochar, ...]:
        return tuple(b for b, c in self.roots if all(k >= 0 for k in c))

    @cached_property
    def two_rho(self) -> Cochar:
        total = tuple(0 for _ in range(self.rank))
        for b in self.positive_roots:
            total = vadd(total, b)
        return total

    def pair(self, chi: Sequence, x: Sequence) -> Fraction:
        return Fraction(dot(chi, x))

    def pair_rho(self, x: Sequence) -> Fraction:
        """<rho, x>, computed from the stored 2*rho."""
        return Fraction(dot(self.two_rho, x)) / 2

    def is_dominant(self, x: Sequence) -> bool:
        return all(v >= 0 for v in self.pairings(x))

    def is_central(self, x: Sequence) -> bool:
        return all(dot(b, x) == 0 for b in self.positive_roots)

    def dominant_rep(self, x: Sequence) -> tuple:
        y = tuple(x)
        while True:
            for i in self.indices:
                if dot(self.simple_roots[i], y) < 0:
                    y = self.reflect(i, y)
                    break
            else:
                return y

    def weyl_orbit(self, x: Sequence) -> tuple[tuple, ...]:
        """The W-orbit of x, sorted lexicographically."""
        x = tuple(x)
        seen = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for i in self.indices:
                z = self.reflect(i, y)
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
        return tuple(sorted(seen))

    def check_minuscule(self, mu: Sequence) -> None:
        for b in self.positive_roots:
            v = dot(b, mu)
            if abs(v) > 1:
                raise NotMinusculeError(tuple(mu), b, v)

    def is_minuscule(self, mu: Sequence) -> bool:
        return all(abs(dot(b, mu)) <= 1 for b in self.positive_roots)

    def reflex_degree(self, mu: Sequence) -> int:
        """Smallest n >= 1 with sigma^n(mu) in W.mu."""
        target = self.dominant_rep(mu)
        y = tuple(mu)
        for n in range(1, self.sigma_order + 1):
            y = matvec(self.sigma, y)
            if self.dominant_rep(y) == target:
                return n
        raise AssertionError("unreachable: sigma^order(mu) = mu")

    # -- Weyl groups ---------------------------------------------------

    def simple_reflection(self, i: int) -> WeylElement:
        a, c = self.simple_roots[i], self.simple_coroots[i]
        m = tuple(
            tuple(int(r == s) - c[r] * a[s] for s in range(self.rank)) for r in range(self.rank)
        )
        return WeylElement(m, (i,))

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        self.roots  # finiteness guard
        gens = [self.simple_reflection(i) for i in self.indices]
        return _generate_group(gens, self.rank, WEYL_ORDER_CAP)

    def commutes_with_sigma(self, w: WeylElement) -> bool:
        return matmul(w.matrix, self.sigma) == matmul(self.sigma, w.matrix)

    @cached_property
    def sigma_fixed_weyl_group(self) -> tuple[WeylElement, ...]:
        """W^sigma, modelling the relative Weyl group."""
        return tuple(w for w in self.weyl_group if self.commutes_with_sigma(w))

    # -- Levi subgroups ------------------------------------------------

    def levi(self, subset: Iterable[int]) -> LeviDatum:
        return LeviDatum(self, frozenset(subset))

    @property
    def full_levi(self) -> LeviDatum:
        return self.levi(self.indices)

    @property
    def torus_levi(self) -> LeviDatum:
        return self.levi(())

    def levi_centralizer(self, nu: Sequence) -> LeviDatum:
        """Standard Levi centralizing a dominant (rational) cocharacter."""
        if not self.is_dominant(nu):
            raise ValueError(f"{list(nu)} is not dominant")
        return self.levi(i for i in self.indices if dot(self.simple_roots[i], nu) == 0)

    # -- validation ----------------------------------------------------

    def validate(self) -> ValidationReport:
        if len(set(self.simple_roots)) != len(self.simple_roots) or len(
            set(self.simple_coroots)
        ) != len(self.simple_coroots):
            raise RootDatumError("degenerate root system: a simple root or coroot is repeated")
        a = self.cartan_matrix
        for i in self.indices:
            if a[i][i] != 2:
                raise RootDatumError(
                    f"non-Cartan pairing: <alpha_{i}, alpha_{i}^vee> = {a[i][i]}, expected 2"
                )
            for j in self.indices:
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise RootDatumError(
                        f"non-Cartan pairing: <alpha_{i}, alpha_{j}^vee> = {a[i][j]} > 0"
                    )
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise RootDatumError(
                        f"non-Cartan pairing: <alpha_{i}, alpha_{j}^vee> = {a[i][j]} but "
                        f"<alpha_{j}, alpha_{i}^vee> = {a[j][i]}"
                    )
        self.sigma_permutation
        return ValidationReport(
            name=self.name,
            rank=self.rank,
            semisimple_rank=self.semisimple_rank,
            weyl_order=len(self.weyl_group),
            sigma_order=self.sigma_order,
            sigma_permutation=self.sigma_permutation,
            cartan_matrix=a,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
            "sigma": [list(r) for r in self.sigma],
        }


@dataclass(frozen=True)
class LeviDatum:
    """Standard Levi subgroup given by a subset of simple-root indices."""

    parent: BasedRootDatum
    subset: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        bad = [i for i in self.subset if i not in self.parent.indices]
        if bad:
            raise ValueError(f"invalid simple-root indices {bad}")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.subset))

    @property
    def is_full(self) -> bool:
        return len(self.subset) == self.parent.semisimple_rank

    @property
    def is_torus(self) -> bool:
        return not self.subset

    @property
    def is_sigma_stable(self) -> bool:
        perm = self.parent.sigma_permutation
        return all(perm[i] in self.subset for i in self.subset)

    def contains(self, other: LeviDatum) -> bool:
        return other.subset <= self.subset

    @property
    def simple_coroots(self) -> tuple[Cochar, ...]:
        return tuple(self.parent.simple_coroots[i] for i in self.indices)

    def sub_datum(self) -> BasedRootDatum:
        d = self.parent
        sigma = d.sigma if self.is_sigma_stable else identity(d.rank)
        name = f"{d.name or 'G'}[levi {list(self.indices)}]"
        return BasedRootDatum(
            d.rank,
            tuple(d.simple_roots[i] for i in self.indices),
            self.simple_coroots,
            sigma,
            name,
        )

    @cached_property
    def two_rho(self) -> Cochar:
        if not self.subset:
            return tuple(0 for _ in range(self.parent.rank))
        return self.sub_datum().two_rho

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        d = self.parent
        gens = [d.simple_reflection(i) for i in self.indices]
        return _generate_group(gens, d.rank, WEYL_ORDER_CAP)

    @cached_property
    def sigma_fixed_weyl_group(self) -> tuple[WeylElement, ...]:
        return tuple(w for w in self.weyl_group if self.parent.commutes_with_sigma(w))

    @cached_property
    def relative_simple_reflections(self) -> tuple[WeylElement, ...]:
        """Longest elements of W_J for the sigma-orbits J inside the subset.

        These generate W_M^sigma when M is sigma-stable.
        """
        d = self.parent
        if not self.is_sigma_stable:
            raise ValueError(f"Levi {list(self.indices)} is not sigma-stable")
        gens = []
        for orbit in d.sigma_orbits(self.subset):
            group = _generate_group([d.simple_reflection(i) for i in orbit], d.rank, WEYL_ORDER_CAP)
            gens.append(max(group, key=lambda w: len(w.word)))
        return tuple(gens)

    def to_dict(self) -> dict:
        return {"subset": list(self.indices), "is_full": self.is_full, "is_torus": self.is_torus}
