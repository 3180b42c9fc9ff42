"""Integer linear algebra: quotients of Z^n by sublattices via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .root_datum import BasedRootDatum, Cochar, LeviDatum, matvec


def _snf(rank: int, generators: tuple[Cochar, ...]):
    """(diagonal, U, V) with U @ A @ V = diag, A having the generators as columns."""
    if not generators:
        eye = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        return (), eye, ()
    a = Matrix(rank, len(generators), lambda i, j: generators[j][i])
    d, u, v = smith_normal_decomp(a, domain=ZZ)
    k = min(d.shape)
    diag = tuple(abs(int(d[i, i])) for i in range(k))
    diag = tuple(x for x in diag if x != 0)
    # sympy may return negative invariant factors; fold the sign into U.
    u_rows = []
    for i in range(rank):
        row = tuple(int(x) for x in u.row(i))
        if i < len(diag) and int(d[i, i]) < 0:
            row = tuple(-x for x in row)
        u_rows.append(row)
    v_rows = tuple(tuple(int(x) for x in v.row(i)) for i in range(v.rows))
    return diag, tuple(u_rows), v_rows


@dataclass(frozen=True)
class FiniteAbelianPresentation:
    """Z^rank / L written as Z^free_rank (+) (+)_i Z/torsion_i.

    ``projection`` rows map a lattice vector to quotient coordinates: the first
    ``free_rank`` rows give the free part, the rest are read modulo ``torsion``.
    """

    rank: int
    free_rank: int
    torsion: tuple[int, ...]
    projection: tuple[Cochar, ...]
    section: tuple[Cochar, ...]

    def class_of(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.rank:
            raise ValueError(f"length mismatch: {len(x)} != {self.rank}")
        y = matvec(self.projection, x)
        free = y[: self.free_rank]
        tors = tuple(c % t for c, t in zip(y[self.free_rank :], self.torsion))
        return free + tors

    def lift(self, coords: Sequence[int]) -> Cochar:
        """A lattice vector whose class has the given quotient coordinates."""
        if len(coords) != len(self.section):
            raise ValueError("coordinate length mismatch")
        out = [0] * self.rank
        for c, col in zip(coords, self.section):
            for i, a in enumerate(col):
                out[i] += c * a
        return tuple(out)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@lru_cache(maxsize=None)
def _quotient(rank: int, generators: tuple[Cochar, ...]) -> FiniteAbelianPresentation:
    diag, u, _ = _snf(rank, generators)
    r = len(diag)
    free_rows = []
    for row in u[r:]:
        lead = next((a for a in row if a != 0), 0)
        free_rows.append(tuple(-a for a in row) if lead < 0 else row)
    tors_idx = [i for i in range(r) if diag[i] > 1]
    projection = tuple(free_rows) + tuple(u[i] for i in tors_idx)
    # Columns of U^{-1} give lifts of the unit quotient coordinates.
    full = [u[i] for i in range(r)] + free_rows
    inv = Matrix(full).inv()
    cols = [tuple(int(inv[k, j]) for k in range(rank)) for j in range(rank)]
    section = tuple(cols[r:]) + tuple(cols[i] for i in tors_idx)
    return FiniteAbelianPresentation(
        rank, rank - r, tuple(diag[i] for i in tors_idx), projection, section
    )


def quotient(rank: int, generators: Sequence[Sequence[int]]) -> FiniteAbelianPresentation:
    """Presentation of Z^rank / <generators>."""
    gens = tuple(tuple(int(a) for a in g) for g in generators)
    for g in gens:
        if len(g) != rank:
            raise ValueError(f"generator {list(g)} does not have length {rank}")
    gens = tuple(g for g in gens if any(g))
    return _quotient(rank, gens)


def in_sublattice(
    generators: Sequence[Sequence[int]], x: Sequence[int]
) -> tuple[bool, tuple[int, ...] | None]:
    """Whether x is an integer combination of the generators, with the combination."""
    gens = tuple(tuple(int(a) for a in g) for g in generators if any(g))
    rank = len(x)
    if not gens:
        return (not any(x), () if not any(x) else None)
    diag, u, v = _snf(rank, gens)
    y = matvec(u, x)
    if any(y[len(diag) :]):
        return False, None
    z = []
    for yi, di in zip(y, diag):
        if yi % di:
            return False, None
        z.append(yi // di)
    z += [0] * (len(gens) - len(diag))
    coeffs = matvec(v, z)
    # report coefficients against the caller's generator list, zeros included
    full, it = [], iter(coeffs)
    for g in generators:
        full.append(next(it) if any(g) else 0)
    return True, tuple(full)


def sigma_minus_one_generators(d: BasedRootDatum) -> tuple[Cochar, ...]:
    """Columns of (sigma - 1), spanning (sigma - 1) X_*(T)."""
    cols = []
    for j in range(d.rank):
        e = tuple(int(i == j) for i in range(d.rank))
        cols.append(tuple(a - b for a, b in zip(d.apply_sigma(e), e)))
    return tuple(cols)


def coinvariants(d: BasedRootDatum) -> FiniteAbelianPresentation:
    """X_*(T)_sigma."""
    return quotient(d.rank, sigma_minus_one_generators(d))


def fundamental_group(d: BasedRootDatum, levi: LeviDatum | None = None, coinvariant: bool = True):
    """pi_1(M) (or its sigma-coinvariants pi_1(M)_Gamma), M = G by default."""
    coroots = d.simple_coroots if levi is None else levi.simple_coroots
    gens = tuple(coroots)
    if coinvariant:
        gens += sigma_minus_one_generators(d)
    return quotient(d.rank, gens)
