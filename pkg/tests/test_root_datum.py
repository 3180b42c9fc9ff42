from __future__ import annotations

import itertools
from fractions import Fraction as F

import pytest

from hecke_congruence.errors import NotMinusculeError, RootDatumError
from hecke_congruence.presets import PRESETS, gl, gsp, res_gl2_inert
from hecke_congruence.root_datum import BasedRootDatum, identity


def brute_orbit(d, x):
    """Close x under explicit reflection matrices, then under their products."""
    mats = []
    for a, c in zip(d.simple_roots, d.simple_coroots):
        mats.append([[int(r == s) - c[r] * a[s] for s in range(d.rank)] for r in range(d.rank)])
    group = {tuple(map(tuple, identity(d.rank)))}
    frontier = list(group)
    while frontier:
        new = []
        for g in frontier:
            for m in mats:
                prod = tuple(
                    tuple(sum(m[i][k] * g[k][j] for k in range(d.rank)) for j in range(d.rank))
                    for i in range(d.rank)
                )
                if prod not in group:
                    group.add(prod)
                    new.append(prod)
        frontier = new
    return {tuple(sum(g[i][k] * x[k] for k in range(d.rank)) for i in range(d.rank)) for g in group}


# -- validate ----------------------------------------------------------------


def test_validate_gl2():
    rep = gl(2).validate()
    assert (rep.weyl_order, rep.sigma_order) == (2, 1)


def test_validate_res_gl2_inert():
    rep = res_gl2_inert(2).validate()
    assert (rep.rank, rep.weyl_order, rep.sigma_order) == (4, 4, 2)


def test_degenerate_root_system():
    d = BasedRootDatum(2, [(1, -1), (1, -1)], [(1, -1), (1, -1)], identity(2))
    with pytest.raises(RootDatumError, match="degenerate root system"):
        d.validate()


def test_non_cartan_pairing_reported():
    d = BasedRootDatum(2, [(1, -1)], [(2, -2)], identity(2))
    with pytest.raises(RootDatumError, match="non-Cartan pairing"):
        d.validate()


def test_sigma_must_permute_coroots():
    d = BasedRootDatum(2, [(1, -1)], [(1, -1)], [[0, 1], [1, 0]])
    with pytest.raises(RootDatumError, match="permute"):
        d.validate()


def test_infinite_weyl_group_detected():
    # affine A1 Cartan matrix
    d = BasedRootDatum(2, [(1, 0), (-1, 1)], [(2, 0), (-2, 0)], identity(2))
    with pytest.raises(RootDatumError, match="infinite Weyl group"):
        d.validate()


def test_shape_errors():
    with pytest.raises(RootDatumError):
        BasedRootDatum(2, [(1, -1, 0)], [(1, -1)], identity(2))
    with pytest.raises(RootDatumError):
        BasedRootDatum(2, [(1, -1)], [(1, -1)], identity(3))


@pytest.mark.parametrize(
    "name,order,sigma_order",
    [
        ("gl2", 2, 1),
        ("gl3", 6, 1),
        ("gl4", 24, 1),
        ("gsp4", 8, 1),
        ("gsp6", 48, 1),
        ("res_gl2_inert_g2", 4, 2),
        ("res_gl2_inert_g3", 8, 3),
        ("u3_quasisplit", 6, 2),
    ],
)
def test_preset_weyl_and_sigma_orders(name, order, sigma_order):
    rep = PRESETS[name].datum.validate()
    assert (rep.weyl_order, rep.sigma_order) == (order, sigma_order)


# -- orbits and dominance ------------------------------------------------------


def test_weyl_orbit_gl2():
    assert set(gl(2).weyl_orbit((1, 0))) == {(1, 0), (0, 1)}


def test_weyl_orbit_gl3():
    assert set(gl(3).weyl_orbit((-1, 0, 0))) == {(-1, 0, 0), (0, -1, 0), (0, 0, -1)}


def test_weyl_orbit_gsp4_matches_brute_force():
    p = PRESETS["gsp4"]
    orbit = set(p.datum.weyl_orbit(p.mu))
    assert orbit == brute_orbit(p.datum, p.mu)
    assert len(orbit) == 4


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_orbit_sizes_match_presets(name):
    p = PRESETS[name]
    orbit = p.datum.weyl_orbit(p.mu)
    assert len(orbit) == p.orbit_size
    assert set(orbit) == brute_orbit(p.datum, p.mu)


def test_dominant_rep_examples():
    assert gl(3).dominant_rep((0, 1, 0)) == (1, 0, 0)
    assert gl(2).dominant_rep((F(1, 2), F(1, 2))) == (F(1, 2), F(1, 2))
    assert gl(2).dominant_rep((0, -1)) == (0, -1)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_dominant_rep_constant_on_orbit(name):
    p = PRESETS[name]
    d = p.datum
    for x in [p.mu, tuple(-a for a in p.mu), tuple(range(d.rank))]:
        reps = {d.dominant_rep(y) for y in d.weyl_orbit(x)}
        assert len(reps) == 1
        (r,) = reps
        assert d.is_dominant(r) and d.dominant_rep(r) == r


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_sigma_preserves_dominance_and_rho(name):
    d = PRESETS[name].datum
    for x in itertools.product(range(-2, 3), repeat=min(d.rank, 4)):
        x = tuple(x) + (0,) * (d.rank - len(x))
        assert d.is_dominant(x) == d.is_dominant(d.apply_sigma(x))
        assert d.pair_rho(d.apply_sigma(x)) == d.pair_rho(x)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_rho_pairing_integral_on_orbit_differences(name):
    d = PRESETS[name].datum
    x = tuple(range(1, d.rank + 1))
    for w in d.weyl_group:
        assert d.pair_rho(tuple(a - b for a, b in zip(x, w(x)))).denominator == 1


# -- pairings ------------------------------------------------------------------


def test_rho_pairings():
    assert gl(2).pair_rho((1, -1)) == 1
    assert gl(2).pair_rho((1, 1)) == 0
    assert gl(3).two_rho == (2, 0, -2)
    assert gl(3).pair_rho((2, 0, 0)) == 2


def test_pair_length_mismatch():
    with pytest.raises(ValueError):
        gl(2).pair((1, 0, 0), (1, 0))


# -- reflex degree and minusculeness -----------------------------------------


def test_reflex_degree_examples():
    assert gl(2).reflex_degree((1, 0)) == 1
    assert res_gl2_inert(2).reflex_degree((1, 0, 1, 0)) == 1
    assert res_gl2_inert(2).reflex_degree((1, 0, 0, 0)) == 2
    assert PRESETS["u3_quasisplit"].datum.reflex_degree((1, 0, 0, 1)) == 2


def test_minuscule_gate():
    assert gsp(2).is_minuscule((1, 1, 1))
    with pytest.raises(NotMinusculeError):
        gl(3).check_minuscule((2, 0, 0))


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_orbit_weight_minuscule(name):
    p = PRESETS[name]
    for nu in p.datum.weyl_orbit(p.mu):
        assert all(abs(sum(a * b for a, b in zip(r, nu))) <= 1 for r in p.datum.positive_roots)


# -- Levis -----------------------------------------------------------------------


def test_levi_centralizer_examples():
    assert gl(2).levi_centralizer((F(1, 2), F(1, 2))).indices == (0,)
    assert gl(2).levi_centralizer((1, 0)).indices == ()
    assert gl(3).levi_centralizer((1, 0, 0)).indices == (1,)


def test_levi_centralizer_requires_dominant():
    with pytest.raises(ValueError):
        gl(2).levi_centralizer((0, 1))


def test_sigma_fixed_weyl_group_generated_by_relative_reflections():
    for name in ("res_gl2_inert_g2", "res_gl2_inert_g3", "u3_quasisplit", "gsp4"):
        d = PRESETS[name].datum
        gens = d.full_levi.relative_simple_reflections
        closure = {w.matrix for w in gens} | {identity(d.rank)}
        while True:
            bigger = closure | {
                tuple(
                    tuple(sum(a[i][k] * b[k][j] for k in range(d.rank)) for j in range(d.rank))
                    for i in range(d.rank)
                )
                for a in closure
                for b in closure
            }
            if bigger == closure:
                break
            closure = bigger
        assert closure == {w.matrix for w in d.sigma_fixed_weyl_group}


def test_non_sigma_stable_levi_rejected():
    d = res_gl2_inert(2)
    with pytest.raises(ValueError):
        d.levi([0]).relative_simple_reflections
