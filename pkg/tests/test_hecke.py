from __future__ import annotations

import random

import pytest

from hecke_congruence.errors import InvarianceError, NotMinusculeError
from hecke_congruence.hecke import (
    dominant_weight_factor_check,
    hecke_polynomial,
    hecke_report,
    orbit_factor,
    orbit_factors,
    product,
    satake_view,
)
from hecke_congruence.laurent import P
from hecke_congruence.presets import PRESETS, gl, res_gl2_inert
from hecke_congruence.root_datum import BasedRootDatum, identity
from hecke_congruence.torus_algebra import HeckePolynomial, TorusAlgebraElement, dot_act

h = TorusAlgebraElement.h


def x_minus(c, rank, m=1):
    return HeckePolynomial.x_power_minus(m, c, rank)


def test_gl2_orbit_factors():
    fs = orbit_factors(gl(2), (1, 0))
    assert [(f.size, f.exponent, f.norm) for f in fs] == [(1, 0, (0, -1)), (1, 1, (-1, 0))]
    assert fs[0].factor == x_minus(h((0, -1)), 2)
    assert fs[1].factor == x_minus(h((-1, 0), P), 2)


def test_gl3_exponents():
    # rho = (1, 0, -1): <rho, mu - nu> for the three weights of the dual representation
    fs = orbit_factors(gl(3), (1, 0, 0))
    assert sorted(f.exponent for f in fs) == [0, 1, 2]
    rho = (1, 0, -1)
    for f in fs:
        assert f.exponent == sum(r * (m - v) for r, m, v in zip(rho, (1, 0, 0), f.rep))


def test_hilbert_g2_orbit_factors():
    fs = orbit_factors(res_gl2_inert(2), (1, 0, 1, 0))
    assert sorted(f.size for f in fs) == [1, 1, 2]
    (two,) = [f for f in fs if f.size == 2]
    assert set(two.members) == {(-1, 0, 0, -1), (0, -1, -1, 0)}
    assert two.factor == x_minus(h((-1, -1, -1, -1), P**2), 4, 2)


def test_gl2_polynomial_anchor():
    H = hecke_polynomial(gl(2), (1, 0))
    trace = h((0, -1)) + h((-1, 0), P)
    expected = HeckePolynomial([h((-1, -1), P), -trace, h((0, 0))], 2)
    assert H == expected
    assert H == x_minus(h((0, -1)), 2) * x_minus(h((-1, 0), P), 2)


def test_gu3_polynomial():
    d = PRESETS["u3_quasisplit"].datum
    H = hecke_polynomial(d, (1, 0, 0, 1))
    expected = (
        x_minus(h((0, -1, -2, -2)), 4)
        * x_minus(h((-1, -1, -1, -2), P**2), 4)
        * x_minus(h((-2, -1, 0, -2), P**4), 4)
    )
    assert H == expected


def test_hilbert_g2_polynomial():
    H = hecke_polynomial(res_gl2_inert(2), (1, 0, 1, 0))
    expected = (
        x_minus(h((0, -1, 0, -1)), 4)
        * x_minus(h((-1, -1, -1, -1), P**2), 4, 2)
        * x_minus(h((-1, 0, -1, 0), P**2), 4)
    )
    assert H == expected


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_report_passes(name):
    p = PRESETS[name]
    r = hecke_report(p.datum, p.mu)
    assert r.passed, r.failures
    assert hecke_polynomial(p.datum, p.mu).degree == p.orbit_size


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_invariance_checked_on_every_element(name):
    # stronger than generator checks: act by all of W^sigma
    p = PRESETS[name]
    d = p.datum
    for c in hecke_polynomial(d, p.mu).coefficients:
        for w in d.sigma_fixed_weyl_group:
            assert dot_act(d, w, c) == c


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_orbit_representative_choice_irrelevant(name):
    p = PRESETS[name]
    d = p.datum
    n = d.reflex_degree(p.mu)
    rng = random.Random(7)
    for f in orbit_factors(d, p.mu):
        other = orbit_factor(d, p.mu, rng.choice(f.members), n)
        assert other.factor == f.factor
        for nu in f.members:
            assert d.sigma_norm(nu, 1, n * f.size) == f.norm


def test_central_mu_degenerates():
    H = hecke_polynomial(gl(3), (1, 1, 1))
    assert H == x_minus(h((-1, -1, -1)), 3)
    H0 = hecke_polynomial(gl(2), (0, 0))
    assert H0 == x_minus(h((0, 0)), 2)


def test_non_minuscule_rejected():
    with pytest.raises(NotMinusculeError):
        orbit_factors(gl(3), (2, 0, 0))


def test_non_dominant_mu_normalized():
    assert hecke_polynomial(gl(2), (0, 1)) == hecke_polynomial(gl(2), (1, 0))


def test_satake_view_torus_and_full():
    d = gl(2)
    H = hecke_polynomial(d, (1, 0))
    assert satake_view(d, H, d.torus_levi) is H
    assert satake_view(d, H, d.full_levi) is H


def test_satake_view_failure_names_witness():
    d = gl(2)
    with pytest.raises(InvarianceError) as info:
        satake_view(d, x_minus(h((0, -1)), 2), d.full_levi)
    assert info.value.witness == "s0"
    assert info.value.coefficient_index == 0


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_dominant_weight_factor(name):
    p = PRESETS[name]
    r = dominant_weight_factor_check(p.datum, p.mu)
    assert r.passed, r.failures


def test_dominant_weight_factor_examples():
    assert dominant_weight_factor_check(gl(2), (1, 0)).data["factor"] == "x - h(0,-1)"
    assert dominant_weight_factor_check(gl(3), (1, 0, 0)).data["factor"] == "x - h(0,0,-1)"
    r = dominant_weight_factor_check(res_gl2_inert(2), (1, 0, 1, 0))
    assert r.data["factor"] == "x - h(0,-1,0,-1)" and r.data["exponent"] == 0


def test_product_of_factors_is_polynomial():
    p = PRESETS["gsp6"]
    fs = orbit_factors(p.datum, p.mu)
    assert product((f.factor for f in fs), p.datum.rank) == hecke_polynomial(p.datum, p.mu)


def test_custom_rank4_unitary_twist():
    # GL_2 x GL_2 with sigma swapping the factors and mu on one factor only
    d = BasedRootDatum(4, [(1, -1, 0, 0), (0, 0, 1, -1)], [(1, -1, 0, 0), (0, 0, 1, -1)],
                       [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    mu = (1, 0, 0, 0)
    assert d.reflex_degree(mu) == 2
    r = hecke_report(d, mu)
    assert r.passed, r.failures
    assert hecke_polynomial(d, mu).degree == 2
    assert identity(4) in {w.matrix for w in d.sigma_fixed_weyl_group}
