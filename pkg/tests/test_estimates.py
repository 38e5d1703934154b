from fractions import Fraction

import pytest

from torsionspin.errors import DegenerateDimension, DimOutOfRange
from torsionspin.estimates import (EstimateInput, beta_tw, beta_univ, inequality_suite, killing_criterion,
                                   low_dim_variants, ric_coefficient, special_s, spinor_constants)
from torsionspin.exactfield import ExactScalar, ScalarPoly, poly_identity

S5 = ExactScalar.sqrt(5)
GAMMA = -7 / S5
B7 = EstimateInput(7, ExactScalar(Fraction(189, 10)), ExactScalar(Fraction(7, 5)), GAMMA)


def test_b7_betas():
    assert beta_univ(B7) == Fraction(49, 20)
    assert beta_tw(B7) == Fraction(49, 20)
    assert beta_univ(B7) == B7.sca_g_min * Fraction(7, 54)


def test_beta_trivial_and_nk6():
    assert beta_univ(EstimateInput(5, 8, 0, 0)) == 2
    tau = ScalarPoly.variable("tau0")
    nk6 = EstimateInput(6, tau * 15, tau * 2, gamma_sq=tau * 8)
    assert poly_identity(beta_univ(nk6), tau * 2)
    assert poly_identity(beta_univ(nk6), nk6.sca_g_min * Fraction(2, 15))
    assert poly_identity(beta_tw(nk6), beta_univ(nk6))


def test_beta_tw_symbolic_g2():
    sca = ScalarPoly.variable("sca")
    ld = low_dim_variants(7, sca * Fraction(2 * 2, 9 * 6))
    inp = EstimateInput(7, sca, sca * Fraction(4, 54), gamma_sq=ld["gamma_sq"])
    assert poly_identity(beta_tw(inp), sca * Fraction(7, 54))


def test_degenerate_dimension():
    with pytest.raises(DegenerateDimension):
        beta_tw(EstimateInput(3, 6, 4, 2))
    with pytest.raises(DimOutOfRange):
        special_s(3)
    with pytest.raises(DimOutOfRange):
        low_dim_variants(9, 1)
    with pytest.raises(DimOutOfRange):
        inequality_suite(EstimateInput(3, 6, 4, 2))
    with pytest.raises(DimOutOfRange):
        EstimateInput(2, 1, 1, 1)


def test_killing_criterion():
    assert killing_criterion(7, Fraction(189, 10)) == Fraction(49, 5)
    assert low_dim_variants(7, Fraction(7, 5))["gamma_sq"] == Fraction(49, 5)
    tau = ScalarPoly.variable("tau0")
    assert poly_identity(low_dim_variants(6, tau * 2)["gamma_sq"], tau * 8)
    assert poly_identity(killing_criterion(6, tau * 15), tau * 8)


def test_inequality_suite_cases():
    r = inequality_suite(B7)
    assert r.double_equality and r.killing_flag
    assert (r.torsion_status, r.sca_status) == ("equality", "equality")
    assert inequality_suite(EstimateInput(6, 1, 1, gamma_sq=1)).torsion_status == "strict"
    assert inequality_suite(EstimateInput(8, 1, 1, gamma_sq=17)).torsion_status == "violated"
    up = inequality_suite(B7.with_gamma_sq(B7.gamma_sq + Fraction(1, 10)))
    assert not up.killing_flag and up.torsion_status == "violated" and up.sca_status == "equality"
    down = inequality_suite(B7.with_gamma_sq(B7.gamma_sq - Fraction(1, 10)))
    assert not down.killing_flag and down.torsion_status == "strict"


def test_float_inputs():
    r = inequality_suite(EstimateInput(7, 18.9, 1.4, gamma_sq=9.8))
    assert r.double_equality
    with pytest.raises(ValueError):
        EstimateInput(7, 18.9, -1.0, 1.0)


def test_ric_coefficient_specializations():
    s = ScalarPoly.variable("s")
    one = ScalarPoly([1], "s")
    assert poly_identity(ric_coefficient(6, None), (one * 5 - s * s * 16) * Fraction(3, 8))
    assert poly_identity(ric_coefficient(7, None), (one * 9 - s * s * 16) / 4)
    assert poly_identity(ric_coefficient(3, None), (one - s * s * 16) * Fraction(3, 4))
    # with the Ric^s factor 6 gamma^2/n^2
    assert poly_identity(ric_coefficient(6, None) * Fraction(6 * 4, 36), (one * 5 - s * s * 16) / 4)
    assert poly_identity(ric_coefficient(7, None) * Fraction(6 * 7, 49), (one * 9 - s * s * 16) * Fraction(6, 28))
    assert poly_identity(ric_coefficient(3, None) * Fraction(6 * 4, 9), (one - s * s * 16) * 2)
    for n in range(3, 9):
        assert ric_coefficient(n, Fraction(0)) == Fraction(6 * (n - 1), 16)
        assert Fraction(6, n * n) * ric_coefficient(n, Fraction(0)) == Fraction(9 * (n - 1), 4 * n * n)
        assert Fraction(6, n * n) * ric_coefficient(n, Fraction(1, 4)) == Fraction(3 * (n - 3), n * n)
        assert poly_identity(ric_coefficient(n, None)(ExactScalar(Fraction(1, 3))),
                             ScalarPoly([ric_coefficient(n, Fraction(1, 3))], "s"))


def test_spinor_constants_b7():
    c = spinor_constants(7, GAMMA, Fraction(1, 2), Fraction(7, 5))
    assert c.kappa == -3 / (4 * S5)
    assert c.sca_g == Fraction(189, 10) and c.sca_c == Fraction(84, 5)
    assert c.dT_eig == Fraction(-42, 5) and c.sigma_eig == Fraction(-21, 5) and c.T_sq_eig == Fraction(49, 5)
    assert c.s_star == Fraction(3, 8)
    assert all(c.consistent().values())
    # a wrong torsion length is detected
    assert not all(spinor_constants(7, GAMMA, None, Fraction(8, 5)).consistent().values())


def test_spinor_constants_s3_and_npg2():
    c = spinor_constants(3, ExactScalar(2), ScalarPoly.variable("s"), 4)
    assert c.kappa == Fraction(1, 2)
    assert poly_identity(c.zeta, (ScalarPoly([1], "s") - ScalarPoly.variable("s") * 4) / 2)
    assert c.sca_g == 6 and c.sca_c == 0 and c.s_star is None
    assert all(c.consistent().values())
    tau = ScalarPoly.variable("tau0")
    g = tau * Fraction(-7, 6)
    k = g * Fraction(3, 28)
    assert poly_identity(k, tau * Fraction(-1, 8))


def test_beta_tw_equals_univ_on_equality_locus():
    sca = ScalarPoly.variable("sca")
    for n in range(4, 9):
        t2 = sca * Fraction(2 * (9 - n), 9 * (n - 1))
        inp = EstimateInput(n, sca, t2, gamma_sq=low_dim_variants(n, t2)["gamma_sq"])
        assert poly_identity(beta_tw(inp), beta_univ(inp))
