from fractions import Fraction

import numpy as np
import pytest

from torsionspin.catalog import b7_star_omega, build_b7, build_s3, s3_structure
from torsionspin.clifford import Multivector, hodge_star, sigma_t
from torsionspin.errors import NotInvariant, NotNaturallyReductive
from torsionspin.exactfield import ExactScalar
from torsionspin.homspace import (ReductiveSpace, canonical_torsion, curvature, invariant_d, invariant_delta,
                                  is_invariant, nomizu, ricci, scalar, validate)
from torsionspin.linalg import FLOAT, array_is_zero, arrays_equal, eye, lower_array, zeros

S5 = ExactScalar.sqrt(5)


@pytest.fixture(scope="module")
def b7():
    return build_b7()


@pytest.fixture(scope="module")
def s3():
    return build_s3()


def test_b7_validates_and_brackets(b7):
    rep = validate(b7.space)
    assert rep.ok and [c.name for c in rep.checks] == [
        "antisymmetry", "jacobi", "reductive", "invariant_metric", "naturally_reductive"]
    Cm = b7.space.Cm
    for i in range(7):
        j, k = (i + 1) % 7, (i + 3) % 7
        want = [ExactScalar()] * 7
        want[k] = 1 / S5
        assert list(Cm[i, j]) == want


def test_su2_validates():
    sp = ReductiveSpace("su2", 0, 3, s3_structure(1, sign=1))
    assert validate(sp).ok
    assert arrays_equal(ricci(sp), eye(3) * Fraction(1, 2))


def test_perturbed_jacobi_witness():
    C = s3_structure(1).copy()
    C[0, 1, 0], C[1, 0, 0] = ExactScalar(1), ExactScalar(-1)
    rep = validate(ReductiveSpace("bad", 0, 3, C))
    assert not rep.ok
    assert rep["jacobi"].witness == (0, 1, 2)
    with pytest.raises(NotNaturallyReductive):
        canonical_torsion(ReductiveSpace("bad", 0, 3, C))


def test_canonical_torsions(b7):
    assert canonical_torsion(b7.space) == b7.torsion
    assert canonical_torsion(build_s3(sign=1).space) == Multivector.blade(3, (1, 2, 3), -2)
    assert canonical_torsion(build_s3().space) == Multivector.blade(3, (1, 2, 3), 2)
    abelian = ReductiveSpace("flat", 0, 4, zeros((4, 4, 4)))
    assert canonical_torsion(abelian) == 0


def test_nomizu_maps(b7):
    L = nomizu(b7.space, 0)
    c2 = 1 / S5 / 2
    W = zeros((7, 7))
    for i, j in [(2, 4), (3, 7), (5, 6)]:
        W[j - 1, i - 1], W[i - 1, j - 1] = c2, -c2
    assert arrays_equal(L[0], W)
    for t in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        for a, m in zip(nomizu(b7.space, t), L):
            assert arrays_equal(a, m * ExactScalar(1 - t))
            assert arrays_equal(a, -a.T)
    assert all(array_is_zero(m) for m in nomizu(b7.space, 1))


def test_curvature_values(b7, s3):
    assert arrays_equal(ricci(s3.space), eye(3) * 2)
    assert scalar(s3.space) == 6
    assert all(array_is_zero(m) for row in curvature(s3.space, 1) for m in row)
    Ric = ricci(b7.space)
    assert arrays_equal(Ric, eye(7) * Fraction(27, 10))
    assert arrays_equal(Ric, Ric.T)
    assert scalar(b7.space) == Fraction(189, 10)


def test_invariant_calculus(b7):
    T = b7.torsion
    dT = invariant_d(b7.space, T)
    assert dT == b7_star_omega() * Fraction(-6, 5)
    assert dT == sigma_t(T) * 2
    omega = T * -S5
    assert invariant_d(b7.space, omega) == hodge_star(omega) * (6 / S5)
    assert invariant_delta(b7.space, T) == 0
    assert invariant_delta(b7.space, omega) == 0
    assert is_invariant(b7.space, b7_star_omega())
    with pytest.raises(NotInvariant):
        invariant_d(b7.space, Multivector.basis(7, 1))


def test_s3_dT_equals_sigma(s3):
    assert invariant_d(s3.space, s3.torsion) == sigma_t(s3.torsion) * 2 == 0


def test_float_twin(b7):
    fl = b7.space.lowered()
    R = ricci(fl)
    assert np.allclose(lower_array(R), 2.7 * np.eye(7))
    assert abs(complex(scalar(fl)) - 18.9) < 1e-12
    assert fl.mode == FLOAT
