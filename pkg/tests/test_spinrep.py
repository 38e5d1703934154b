import random

import numpy as np
import pytest

from torsionspin.clifford import Multivector
from torsionspin.errors import NotSkew, UnsupportedDim
from torsionspin.exactfield import ExactScalar
from torsionspin.linalg import FLOAT, arrays_equal, commutator, eye, lower_array, zeros
from torsionspin.spinops import t_spectrum_matrix
from torsionspin.spinrep import SpinorVec, act, build_rep, spin_lift

from .test_clifford import b7_t1, rand_mv


@pytest.mark.parametrize("n", range(3, 9))
def test_anticommutation(n):
    rep = build_rep(n)
    I = rep.identity()
    for i in range(n):
        for j in range(n):
            g = rep.gamma[i] @ rep.gamma[j] + rep.gamma[j] @ rep.gamma[i]
            want = I * (-2) if i == j else rep.zeros()
            assert arrays_equal(g, want)
        assert arrays_equal(rep.gamma[i] @ (-rep.gamma[i]), I)
    assert rep.dim == 2 ** (n // 2)


def test_unsupported_dims():
    for n in (2, 9):
        with pytest.raises(UnsupportedDim):
            build_rep(n)


def test_real_seven():
    rep = build_rep(7)
    for g in rep.gamma:
        for v in g.reshape(-1):
            assert v in (0, 1, -1)
    assert rep.volume_sign in (1, -1)
    vol = rep.matrix(Multivector.blade(7, range(1, 8)))
    assert arrays_equal(vol, rep.identity() * rep.volume_sign)


def test_act_is_representation():
    rng = random.Random(8)
    for n in (3, 4, 5, 7):
        rep = build_rep(n)
        for _ in range(25):
            a, b = rand_mv(rng, n, 3), rand_mv(rng, n, 3)
            assert arrays_equal(rep.matrix(a * b), rep.matrix(a) @ rep.matrix(b))
        v = SpinorVec(rep, [ExactScalar(k + 1) for k in range(rep.dim)])
        assert act(Multivector.scalar(n, 1), v) == v
        e = Multivector.basis(n, 1)
        assert act(e, act(e, v)) == -v


def test_b7_torsion_and_omega_spectra():
    rep = build_rep(7)
    T = b7_t1()
    spec = t_spectrum_matrix(rep.matrix(T))
    s5 = ExactScalar.sqrt(5)
    assert [(v, m) for v, m in spec.eigenvalues] == [(-7 / s5, 1), (1 / s5, 7)]
    W = rep.matrix(T * -s5)
    I = rep.identity()
    assert arrays_equal((W - I * 7) @ (W + I), rep.zeros())
    ew = np.linalg.eigvalsh(lower_array(W).real)
    assert np.allclose(sorted(ew), [-1] * 7 + [7])
    # the eigenvalue -7/sqrt5 line of T is the +7 line of omega
    phi = SpinorVec(rep, spec.eigenspace(-7 / s5)[0])
    assert act(T * -s5, phi) == phi * 7


def test_spin_lift():
    rep = build_rep(5)
    assert arrays_equal(spin_lift(zeros((5, 5)), rep), rep.zeros())
    E12 = zeros((5, 5))
    E12[0, 1], E12[1, 0] = ExactScalar(-1), ExactScalar(1)
    assert arrays_equal(spin_lift(E12, rep), rep.gamma[0] @ rep.gamma[1] / 2)
    rng = random.Random(1)
    for _ in range(10):
        A, B = zeros((5, 5)), zeros((5, 5))
        for i in range(5):
            for j in range(i + 1, 5):
                a, b = rng.randint(-2, 2), rng.randint(-2, 2)
                A[j, i], A[i, j] = ExactScalar(a), ExactScalar(-a)
                B[j, i], B[i, j] = ExactScalar(b), ExactScalar(-b)
        lhs = spin_lift(commutator(A, B), rep)
        rhs = commutator(spin_lift(A, rep), spin_lift(B, rep))
        assert arrays_equal(lhs, rhs)
    bad = eye(5)
    with pytest.raises(NotSkew):
        spin_lift(bad, rep)


def test_float_rep_matches():
    ex, fl = build_rep(6), build_rep(6, FLOAT)
    for a, b in zip(ex.gamma, fl.gamma):
        assert np.allclose(lower_array(a), b)
