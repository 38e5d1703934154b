import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsionspin.clifford import (Multivector, contract, form_norm_sq, hodge_star, sigma_t, torsion_vector,
                                  volume, wedge)
from torsionspin.errors import DimMismatch, NotA3Form, NotAVector
from torsionspin.exactfield import ExactScalar
from torsionspin.identities import IDENTITY_NAMES, check_identity, random_three_form, random_vector


# independent oracle: blades as index words, reduced by adjacent swaps
def _reduce_word(word):
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(w) - 1:
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                sign = -sign
                changed = True
            elif w[i] == w[i + 1]:
                del w[i:i + 2]
                sign = -sign  # e_i e_i = -1
                changed = True
                continue
            i += 1
    return sign, tuple(w)


def oracle_product(a: dict, b: dict) -> dict:
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            s, k = _reduce_word(ka + kb)
            out[k] = out.get(k, 0) + s * ca * cb
    return {k: v for k, v in out.items() if v}


def as_dict(m: Multivector) -> dict:
    out = {}
    for mask, c in m.terms.items():
        out[tuple(i + 1 for i in range(m.dim) if mask >> i & 1)] = c
    return out


def from_dict(n, d) -> Multivector:
    return Multivector.from_components(n, d) if d else Multivector(n)


def rand_mv(rng, n, terms=4):
    d = {}
    for _ in range(terms):
        k = rng.randint(0, n)
        idx = tuple(sorted(rng.sample(range(1, n + 1), k)))
        d[idx] = d.get(idx, 0) + rng.randint(-3, 3)
    return from_dict(n, {k: v for k, v in d.items() if v})


B7_T1 = [(1, 2, 4), (1, 3, 7), (1, 5, 6), (2, 3, 5), (2, 6, 7), (3, 4, 6), (4, 5, 7)]
STAR_OMEGA = {(1, 2, 3, 6): 1, (1, 2, 5, 7): -1, (1, 3, 4, 5): -1, (1, 4, 6, 7): 1,
              (2, 3, 4, 7): 1, (2, 4, 5, 6): -1, (3, 5, 6, 7): -1}


def b7_t1():
    c = -1 / ExactScalar.sqrt(5)
    return Multivector.from_components(7, {idx: c for idx in B7_T1})


def test_basic_relations():
    e1, e2 = Multivector.basis(3, 1), Multivector.basis(3, 2)
    assert e1 * e1 == Multivector.scalar(3, -1)
    assert e1 * e2 + e2 * e1 == 0
    assert wedge(e1, e1) == 0
    assert wedge(e1, Multivector.blade(3, (2, 3))) == Multivector.blade(3, (1, 2, 3))
    assert contract(Multivector.basis(4, 1), Multivector.blade(4, (1, 2, 3))) == Multivector.blade(4, (2, 3))
    assert contract(Multivector.basis(4, 4), Multivector.blade(4, (1, 2, 3))) == 0


def test_errors():
    with pytest.raises(DimMismatch):
        Multivector.basis(3, 1) * Multivector.basis(4, 1)
    with pytest.raises(NotAVector):
        contract(Multivector.blade(3, (1, 2)), Multivector.blade(3, (1, 2, 3)))
    with pytest.raises(NotA3Form):
        sigma_t(Multivector.blade(4, (1, 2)))
    with pytest.raises(NotA3Form):
        form_norm_sq(Multivector.basis(4, 1))


def test_product_against_oracle():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(3, 8)
        a, b = rand_mv(rng, n), rand_mv(rng, n)
        assert as_dict(a * b) == oracle_product(as_dict(a), as_dict(b))


def test_associativity():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(3, 7)
        a, b, c = rand_mv(rng, n), rand_mv(rng, n), rand_mv(rng, n)
        assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 8), st.lists(st.integers(-4, 4), min_size=8, max_size=8),
       st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_clifford_relation(n, x, y):
    X, E = Multivector.vector(n, x[:n]), Multivector.vector(n, y[:n])
    g = sum(a * b for a, b in zip(x[:n], y[:n]))
    assert E * X + X * E == Multivector.scalar(n, -2 * g)


def test_b7_torsion_data():
    T = b7_t1()
    assert form_norm_sq(T) == Fraction(7, 5)
    assert T * T == Multivector.scalar(7, Fraction(7, 5)) - sigma_t(T) * 2
    dT = Multivector.from_components(7, {k: Fraction(-6, 5) * v for k, v in STAR_OMEGA.items()})
    assert sigma_t(T) * 2 == dT
    assert torsion_vector(T, Multivector.basis(7, 1), Multivector.basis(7, 2)) == \
        Multivector.basis(7, 4) * (-1 / ExactScalar.sqrt(5))
    omega = T * -ExactScalar.sqrt(5)
    assert hodge_star(omega) == Multivector.from_components(7, STAR_OMEGA)
    assert hodge_star(hodge_star(omega)) == omega


def test_small_forms():
    assert form_norm_sq(Multivector.blade(3, (1, 2, 3))) == 1
    assert form_norm_sq(Multivector.blade(3, (1, 2, 3), -2)) == 4
    assert torsion_vector(Multivector.blade(3, (1, 2, 3)), Multivector.basis(3, 1), Multivector.basis(3, 2)) == \
        Multivector.basis(3, 3)
    assert hodge_star(volume(7)) == Multivector.scalar(7, 1)
    for n in (3, 4):
        rng = random.Random(n)
        for _ in range(20):
            assert sigma_t(random_three_form(rng, n)) == 0


def test_hodge_convention():
    # e_I ∧ *e_I = vol for every blade
    n = 5
    for k in range(n + 1):
        for idx in combinations(range(1, n + 1), k):
            b = Multivector.blade(n, idx)
            assert wedge(b, hodge_star(b)) == volume(n)


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_identities_random(name):
    rng = random.Random(IDENTITY_NAMES.index(name))
    for _ in range(40):
        n = rng.randint(3, 8)
        T, X = random_three_form(rng, n), random_vector(rng, n)
        assert check_identity(name, T, X), (name, str(T), str(X))


def test_wedge_split_oracle():
    # for a 3-form, X∧T = ½(X·T − T·X) through the oracle product
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(4, 8)
        T, X = random_three_form(rng, n), random_vector(rng, n)
        xt = oracle_product(as_dict(X), as_dict(T))
        tx = oracle_product(as_dict(T), as_dict(X))
        half = {k: Fraction(xt.get(k, 0) - tx.get(k, 0), 2) for k in set(xt) | set(tx)}
        assert wedge(X, T) == from_dict(n, {k: v for k, v in half.items() if v})


def test_str_format():
    T = b7_t1()
    assert str(T).startswith("-1/5*sqrt(5)*e124")
    assert str(Multivector(4)) == "0"
    assert str(Multivector.blade(4, (1, 2)) - Multivector.scalar(4, 2)) == "-2 + e12"
