import json
from fractions import Fraction

import pytest

from torsionspin import catalog
from torsionspin.catalog import (B7_NOMIZU_PRINTED_E7_E26, b7_nomizu_expected, b7_t1_printed_matrix, build_b7,
                                 build_s3, dump_space, get_entry, load_space, scalar_suite)
from torsionspin.clifford import form_norm_sq, hodge_star
from torsionspin.errors import ParseError, UnknownTarget, ValidationError
from torsionspin.estimates import EstimateInput, beta_univ
from torsionspin.exactfield import ExactScalar
from torsionspin.homspace import invariant_d, nomizu, ricci, scalar, validate
from torsionspin.linalg import arrays_equal, charpoly, eye
from torsionspin.spinops import SpinGeometry, cubic_torsion, dirac, t_eigenvalue, t_spectrum_matrix
from torsionspin.spinrep import build_rep
from torsionspin.torsion import TorsionContext

S5 = ExactScalar.sqrt(5)


def _ratio(a, b):
    """The scalar r with a == r b."""
    mask, c = next(iter(b.terms.items()))
    r = a.terms[mask] / c
    assert a == b * r
    return r


def _dirac_sq_eigenvalue(geo, phi, H):
    Dphi = dirac(geo, phi, H)
    return _ratio_spinor(dirac(geo, Dphi, H), phi)


def _ratio_spinor(a, b):
    k = next(i for i, v in enumerate(b.data) if v)
    r = a.data[k] / b.data[k]
    assert a == b * r
    return r


def test_b7_expected_values_rederived():
    e = build_b7()
    ctx = TorsionContext.from_space(e.space, e.torsion)
    geo = SpinGeometry(ctx, build_rep(7))
    phi = geo.spinor(geo.invariant_basis()[0])
    gamma = t_eigenvalue(geo, phi)
    sca_g = scalar(e.space)
    sca_cubic = ctx.sca_s(Fraction(1, 12))
    omega = e.torsion * -S5
    derived = {
        "bracket_c": e.space.Cm[0, 1, 3],
        "tnorm2": form_norm_sq(e.torsion),
        "ric_g": ricci(e.space)[0, 0],
        "sca_g": sca_g,
        "gamma": gamma,
        "kappa": gamma * Fraction(3, 28),
        "sca_cubic": sca_cubic,
        "cubic_shift": _dirac_sq_eigenvalue(geo, phi, cubic_torsion(geo)),
        "beta": beta_univ(EstimateInput(7, sca_g, ctx.tnorm2, gamma)),
        "tau0": _ratio(invariant_d(e.space, omega), hodge_star(omega)),
    }
    assert set(derived) == set(e.expected)
    for key, (value, anchor) in e.expected.items():
        assert derived[key] == value, key
        assert anchor
    assert e.gamma == gamma == -7 / S5


def test_s3_expected_values_rederived():
    e = build_s3()
    geo = SpinGeometry(TorsionContext.from_space(e.space, e.torsion), build_rep(3))
    phi = geo.spinor(geo.invariant_basis()[0])
    gamma = t_eigenvalue(geo, phi)
    derived = {"ric_g": ricci(e.space)[0, 0], "sca_g": scalar(e.space), "gamma": gamma,
               "kappa": gamma * Fraction(3, 12)}
    assert set(derived) == set(e.expected)
    for key, (value, _) in e.expected.items():
        assert derived[key] == value, key


def test_b7_isotropy_lengths():
    for y in catalog.b7_isotropy():
        assert catalog._half_neg_trace(y, y) == 5
    frame = catalog.b7_frame()
    for i, a in enumerate(frame):
        for j, b in enumerate(frame):
            assert catalog._half_neg_trace(a, b) == (1 if i == j else 0)


def test_b7_nomizu_table():
    L = nomizu(build_b7().space, 0)
    for a in range(1, 8):
        for (i, j), v in b7_nomizu_expected(a).items():
            assert L[a - 1][j - 1, i - 1] == v
    # the printed e7 table carries the opposite sign on E26
    assert B7_NOMIZU_PRINTED_E7_E26 == -1
    assert L[6][5, 1] == 1 / S5 / 2


def test_printed_t1_matrix():
    e = build_b7()
    P = b7_t1_printed_matrix()
    M = build_rep(7).matrix(e.torsion)
    assert charpoly(P) == charpoly(M)
    assert t_spectrum_matrix(P).eigenvalues == [(-7 / S5, 1), (1 / S5, 7)]
    assert not arrays_equal(P, M)


@pytest.mark.parametrize("kind", ["NK6", "NPG2"])
def test_scalar_suites(kind):
    suite = scalar_suite(kind)
    assert len(suite) >= 12
    prefix = kind.lower() + "."
    ids = [cid for cid, _, _ in suite]
    assert len(ids) == len(set(ids))
    for cid, label, holds in suite:
        assert cid.startswith(prefix) and label
        assert holds, cid


def test_json_round_trip(tmp_path):
    for e in (build_b7(), build_s3()):
        data = dump_space(e)
        path = tmp_path / f"{e.name}.json"
        path.write_text(json.dumps(data))
        back = load_space(path)
        assert arrays_equal(back.space.C, e.space.C)
        assert back.torsion == e.torsion
        assert scalar(back.space) == scalar(e.space)
        assert load_space(json.dumps(data)).torsion == e.torsion
    assert dump_space(build_b7())["field"] == {"radicals": [3, 5]}


def test_su2_c1_user_space():
    data = {"name": "su2", "field": {"radicals": []}, "dim_k": 0, "dim_m": 3,
            "brackets": [[0, 1, [[2, 1]]], [1, 2, [[0, 1]]], [2, 0, [[1, 1]]]], "torsion": "canonical"}
    e = load_space(data)
    assert arrays_equal(ricci(e.space), eye(3) * Fraction(1, 2))


def test_load_errors():
    base = {"dim_k": 0, "dim_m": 3, "brackets": [[0, 1, [[2, 1]]], [1, 2, [[0, 1]]], [2, 0, [[1, 1]]]]}
    with pytest.raises(ValidationError):
        load_space({**base, "torsion": [[[0, 0, 1], "1"]]})
    with pytest.raises(ValidationError):
        load_space({**base, "torsion": [[[0, 1, 2], "1"], [[1, 0, 2], "1"]]})
    with pytest.raises(ValidationError) as info:
        load_space({**base, "brackets": base["brackets"] + [[0, 1, [[0, 1]]]]})
    assert "jacobi" in str(info.value)
    with pytest.raises(ValidationError):
        load_space({**base, "field": {"radicals": []}, "brackets": [[0, 1, [[2, "sqrt(2)"]]]]})
    with pytest.raises(ParseError):
        load_space("{not json")
    with pytest.raises(ParseError):
        load_space({"dim_k": 0})
    with pytest.raises(ParseError):
        load_space({**base, "brackets": [[0, 9, [[2, 1]]]]})
    with pytest.raises(UnknownTarget):
        get_entry("nope")


def test_explicit_torsion_accepted():
    base = {"dim_k": 0, "dim_m": 3, "brackets": [[0, 1, [[2, 2]]], [1, 2, [[0, 2]]], [2, 0, [[1, 2]]]]}
    e = load_space({**base, "torsion": [[[1, 0, 2], "-2"]]})
    assert e.torsion.coeff(1, 2, 3) == 2
    assert validate(e.space).ok
