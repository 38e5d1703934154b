"""Built-in example spaces, the formula-level NK6/NPG2 tables, and a JSON loader.

B7 is SO(5)/SO(3)^ir with the normal metric (A, B) = -tr(AB)/2; S3 is SU(2) as
a symmetric-looking reductive space with trivial isotropy. NK6 and NPG2 are
tables of relations in the parameter tau0, checked as polynomial identities.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .clifford import Multivector
from .errors import ParseError, UnknownTarget, ValidationError
from .estimates import EstimateInput, beta_tw, beta_univ, killing_criterion, ric_coefficient, spinor_constants
from .exactfield import ExactScalar, ScalarPoly, parse_scalar, poly_identity
from .homspace import ReductiveSpace, canonical_torsion, from_matrix_algebra, validate
from .linalg import EXACT, FLOAT, exact_array, zeros

CATALOG_NAMES = ("b7", "s3", "nk6-table", "npg2-table")

_S3 = ExactScalar.sqrt(3)
_S5 = ExactScalar.sqrt(5)


@dataclass
class CatalogEntry:
    name: str
    space: ReductiveSpace | None
    torsion: Multivector | None
    expected: dict = field(default_factory=dict)  # key -> (value, anchor label)
    gamma: object = None


def _E(i: int, j: int):
    """E_{i,j} in so(5): e_i -> e_j, e_j -> -e_i (1-based)."""
    M = zeros((5, 5))
    M[j - 1, i - 1] = ExactScalar(1)
    M[i - 1, j - 1] = ExactScalar(-1)
    return M


def _half_neg_trace(A, B):
    P = A @ B
    acc = ExactScalar()
    for i in range(P.shape[0]):
        acc = acc + P[i, i]
    return -acc / 2


def b7_isotropy():
    """Images of the so(3) generators y1, y2, y3 inside so(5)."""
    y1 = _E(1, 5) * _S3 - _E(2, 5) + _E(3, 4)
    y2 = -_E(1, 4) * _S3 - _E(2, 4) - _E(3, 5)
    y3 = _E(2, 3) * 2 + _E(4, 5)
    return [y1, y2, y3]


def b7_frame():
    E = _E
    two_over = 2 / _S5
    return [
        -E(1, 2),
        -E(1, 3),
        -(E(1, 4) - E(3, 5) * _S3) / 2,
        (E(2, 3) - E(4, 5) * 2) / _S5,
        (E(2, 5) + E(3, 4) / 4 + E(1, 5) * _S3 / 4) * two_over,
        (E(1, 5) - E(3, 4) * _S3) / 2,
        (E(2, 4) - E(3, 5) / 4 - E(1, 4) * _S3 / 4) * two_over,
    ]


B7_TRIPLES = ((1, 2, 4), (1, 3, 7), (1, 5, 6), (2, 3, 5), (2, 6, 7), (3, 4, 6), (4, 5, 7))
B7_STAR_OMEGA = (((1, 2, 3, 6), 1), ((1, 2, 5, 7), -1), ((1, 3, 4, 5), -1), ((1, 4, 6, 7), 1),
                 ((2, 3, 4, 7), 1), ((2, 4, 5, 6), -1), ((3, 5, 6, 7), -1))
# printed action of T1 on the real 8-dim spinor module, up to the factor -1/sqrt(5)
B7_T1_PRINTED = (
    (0, -1, -1, 1, -1, -1, 1, 1),
    (-1, 0, 1, -1, 1, 1, -1, -1),
    (-1, 1, 0, -1, 1, 1, -1, -1),
    (1, -1, -1, 0, -1, -1, 1, 1),
    (-1, 1, 1, -1, 0, 1, -1, -1),
    (-1, 1, 1, -1, 1, 0, -1, -1),
    (1, -1, -1, 1, -1, -1, 0, 1),
    (1, -1, -1, 1, -1, -1, 1, 0),
)


# Levi-Civita Nomizu maps Λ^g(e_a) in units of c/2, as signed E_{i,j} terms.
# The E_{2,6} sign for e7 is the one forced by T1 (printed tables carry -E_{2,6}).
B7_NOMIZU = {
    1: (((2, 4), 1), ((3, 7), 1), ((5, 6), 1)),
    2: (((1, 4), -1), ((3, 5), 1), ((6, 7), 1)),
    3: (((1, 7), -1), ((2, 5), -1), ((4, 6), 1)),
    4: (((1, 2), 1), ((3, 6), -1), ((5, 7), 1)),
    5: (((1, 6), -1), ((2, 3), 1), ((4, 7), -1)),
    6: (((1, 5), 1), ((2, 7), -1), ((3, 4), 1)),
    7: (((1, 3), 1), ((2, 6), 1), ((4, 5), 1)),
}
B7_NOMIZU_PRINTED_E7_E26 = -1


def b7_nomizu_expected(a: int) -> dict:
    half_c = 1 / (2 * _S5)
    return {ij: half_c * s for ij, s in B7_NOMIZU[a]}


def b7_t1_expected() -> Multivector:
    return Multivector.from_components(7, {t: -1 / _S5 for t in B7_TRIPLES})


def b7_star_omega() -> Multivector:
    return Multivector.from_components(7, {t: ExactScalar(c) for t, c in B7_STAR_OMEGA})


def b7_t1_printed_matrix():
    return exact_array(B7_T1_PRINTED) * (-1 / _S5)


def build_b7(mode: str = EXACT) -> CatalogEntry:
    names = ["y1", "y2", "y3"] + [f"e{i}" for i in range(1, 8)]
    space = from_matrix_algebra("b7", b7_isotropy(), b7_frame(), _half_neg_trace, EXACT, names)
    rep = validate(space)
    if not rep.ok:
        raise ValidationError(f"B7 structure constants failed validation: {rep.failures}")
    if mode == FLOAT:
        space = space.lowered()
    T = canonical_torsion(space)
    gamma = -7 / _S5
    expected = {
        "bracket_c": (1 / _S5, "bracket constant of B7"),
        "tnorm2": (ExactScalar(Fraction(7, 5)), "torsion length of B7"),
        "ric_g": (ExactScalar(Fraction(27, 10)), "Einstein constant of B7"),
        "sca_g": (ExactScalar(Fraction(189, 10)), "scalar curvature of B7"),
        "gamma": (gamma, "negative T-eigenvalue on B7"),
        "kappa": (-3 / (4 * _S5), "Killing number of B7"),
        "sca_cubic": (ExactScalar(Fraction(560, 30)), "scalar curvature for torsion T/3 on B7"),
        "cubic_shift": (ExactScalar(Fraction(49, 20)), "cubic Dirac square shift on B7"),
        "beta": (ExactScalar(Fraction(49, 20)), "estimates on B7"),
        "tau0": (6 / _S5, "nearly parallel G2 parameter of B7"),
    }
    return CatalogEntry("b7", space, T, expected, gamma)


def s3_structure(c=2, sign: int = -1, mode: str = EXACT) -> np.ndarray:
    """su(2) with [e_i, e_j] = sign * c * eps_ijk e_k, no isotropy."""
    C = zeros((3, 3, 3), mode)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        v = ExactScalar(c) * sign if mode == EXACT else float(c * sign)
        C[i, j, k] = v
        C[j, i, k] = -v
    return C


def build_s3(mode: str = EXACT, sign: int = -1) -> CatalogEntry:
    """S3 with curvature 1; sign = -1 gives torsion +2 e123 acting as +2 on Delta_3."""
    space = ReductiveSpace("s3", 0, 3, s3_structure(2, sign, EXACT), EXACT, ["e1", "e2", "e3"])
    rep = validate(space)
    if not rep.ok:
        raise ValidationError(f"S3 structure constants failed validation: {rep.failures}")
    if mode == FLOAT:
        space = space.lowered()
    T = canonical_torsion(space)
    expected = {
        "ric_g": (ExactScalar(2), "Einstein constant of S3"),
        "sca_g": (ExactScalar(6), "scalar curvature of S3"),
        "gamma": (ExactScalar(2 if sign < 0 else -2), "T-eigenvalue on S3"),
        "kappa": (ExactScalar(Fraction(1, 2)), "Killing number of S3"),
    }
    return CatalogEntry("s3", space, T, expected, expected["gamma"][0])


# ---- formula tables ----

_tau = ScalarPoly([0, 1], "tau0")


def _c(x) -> ScalarPoly:
    return ScalarPoly.coerce(x, "tau0")


def scalar_suite(kind: str) -> list[tuple[str, str, bool]]:
    """[(identity_id, anchor label, holds)] for the NK6 or NPG2 table."""
    kind = kind.upper()
    if kind == "NK6":
        return _nk6_suite()
    if kind == "NPG2":
        return _npg2_suite()
    raise UnknownTarget(f"no scalar suite named {kind!r}")


def _nk6_suite():
    n = 6
    t = _tau
    tn2 = t * 2
    g2 = t * 8  # gamma^2
    sca_g = t * 15
    sca_c = t * 12
    ric_g = t * Fraction(5, 2)
    ric_c = t * 2
    dT_eig = t * -6
    sig_eig = t * -3
    out = []

    def add(key, label, lhs, rhs):
        out.append((f"nk6.{key}", label, poly_identity(_c(lhs), _c(rhs))))

    add("sca_g.klik", "scalar curvature via Killing criterion", sca_g, g2 * Fraction(9 * (n - 1), 4 * n))
    add("sca_g.known", "scalar curvature via parallel spinor", sca_g, g2 * 2 - tn2 / 2)
    add("sca_g.lowdim", "scalar curvature low-dimensional variant", sca_g, tn2 * Fraction(9 * (n - 1), 2 * (9 - n)))
    add("gamma_sq.lowdim", "gamma squared low-dimensional variant", g2, tn2 * Fraction(2 * n, 9 - n))
    add("gamma_sq.norm", "gamma = +-2|T|", g2, tn2 * 4)
    add("sca_c.gamma", "characteristic scalar curvature via gamma", sca_c, g2 * Fraction(3 * (n - 3), n))
    add("sca_c.known", "characteristic scalar curvature via parallel spinor", sca_c, (g2 - tn2) * 2)
    add("sca_c.family", "characteristic scalar curvature from the s-family", sca_c, sca_g - tn2 * Fraction(24, 16))
    add("ric_g.trace", "Einstein constant", ric_g * n, sca_g)
    add("ric_c.trace", "characteristic Einstein constant", ric_c * n, sca_c)
    add("ric_c.S", "Ric^c = Ric^g - S/4 with S = 6|T|^2/n", ric_c, ric_g - tn2 * Fraction(6, n) / 4)
    add("dT.klik", "dT eigenvalue via gamma", dT_eig, g2 * Fraction(-3 * (n - 3), 2 * n))
    add("dT.norm", "dT eigenvalue = -6|T|^2 / 2", dT_eig, tn2 * -3)
    add("dT.sca_c", "Sca^c = -2 dT", sca_c, dT_eig * -2)
    add("sigma.sca_c", "sigma_T eigenvalue = -Sca^c/4", sig_eig, sca_c / -4)
    add("sigma.dT", "dT = 2 sigma_T", dT_eig, sig_eig * 2)
    add("T_sq", "T^2 eigenvalue = (2 Sca^g + |T|^2)/4", g2, (sca_g * 2 + tn2) / 4)
    add("kappa_sq", "Killing number squared tau0/8", (g2 * 9) / (16 * n * n), t / 8)
    add("sca_g.kappa", "Sca^g = 4n(n-1) kappa^2", sca_g, (t / 8) * (4 * n * (n - 1)))
    inp = EstimateInput(n, sca_g, tn2, gamma_sq=g2)
    add("beta_univ", "universal estimate 2 tau0", beta_univ(inp), t * 2)
    add("beta_tw", "twistorial estimate 2 tau0", beta_tw(inp), t * 2)
    add("beta.sca", "estimate = (2/15) Sca^g", beta_univ(inp), sca_g * Fraction(2, 15))
    add("killing_criterion", "(dagger) gamma^2 = 4n Sca/(9(n-1))", killing_criterion(n, sca_g), g2)
    for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1, 12)):
        coeff = g2 * Fraction(6, n * n) * ric_coefficient(n, s)
        ric_s = ric_g - tn2 * (Fraction(6, n) * 4 * s * s)
        add(f"ric_s[{s}]", f"Ric^s coefficient at s={s}", coeff, ric_s)
        add(f"ric_s.exnk[{s}]", f"Ric^s = (5-16s^2)|T|^2/4 at s={s}", ric_s, tn2 * ((5 - 16 * s * s) / Fraction(4)))
    for s in (Fraction(0), Fraction(1, 2)):
        zeta_sq = g2 * (Fraction(3 * (1 - 4 * s), 4 * n)) ** 2
        add(f"zeta_sq[{s}]", f"Killing number squared at s={s}", zeta_sq, t * ((1 - 4 * s) ** 2 / Fraction(8)))
    return out


def _npg2_suite():
    n = 7
    t = _tau
    t2 = t * t
    tn2 = t2 * Fraction(7, 36)
    g2 = t2 * Fraction(49, 36)  # gamma = -7 tau0 / 6
    gam = t * Fraction(-7, 6)
    sca_g = t2 * Fraction(21, 8)
    sca_c = t2 * Fraction(7, 3)
    ric_g = t2 * Fraction(3, 8)
    dT_eig = t2 * Fraction(-7, 6)
    sig_eig = t2 * Fraction(-7, 12)
    kappa = t * Fraction(-1, 8)
    out = []

    def add(key, label, lhs, rhs):
        out.append((f"npg2.{key}", label, poly_identity(_c(lhs), _c(rhs))))

    add("gamma_sq.norm", "gamma = -sqrt7 |T|", g2, tn2 * 7)
    add("gamma.sq", "gamma^2 from gamma", gam * gam, g2)
    add("sca_g.klik", "scalar curvature via Killing criterion", sca_g, g2 * Fraction(9 * (n - 1), 4 * n))
    add("sca_g.known", "scalar curvature via parallel spinor", sca_g, g2 * 2 - tn2 / 2)
    add("sca_g.lowdim", "scalar curvature low-dimensional variant", sca_g, tn2 * Fraction(9 * (n - 1), 2 * (9 - n)))
    add("gamma_sq.lowdim", "gamma squared low-dimensional variant", g2, tn2 * Fraction(2 * n, 9 - n))
    add("sca_c.gamma", "characteristic scalar curvature via gamma", sca_c, g2 * Fraction(3 * (n - 3), n))
    add("sca_c.known", "characteristic scalar curvature via parallel spinor", sca_c, (g2 - tn2) * 2)
    add("sca_c.family", "characteristic scalar curvature from the s-family", sca_c, sca_g - tn2 * Fraction(24, 16))
    add("ric_g.trace", "Einstein constant", ric_g * n, sca_g)
    add("dT.klik", "dT eigenvalue via gamma", dT_eig, g2 * Fraction(-3 * (n - 3), 2 * n))
    add("dT.norm", "dT eigenvalue = -6|T|^2", dT_eig, tn2 * -6)
    add("dT.sca_c", "Sca^c = -2 dT", sca_c, dT_eig * -2)
    add("sigma.sca_c", "sigma_T eigenvalue = -Sca^c/4", sig_eig, sca_c / -4)
    add("sigma.dT", "dT = 2 sigma_T", dT_eig, sig_eig * 2)
    add("T_sq", "T^2 eigenvalue = (2 Sca^g + |T|^2)/4", g2, (sca_g * 2 + tn2) / 4)
    add("kappa", "Killing number kappa = 3 gamma/(4n)", kappa, gam * Fraction(3, 4 * n))
    add("dirac_g", "D^g eigenvalue = -n kappa = 7 tau0/8", kappa * -n, t * Fraction(7, 8))
    add("sca_g.kappa", "Sca^g = 4n(n-1) kappa^2", sca_g, kappa * kappa * (4 * n * (n - 1)))
    add("contraction", "(X ⌟ T) phi0 = -(3 gamma/n) X phi0 = tau0/2 X phi0", gam * Fraction(-3, n), t / 2)
    inp = EstimateInput(n, sca_g, tn2, gamma_sq=g2)
    add("beta_univ", "universal estimate 49/144 tau0^2", beta_univ(inp), t2 * Fraction(49, 144))
    add("beta_tw", "twistorial estimate 49/144 tau0^2", beta_tw(inp), t2 * Fraction(49, 144))
    add("beta.sca", "estimate = (7/54) Sca^g", beta_univ(inp), sca_g * Fraction(7, 54))
    add("killing_criterion", "(dagger) gamma^2 = 4n Sca/(9(n-1))", killing_criterion(n, sca_g), g2)
    for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 8)):
        coeff = g2 * Fraction(6, n * n) * ric_coefficient(n, s)
        want = t2 * ((9 - 16 * s * s) / Fraction(24))
        add(f"ric_s[{s}]", f"Ric^s = (9-16s^2) tau0^2/24 at s={s}", coeff, want)
        add(f"ric_s.exg2[{s}]", f"Ric^s = 6(9-16s^2)|T|^2/28 at s={s}", want, tn2 * (6 * (9 - 16 * s * s) / Fraction(28)))
        zeta = gam * Fraction(3 * (1 - 4 * s), 4 * n)
        add(f"zeta[{s}]", f"Killing number with torsion (4s-1) tau0/8 at s={s}", zeta, t * ((4 * s - 1) / Fraction(8)))
    return out


# ---- JSON space definitions ----


def _coeff_to_json(x) -> str:
    return str(ExactScalar(x))


def dump_space(entry: CatalogEntry) -> dict:
    space = entry.space
    C = space.C
    N = space.dim_k + space.dim_m
    brackets = []
    for i in range(N):
        for j in range(i + 1, N):
            terms = [[k, _coeff_to_json(C[i, j, k])] for k in range(N) if C[i, j, k]]
            if terms:
                brackets.append([i, j, terms])
    radicals = sorted({g for i in range(N) for j in range(N) for k in range(N)
                       for g in ExactScalar(C[i, j, k]).tower})
    torsion = "canonical"
    if entry.torsion is not None and entry.torsion != canonical_torsion(space):
        torsion = [[[b - 1 for b in _indices(m)], _coeff_to_json(c)] for m, c in sorted(entry.torsion.terms.items())]
    return {
        "name": entry.name,
        "field": {"radicals": radicals},
        "dim_k": space.dim_k,
        "dim_m": space.dim_m,
        "brackets": brackets,
        "torsion": torsion,
    }


def _indices(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _parse_coeff(v) -> ExactScalar:
    if isinstance(v, bool):
        raise ParseError(f"bad coefficient {v!r}")
    if isinstance(v, int):
        return ExactScalar(v)
    if isinstance(v, str):
        return parse_scalar(v)
    raise ParseError(f"coefficients must be integers or strings, got {v!r}")


def _perm_parity(idx) -> int:
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def _declared_radicals(field) -> set | None:
    """Generators from {"radicals": [...]}; None when no field is declared."""
    if field is None:
        return None
    if not isinstance(field, dict) or not isinstance(field.get("radicals", []), list):
        raise ParseError('field must look like {"radicals": [-1, 3, 5]}')
    out = set()
    for d in field.get("radicals", []):
        if isinstance(d, bool) or not isinstance(d, int) or d in (0, 1):
            raise ParseError(f"bad radical {d!r}")
        out.update(ExactScalar.sqrt(d).tower)
    return out


def _check_field(c: ExactScalar, allowed, where) -> None:
    if allowed is not None and not set(c.tower) <= allowed:
        raise ValidationError(f"coefficient {c} at {where!r} leaves the declared field {sorted(allowed)}")


def space_from_json(data: dict, name_hint: str = "user") -> CatalogEntry:
    try:
        dim_k = int(data["dim_k"])
        dim_m = int(data["dim_m"])
        brackets = data["brackets"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"space definition missing field: {exc}") from exc
    if dim_k < 0 or dim_m < 1:
        raise ParseError("dim_k must be >= 0 and dim_m >= 1")
    N = dim_k + dim_m
    allowed = _declared_radicals(data.get("field"))
    C = zeros((N, N, N))
    for entry in brackets:
        try:
            i, j, terms = entry
            i, j = int(i), int(j)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad bracket entry {entry!r}") from exc
        if not (0 <= i < N and 0 <= j < N) or i == j:
            raise ParseError(f"bracket indices out of range: {entry!r}")
        for term in terms:
            try:
                k, c = term
                k = int(k)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad bracket term {term!r}") from exc
            if not 0 <= k < N:
                raise ParseError(f"bracket target out of range: {term!r}")
            c = _parse_coeff(c)
            _check_field(c, allowed, term)
            C[i, j, k] = C[i, j, k] + c
            C[j, i, k] = C[j, i, k] - c
    name = str(data.get("name", name_hint))
    space = ReductiveSpace(name, dim_k, dim_m, C, EXACT)
    report = validate(space)
    if not report.ok:
        bad = [f"{c.name}: {c.witness}" for c in report.checks if not c.passed]
        raise ValidationError("invalid space: " + "; ".join(bad))
    torsion = data.get("torsion", "canonical")
    if torsion == "canonical":
        T = canonical_torsion(space)
    else:
        T = _torsion_from_json(torsion, dim_m)
    return CatalogEntry(name, space, T, {}, None)


def _torsion_from_json(torsion, n: int) -> Multivector:
    if not isinstance(torsion, list):
        raise ParseError("torsion must be 'canonical' or a list of [[i, j, k], coeff]")
    comps: dict = {}
    for entry in torsion:
        try:
            idx, c = entry
            idx = [int(x) for x in idx]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad torsion entry {entry!r}") from exc
        if len(idx) != 3 or not all(0 <= x < n for x in idx):
            raise ParseError(f"torsion indices must be three m-indices: {entry!r}")
        c = _parse_coeff(c)
        if len(set(idx)) < 3:
            if c:
                raise ValidationError(f"torsion not skew: repeated index with nonzero value at {idx}")
            continue
        key = tuple(sorted(idx))
        val = c * _perm_parity(idx)
        if key in comps and comps[key] != val:
            raise ValidationError(f"torsion not skew: inconsistent values for {key}")
        comps[key] = val
    return Multivector.from_components(n, {tuple(i + 1 for i in k): v for k, v in comps.items()})


def load_space(source) -> CatalogEntry:
    """Load a space from a JSON path, JSON text, or an already parsed dict."""
    if isinstance(source, dict):
        return space_from_json(source)
    text = source
    hint = "user"
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        hint = path.stem
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("space definition must be a JSON object")
    return space_from_json(data, hint)


def get_entry(name: str, mode: str = EXACT) -> CatalogEntry:
    if name == "b7":
        return build_b7(mode)
    if name == "s3":
        return build_s3(mode)
    raise UnknownTarget(f"unknown catalog space {name!r}; known: {', '.join(CATALOG_NAMES)}")
