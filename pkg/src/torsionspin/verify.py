"""Verification drivers behind `torsionspin verify` and `torsionspin fuzz`."""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog
from .catalog import CatalogEntry
from .clifford import Multivector, contract, form_norm_sq, hodge_star, sigma_t, torsion_vector, wedge
from .errors import PreconditionFailed, TorsionSpinError, UnknownTarget
from .estimates import (EstimateInput, beta_tw, beta_univ, inequality_suite, killing_criterion,
                        low_dim_variants, ric_coefficient, spinor_constants)
from .exactfield import ExactScalar, ScalarPoly, lower
from .homspace import (canonical_torsion, curvature, invariant_d, invariant_delta, nomizu, ricci,
                       scalar, scalar_from_ricci, validate)
from .identities import IDENTITY_NAMES, identity_sides, random_three_form, random_vector
from .linalg import EXACT, FLOAT, array_is_zero, charpoly, eye, lower_array
from .report import Collector, Report, adapt, same
from .spinops import (IdentityKind, SpinGeometry, SuperConnection, _num, classes_coincide, cubic_torsion,
                      curvature_identity_check, dirac, eigenspinor_relation_check, nabla_spinor,
                      spinor_classes, t_eigenvalue, t_spectrum, t_spectrum_matrix, twistor_kernel,
                      twistor_residual)
from .spinrep import build_rep
from .torsion import TorsionContext, nabla_s_torsion_check, ric_consistency, sca_s

CUBIC_NOTE = ("cubic Dirac operator: torsion T/3, which is the s = 1/12 member of the 4sT family; "
              "the same operator is written D^{1/3} when the family is parameterized by the torsion scale")


def _w(x):
    """JSON-safe witness."""
    if isinstance(x, (list, tuple)):
        return [_w(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def _frames_where(pred, n: int):
    """First 1-based frame index where pred(a) is False, or None."""
    for a in range(n):
        if not pred(a):
            return a + 1
    return None


def _geometry(entry: CatalogEntry, mode: str):
    ctx = TorsionContext.from_space(entry.space, entry.torsion)
    geo = SpinGeometry(ctx, build_rep(ctx.n, mode))
    return ctx, geo


def _algebra_checks(c: Collector, p: str, entry: CatalogEntry, label: str):
    rep = validate(entry.space)
    for chk in rep.checks:
        c.true(f"{p}.algebra.{chk.name}", f"{label}: {chk.name.replace('_', ' ')}", chk.passed,
               witness=None if chk.passed else {"indices": _w(chk.witness)})


def _spinor_section(c: Collector, p: str, geo: SpinGeometry, phi, gamma, label: str, s_values):
    """Checks shared by every space with a ∇^c-parallel T-eigenspinor φ."""
    num, n, T, mode = geo.num, geo.n, geo.T, geo.mode
    c.eq(f"{p}.spinor.t_eigenvalue", f"{label}: T acts on the parallel spinor", t_eigenvalue(geo, phi), gamma)
    bad = _frames_where(lambda a: nabla_spinor(geo, a, phi, T).is_zero(), n)
    c.true(f"{p}.spinor.nabla_c_parallel", f"{label}: parallel spinor of the characteristic connection",
           bad is None, witness={"frame": bad})
    kappa = gamma * num(Fraction(3, 4 * n))
    bad = _frames_where(lambda a: nabla_spinor(geo, a, phi, None).equals(phi.apply(geo.gamma(a)) * kappa,
                                                                          0.0 if mode == EXACT else 1e-9), n)
    c.true(f"{p}.spinor.riemannian_killing", f"{label}: Riemannian Killing spinor with kappa = 3 gamma/(4n)",
           bad is None, f"kappa={c_render(kappa, mode)}", f"kappa={c_render(kappa, mode)}", witness={"frame": bad})
    # two routes to the spinor connection: lifted Nomizu map vs Λ̃^g + ¼(X⌟H)
    for tag, H in (("g", None), ("cubic", cubic_torsion(geo)), ("c", T), ("2T", T * num(2))):
        a_route = geo.nabla_matrices(H)
        b_route = geo.nomizu_lift_matrices(H)
        ok = all(same(x, y, mode) for x, y in zip(a_route, b_route))
        c.true(f"{p}.spinor.lift_routes[{tag}]", f"{label}: spinor lift of the Nomizu map", ok)
    Dg = geo.dirac_matrix(None)
    for tag, H in (("cubic", cubic_torsion(geo)), ("c", T), ("s=1/2", geo.H_of_s(Fraction(1, 2)))):
        want = Dg + geo.cliff(H) * num(Fraction(3, 4))
        c.true(f"{p}.dirac.family[{tag}]", f"{label}: D^H = D^g + 3/4 H", same(geo.dirac_matrix(H), want, mode))
    c.eq(f"{p}.dirac.g", f"{label}: Riemannian Dirac eigenvalue -n kappa",
         dirac(geo, phi, None).ratio_to(phi), kappa * (-n))
    c.true(f"{p}.dirac.c", f"{label}: characteristic spinor", dirac(geo, phi, T).is_zero())
    c.eq(f"{p}.dirac.cubic", f"{label}: cubic Dirac eigenvalue -gamma/2",
         dirac(geo, phi, cubic_torsion(geo)).ratio_to(phi), gamma * num(Fraction(-1, 2)))
    Dcube = geo.dirac_matrix(cubic_torsion(geo))
    c.eq(f"{p}.dirac.cubic_square", f"{label}: square of the cubic Dirac operator on the parallel spinor",
         phi.apply(Dcube).apply(Dcube).ratio_to(phi), gamma * gamma / 4)
    c.true(f"{p}.spinor.eigen_relations", f"{label}: (X⌟T) and (X∧T) on the T-eigenspinor",
           eigenspinor_relation_check(geo, phi))
    Dc_phi = dirac(geo, phi, T)
    c.eq(f"{p}.spinor.dirac_c_killing", f"{label}: D^c = 3/4 (T - gamma) on Killing spinors",
         Dc_phi, (phi.apply(geo.cliff(T)) - phi * gamma) * num(Fraction(3, 4)))
    for s in s_values:
        H = geo.H_of_s(s)
        res = twistor_residual(geo, phi, H)
        bad = next((i + 1 for i, r in enumerate(res) if not r.is_zero()), None)
        c.true(f"{p}.twistor[s={s}]", f"{label}: twistor spinor with torsion", bad is None, witness={"frame": bad})
        zeta = gamma * (1 - 4 * num(s)) * num(Fraction(3, 4 * n))
        bad = _frames_where(lambda a: nabla_spinor(geo, a, phi, H).equals(phi.apply(geo.gamma(a)) * zeta,
                                                                          0.0 if mode == EXACT else 1e-9), n)
        c.true(f"{p}.kst[s={s}]", f"{label}: Killing spinor with torsion, zeta = 3(1-4s) gamma/(4n)",
               bad is None, f"zeta={c_render(zeta, mode)}", f"zeta={c_render(zeta, mode)}", witness={"frame": bad})
        c.eq(f"{p}.kst.dirac[s={s}]", f"{label}: D^s eigenvalue -n zeta", dirac(geo, phi, H).ratio_to(phi),
             zeta * (-n))
    s = Fraction(1, 2)
    sc = SuperConnection(geo, s)
    D = dirac(geo, phi, sc.H)
    bad = _frames_where(lambda a: all(x.is_zero() for x in sc.apply(a, phi, D)), n)
    c.true(f"{p}.super_connection[s=1/2]", f"{label}: (phi, D^s phi) is parallel for the connection on E",
           bad is None, witness={"frame": bad})
    zero_pair = sc.apply(0, phi * 0, phi * 0)
    c.true(f"{p}.super_connection.zero", f"{label}: connection on E is linear",
           all(x.is_zero() for x in zero_pair))
    zeta = gamma * (1 - 4 * num(s)) * num(Fraction(3, 4 * n))
    kinds = [
        (IdentityKind.KST_RICCI, {"s": s, "zeta": zeta}),
        (IdentityKind.TWISTOR_RICCI, {"s": s}),
        (IdentityKind.TWISTOR_SCA, {"s": s}),
        (IdentityKind.DIRAC_SQ, {"s": s}),
        (IdentityKind.CONV, {}),
        (IdentityKind.RICCI_CONTRACTION, {"s": Fraction(1, 3)}),
        (IdentityKind.PARALLEL, {}),
        (IdentityKind.INTEGRAB, {}),
    ]
    for kind, kw in kinds:
        cid = f"{p}.identity.{kind.value}"
        anchor = f"{label}: curvature identity {kind.value.lower()}"
        if kind is IdentityKind.INTEGRAB and n <= 3:
            c.skip(cid, anchor, "needs n > 3")
            continue
        try:
            r = curvature_identity_check(geo, kind, phi, **kw)
        except PreconditionFailed as exc:
            c.true(cid, anchor, False, witness={"precondition": str(exc)})
            continue
        c.true(cid, anchor, r.holds, f"{sum(r.verdicts)}/{len(r.verdicts)}",
               f"{len(r.verdicts)}/{len(r.verdicts)}", witness={"failed": r.failures})


def c_render(x, mode):
    from .report import render
    return render(x, mode)


def _classes_section(c: Collector, p: str, geo: SpinGeometry, want_dim: int, label: str):
    for s in (Fraction(1, 2),):
        cl = spinor_classes(geo, s)
        dims = {k: len(v) for k, v in cl.items()}
        c.true(f"{p}.classes.coincide", f"{label}: the four spinor classes coincide", classes_coincide(geo, cl),
               str(dims), witness={"dims": dims})
        c.true(f"{p}.classes.dimension", f"{label}: dimension of the common class",
               all(d == want_dim for d in dims.values()), str(sorted(set(dims.values()))), str([want_dim]))
    bound = 2 * geo.rep.dim
    for s in (Fraction(0), Fraction(1, 2)):
        k = len(twistor_kernel(geo, s))
        c.true(f"{p}.classes.twistor_bound[s={s}]", f"{label}: invariant twistor kernel bound",
               k <= bound, f"{k}", f"<= {bound}")


# ---------------- B7 ----------------


def verify_b7(mode: str = EXACT) -> Report:
    rep = Report("b7", mode)
    rep.notes.append(CUBIC_NOTE)
    c = Collector(rep)
    L = "B7"
    entry = catalog.build_b7(mode)
    sp = entry.space
    num = lambda x: _num(x, mode)  # noqa: E731
    X = lambda v: adapt(v, mode)  # noqa: E731
    n = 7
    _algebra_checks(c, "b7", entry, L)
    cc = X(entry.expected["bracket_c"][0])
    for i in range(n):
        j, k = (i + 1) % n, (i + 3) % n
        got = Multivector.vector(n, list(sp.Cm[i, j]))
        c.eq(f"b7.bracket[e{i + 1},e{j + 1}]", "B7: [e_i, e_{i+1}]_m = c e_{i+3}", got,
             Multivector.basis(n, k + 1) * cc, witness={"pair": [i + 1, j + 1]})
    for idx, y in enumerate(catalog.b7_isotropy()):
        c.eq(f"b7.isotropy.length[y{idx + 1}]", "B7: squared length of the so(3) generators",
             catalog._half_neg_trace(y, y), X(ExactScalar(5)))
    T = entry.torsion
    c.eq("b7.torsion.T1", "canonical torsion of B7", T, X(catalog.b7_t1_expected()))
    tn2 = form_norm_sq(T)
    c.eq("b7.torsion.norm_sq", "torsion length of B7", tn2, X(entry.expected["tnorm2"][0]))
    c.eq("b7.torsion.sigma_square", "2 sigma_T = |T|^2 - T^2 on B7", T * T,
         Multivector.scalar(n, tn2) - sigma_t(T) * 2)
    s5 = ExactScalar.sqrt(5)
    omega = T * num(-s5)
    c.eq("b7.omega.norm_sq", "G2 form of B7 has length 7", form_norm_sq(omega), X(ExactScalar(7)))
    star = catalog.b7_star_omega()
    c.eq("b7.omega.hodge", "Hodge dual of the G2 form", hodge_star(omega), X(star))
    dT = invariant_d(sp, T)
    c.eq("b7.dT.printed", "differential of the canonical torsion of B7", dT, X(star * ExactScalar(Fraction(-6, 5))))
    c.eq("b7.dT.sigma", "dT = 2 sigma_T on B7", dT, sigma_t(T) * 2)
    c.eq("b7.domega.star", "d omega = (6/sqrt5) * omega", invariant_d(sp, omega), X(star * (6 / s5)))
    c.true("b7.domega.cocalibrated", "d * omega = 0 on B7", invariant_d(sp, hodge_star(omega)).is_zero())
    c.true("b7.delta.T1", "codifferential of the canonical torsion", invariant_delta(sp, T).is_zero())
    c.true("b7.delta.omega", "codifferential of the G2 form", invariant_delta(sp, omega).is_zero())
    c.true("b7.torsion_vector[e1,e2]", "T(e1, e2) on B7",
           same(torsion_vector(T, Multivector.basis(n, 1), Multivector.basis(n, 2)),
                X(Multivector.basis(n, 4) * (-1 / s5)), mode))
    Lg = nomizu(sp, 0)
    for a in range(1, n + 1):
        want = np.zeros((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                want[i, j] = ExactScalar()
        for (i, j), v in catalog.b7_nomizu_expected(a).items():
            want[j - 1, i - 1] = v
            want[i - 1, j - 1] = -v
        anchor = "B7: Levi-Civita Nomizu map"
        if a == 7:
            anchor += " (E26 sign fixed by the torsion form)"
        c.eq(f"b7.nomizu[e{a}]", anchor, Lg[a - 1], X(want), witness={"frame": a})
    quarter = nomizu(sp, Fraction(1, 4))
    c.true("b7.nomizu.linear", "B7: Nomizu family is (1-t) times the Levi-Civita map",
           all(same(q, g * num(Fraction(3, 4)), mode) for q, g in zip(quarter, Lg)))
    c.true("b7.nomizu.canonical_zero", "B7: canonical connection has zero Nomizu map",
           all(array_is_zero(m if m.dtype == object else lower_array(m)) for m in nomizu(sp, 1)))
    Ric = ricci(sp, 0)
    c.eq("b7.ricci.g", "Einstein constant of B7", Ric, X(eye(n) * entry.expected["ric_g"][0]))
    sca_g = scalar_from_ricci(Ric)
    c.eq("b7.scalar.g", "scalar curvature of B7", sca_g, X(entry.expected["sca_g"][0]))
    ctx, geo = _geometry(entry, mode)
    c.true("b7.torsion.parallel", "B7: characteristic connection has parallel torsion", ctx.parallel)
    c.eq("b7.torsion.trace_S", "trace S = 6|T|^2", ctx.trace_S(), tn2 * 6)
    for s in (Fraction(0), Fraction(1, 12), Fraction(1, 2)):
        c.true(f"b7.torsion.nabla_s[s={s}]", "B7: nabla^s T = (4s-1)/2 sigma_T", nabla_s_torsion_check(ctx, s))
    for s in (Fraction(1, 12), Fraction(1, 4), Fraction(1, 2)):
        c.true(f"b7.ricci.family[s={s}]", "B7: Ric^s = Ric^g - 4 s^2 S from the curvature engine",
               ric_consistency(ctx, Ric, num(s)))
    sca_cubic = ctx.sca_s(Fraction(1, 12))
    c.eq("b7.scalar.cubic", "scalar curvature for torsion T/3 on B7", sca_cubic, X(entry.expected["sca_cubic"][0]))
    c.eq("b7.scalar.cubic_rule", "Sca^s = Sca^g - 24 s^2 |T|^2 at s = 1/12", sca_cubic,
         sca_s(sca_g, tn2, num(Fraction(1, 12))))
    sca_c = ctx.sca_s(Fraction(1, 4))
    c.eq("b7.scalar.c", "characteristic scalar curvature of B7", sca_c, X(ExactScalar(Fraction(84, 5))))
    shift = sca_cubic / 8 + form_norm_sq(cubic_torsion(geo)) * num(Fraction(3, 4))
    c.eq("b7.dirac.cubic_shift", "Casimir shift of the cubic Dirac square on B7", shift,
         X(entry.expected["cubic_shift"][0]))

    gamma = X(entry.expected["gamma"][0])
    spec = t_spectrum(geo, fallback=mode == FLOAT)
    want_spec = [(gamma, 1), (X(1 / s5), 7)]
    ok = len(spec.eigenvalues) == 2 and all(same(v, w, mode) and m == wm
                                            for (v, m), (w, wm) in zip(spec.eigenvalues, want_spec))
    c.true("b7.spectrum.T", "B7: spectrum of T on the spinor module", ok,
           str([(c_render(v, mode), m) for v, m in spec.eigenvalues]),
           str([(c_render(v, mode), m) for v, m in want_spec]))
    if mode == EXACT:
        P = catalog.b7_t1_printed_matrix()
        M = geo.cliff(T)
        c.eq("b7.spectrum.printed_charpoly", "B7: printed T1 matrix has the same characteristic polynomial",
             charpoly(M), charpoly(P))
        Pspec = t_spectrum_matrix(P)
        c.true("b7.spectrum.printed", "B7: spectrum of the printed T1 matrix",
               [(str(v), m) for v, m in Pspec.eigenvalues] == [(str(v), m) for v, m in spec.eigenvalues])
    inv = geo.invariant_basis()
    c.true("b7.spinor.invariant_dim", "B7: invariant spinors", len(inv) == 1, str(len(inv)), "1")
    phi = geo.spinor(inv[0])
    c.eq("b7.spinor.kappa", "Killing number of B7", t_eigenvalue(geo, phi) * num(Fraction(3, 28)),
         X(entry.expected["kappa"][0]))
    _spinor_section(c, "b7", geo, phi, gamma, L, (Fraction(0), Fraction(1, 2), Fraction(3, 8)))
    bad = [a + 1 for a in range(n)
           if not phi.apply(geo.cliff(wedge(Multivector.basis(n, a + 1), T))).is_zero()]
    c.true("b7.spinor.wedge_witness", "B7: some (X∧T) phi0 is nonzero", bool(bad), str(bad[:1]), "nonempty")
    bad = _frames_where(lambda a: same(phi.apply(geo.cliff(contract(Multivector.basis(n, a + 1), omega))),
                                       phi.apply(geo.gamma(a)) * num(-3), mode), n)
    c.true("b7.spinor.omega_contraction", "B7: (X⌟omega) phi0 = -3 X phi0", bad is None, witness={"frame": bad})
    for tag, form, val in (("dT", dT, Fraction(-42, 5)), ("sigma", ctx.sigma, Fraction(-21, 5)),
                           ("T_sq", T * T, Fraction(49, 5))):
        c.eq(f"b7.spinor.eigen[{tag}]", f"B7: {tag} acting on phi0", phi.apply(geo.cliff(form)).ratio_to(phi),
             X(ExactScalar(val)))
    # a generic spinor outside Sigma_gamma fails the Riemannian twistor equation
    rnd = geo.spinor([num((k % 3) - 1) for k in range(geo.rep.dim)])
    res = twistor_residual(geo, rnd, None)
    hit = next((i + 1 for i, r in enumerate(res) if not r.is_zero()), None)
    c.true("b7.twistor.generic_fails", "B7: generic spinor is not a twistor spinor", hit is not None,
           f"frame {hit}", "some frame")
    for kind in (IdentityKind.CONV, IdentityKind.RICCI_CONTRACTION):
        r = curvature_identity_check(geo, kind, rnd, s=Fraction(1, 5))
        c.true(f"b7.identity.{kind.value}.generic", f"B7: pointwise identity {kind.value.lower()} on a generic spinor",
               r.holds, witness={"failed": r.failures})
    _classes_section(c, "b7", geo, 1, L)

    inp = EstimateInput(n, sca_g, tn2, gamma)
    c.eq("b7.estimate.beta_univ", "universal estimate on B7", beta_univ(inp), X(entry.expected["beta"][0]))
    c.eq("b7.estimate.beta_tw", "twistorial estimate on B7", beta_tw(inp), X(entry.expected["beta"][0]))
    c.eq("b7.estimate.beta_sca", "estimate = (7/54) Sca^g on B7", beta_univ(inp), sca_g * num(Fraction(7, 54)))
    iq = inequality_suite(inp)
    c.true("b7.estimate.double_equality", "B7: both inequalities are equalities", iq.double_equality,
           f"{iq.torsion_status}/{iq.sca_status}", "equality/equality")
    c.true("b7.estimate.killing_flag", "B7: equality case forces a real Killing spinor", iq.killing_flag)
    c.eq("b7.estimate.killing_criterion", "B7: gamma^2 from the Killing criterion", killing_criterion(n, sca_g),
         gamma * gamma)
    ld = low_dim_variants(n, tn2)
    c.eq("b7.estimate.lowdim_gamma", "B7: gamma^2 = 2n|T|^2/(9-n)", ld["gamma_sq"], gamma * gamma)
    c.eq("b7.estimate.lowdim_sca", "B7: Sca^g = 9(n-1)|T|^2/(2(9-n))", ld["sca_g"], sca_g)
    sc = spinor_constants(n, gamma, Fraction(1, 2), tn2)
    c.true("b7.estimate.constants_consistent", "B7: spinor constants are consistent",
           all(sc.consistent().values()), str(sc.consistent()))
    c.eq("b7.estimate.sca_c", "B7: Sca^c = 3(n-3) gamma^2/n", sc.sca_c, sca_c)
    c.eq("b7.estimate.s_star", "B7: special parameter s*", sc.s_star, Fraction(3, 8))
    ric_half = ctx.ric_s(Fraction(1, 2))
    coeff = gamma * gamma * num(Fraction(6, n * n)) * num(ric_coefficient(n, Fraction(1, 2)))
    c.eq("b7.estimate.ric_coefficient[s=1/2]", "B7: Ric^s = (6 gamma^2/n^2) C(7, s)", ric_half, eye(n, mode) * coeff)
    tau0 = X(entry.expected["tau0"][0])
    c.eq("b7.npg2.tau0", "B7 as nearly parallel G2: T = -(tau0/6) omega", T, omega * (-tau0 / 6))
    c.eq("b7.npg2.sca", "B7 as nearly parallel G2: Sca^g = 21/8 tau0^2", sca_g, tau0 * tau0 * num(Fraction(21, 8)))
    c.eq("b7.npg2.kappa", "B7 as nearly parallel G2: kappa = -tau0/8", gamma * num(Fraction(3, 28)), -tau0 / 8)
    return rep


# ---------------- S3 ----------------


def verify_s3(mode: str = EXACT) -> Report:
    rep = Report("s3", mode)
    rep.notes.append("S3 brackets [e_i, e_j] = -2 eps_ijk e_k, so the torsion form is +2 e123 and acts as +2")
    rep.notes.append(CUBIC_NOTE)
    c = Collector(rep)
    L = "S3"
    entry = catalog.build_s3(mode)
    sp = entry.space
    num = lambda x: _num(x, mode)  # noqa: E731
    X = lambda v: adapt(v, mode)  # noqa: E731
    n = 3
    _algebra_checks(c, "s3", entry, L)
    T = entry.torsion
    vol = Multivector.blade(n, (1, 2, 3), 1)
    c.eq("s3.torsion.canonical", "torsion form of S3", T, vol * num(2))
    other = canonical_torsion(catalog.build_s3(mode, sign=1).space)
    c.eq("s3.torsion.opposite_bracket", "S3 with [e_i, e_j] = 2 eps_ijk e_k has torsion -2 e123", other, vol * num(-2))
    c.eq("s3.torsion.norm_sq", "torsion length of S3", form_norm_sq(T), X(ExactScalar(4)))
    c.true("s3.torsion.sigma_zero", "sigma_T vanishes in dimension 3", sigma_t(T).is_zero())
    Ric = ricci(sp, 0)
    c.eq("s3.ricci.g", "Einstein constant of S3", Ric, X(eye(n) * 2))
    c.eq("s3.scalar.g", "scalar curvature of S3", scalar(sp, 0), X(ExactScalar(6)))
    R1 = curvature(sp, 1)
    c.true("s3.curvature.canonical_flat", "S3: canonical connection is flat",
           all(array_is_zero(m if m.dtype == object else lower_array(m)) for row in R1 for m in row))
    ctx, geo = _geometry(entry, mode)
    c.true("s3.torsion.parallel", "S3: parallel torsion", ctx.parallel)
    c.true("s3.curvature.torsion_flat", "S3: the connection with torsion T is flat",
           all(array_is_zero(m if m.dtype == object else lower_array(m)) for row in geo.curvature(T) for m in row))
    for s in (Fraction(0), Fraction(1, 4), Fraction(1, 2)):
        c.eq(f"s3.ricci.family[s={s}]", "S3: Ric^s = 2(1 - 16 s^2) Id", ctx.ric_s(s),
             X(eye(n) * ExactScalar(2 * (1 - 16 * s * s))))
    for i in range(n):
        for j in range(i + 1, n):
            ei, ej = Multivector.basis(n, i + 1), Multivector.basis(n, j + 1)
            lhs = geo.cliff(torsion_vector(T, ei, ej))
            rhs = -(geo.gamma(i) @ geo.gamma(j) - geo.gamma(j) @ geo.gamma(i))
            c.eq(f"s3.torsion.clifford[e{i + 1},e{j + 1}]", "S3: T(X, Y) acts as -(XY - YX) on spinors", lhs, rhs)
    gamma = X(entry.expected["gamma"][0])
    spec = t_spectrum(geo, fallback=mode == FLOAT)
    c.true("s3.spectrum.T", "S3: spectrum of T on the spinor module",
           len(spec.eigenvalues) == 1 and same(spec.eigenvalues[0][0], gamma, mode) and spec.eigenvalues[0][1] == 2,
           str([(c_render(v, mode), m) for v, m in spec.eigenvalues]), "[(2, 2)]")
    c.eq("s3.spinor.volume", "S3: the volume element acts as +1", ExactScalar(geo.rep.volume_sign), ExactScalar(1))
    inv = geo.invariant_basis()
    c.true("s3.spinor.invariant_dim", "S3: invariant spinors", len(inv) == 2, str(len(inv)), "2")
    for idx, v in enumerate(inv):
        phi = geo.spinor(v)
        _spinor_section(c, f"s3.phi{idx + 1}", geo, phi, gamma, L, (Fraction(0), Fraction(1, 2), Fraction(3, 8)))
        bad = _frames_where(lambda a: phi.apply(geo.cliff(wedge(Multivector.basis(n, a + 1), T))).is_zero(), n)
        c.true(f"s3.phi{idx + 1}.wedge_zero", "S3: (X∧T) phi vanishes identically", bad is None,
               witness={"frame": bad})
        zeta = gamma * (1 - 4 * num(Fraction(1, 2))) * num(Fraction(3, 4 * n))
        c.eq(f"s3.phi{idx + 1}.zeta[s=1/2]", "S3: Killing number with torsion (1 - 4s)/2", zeta, num(Fraction(-1, 2)))
    _classes_section(c, "s3", geo, 2, L)
    sc = spinor_constants(n, gamma, Fraction(1, 2), form_norm_sq(T))
    c.eq("s3.estimate.kappa", "S3: kappa = 1/2", sc.kappa, X(entry.expected["kappa"][0]))
    c.eq("s3.estimate.sca_g", "S3: Sca^g = 9(n-1) gamma^2/(4n)", sc.sca_g, scalar(sp, 0))
    c.eq("s3.estimate.sca_c", "S3: Sca^c = 0", sc.sca_c, ctx.sca_s(Fraction(1, 4)))
    c.true("s3.estimate.constants_consistent", "S3: spinor constants are consistent",
           all(sc.consistent().values()), str(sc.consistent()))
    poly = ScalarPoly.coerce(ric_coefficient(3, None), "s") * (ExactScalar(6 * 4) / 9)
    c.eq("s3.estimate.ric_coefficient", "S3: (6 gamma^2/9) C(3, s) = 2(1 - 16 s^2)", poly,
         ScalarPoly([2, 0, -32], "s"))
    return rep


# ---------------- tables and user spaces ----------------


def verify_table(kind: str) -> Report:
    name = f"{kind.lower()}-table"
    rep = Report(name, EXACT)
    c = Collector(rep)
    for cid, label, holds in catalog.scalar_suite(kind):
        c.true(cid, label, holds, "identity", "identity")
    for n in range(4, 9):
        t = ScalarPoly.variable("sca")
        ld = low_dim_variants(n, t * Fraction(2 * (9 - n), 9 * (n - 1)))
        inp = EstimateInput(n, t, t * Fraction(2 * (9 - n), 9 * (n - 1)), gamma_sq=ld["gamma_sq"])
        c.eq(f"{kind.lower()}.beta_equal[n={n}]", "estimates agree in the equality case", beta_tw(inp), beta_univ(inp))
    for n in range(3, 9):
        g2 = ScalarPoly.variable("g2")
        c0 = g2 * Fraction(6, n * n) * ric_coefficient(n, Fraction(0))
        c.eq(f"{kind.lower()}.C0[n={n}]", "C(n, 0) gives the Einstein constant", c0, g2 * Fraction(9 * (n - 1), 4 * n * n))
        c4 = g2 * Fraction(6, n * n) * ric_coefficient(n, Fraction(1, 4))
        c.eq(f"{kind.lower()}.C14[n={n}]", "C(n, 1/4) gives the characteristic Einstein constant",
             c4, g2 * Fraction(3 * (n - 3), n * n))
    return rep


def verify_entry(entry: CatalogEntry, mode: str = EXACT) -> Report:
    """Generic checks for a user-supplied space."""
    rep = Report(entry.name, mode)
    c = Collector(rep)
    p = "space"
    sp = entry.space
    if mode == FLOAT:
        sp = sp.lowered()
        entry = CatalogEntry(entry.name, sp, entry.torsion.map_coeffs(lower) if entry.torsion else None)
    _algebra_checks(c, p, entry, entry.name)
    T = entry.torsion
    n = sp.n
    Ric = ricci(sp, 0)
    c.true(f"{p}.ricci.symmetric", f"{entry.name}: Ricci tensor is symmetric", same(Ric, Ric.T, mode))
    c.true(f"{p}.scalar.g", f"{entry.name}: scalar curvature", True, c_render(scalar_from_ricci(Ric), mode), "-")
    if entry.torsion is None or not T.terms:
        c.skip(f"{p}.torsion", f"{entry.name}: torsion", "zero torsion")
        return rep
    ctx = TorsionContext.from_space(sp, T)
    c.true(f"{p}.torsion.parallel", f"{entry.name}: parallel torsion", ctx.parallel)
    if ctx.parallel:
        c.eq(f"{p}.dT.sigma", f"{entry.name}: dT = 2 sigma_T", ctx.dT, ctx.sigma * 2)
        c.true(f"{p}.delta.T", f"{entry.name}: codifferential of T vanishes", invariant_delta(sp, T).is_zero())
        for s in (Fraction(1, 4), Fraction(1, 2)):
            c.true(f"{p}.ricci.family[s={s}]", f"{entry.name}: Ric^s = Ric^g - 4 s^2 S",
                   ric_consistency(ctx, Ric, _num(s, mode)))
    if not 3 <= n <= 8:
        c.skip(f"{p}.spinor", f"{entry.name}: spinor checks", "spin representations cover 3 <= n <= 8")
        return rep
    geo = SpinGeometry(ctx, build_rep(n, mode))
    try:
        spec = t_spectrum(geo, fallback=mode == FLOAT)
        c.true(f"{p}.spectrum.T", f"{entry.name}: spectrum of T", True,
               str([(c_render(v, mode), m) for v, m in spec.eigenvalues]), "-")
    except TorsionSpinError as exc:
        c.true(f"{p}.spectrum.T", f"{entry.name}: spectrum of T", False, witness={"error": str(exc)})
    inv = geo.invariant_basis()
    c.true(f"{p}.spinor.invariant_dim", f"{entry.name}: invariant spinors", True, str(len(inv)), "-")
    for idx, v in enumerate(inv[:4]):
        phi = geo.spinor(v)
        for kind in (IdentityKind.CONV, IdentityKind.RICCI_CONTRACTION):
            r = curvature_identity_check(geo, kind, phi, s=Fraction(1, 3))
            c.true(f"{p}.identity.{kind.value}[{idx}]", f"{entry.name}: pointwise curvature identity", r.holds,
                   witness={"failed": r.failures})
    return rep


def run_verify(target: str, mode: str = EXACT, only: str | None = None) -> Report:
    if target == "b7":
        rep = verify_b7(mode)
    elif target == "s3":
        rep = verify_s3(mode)
    elif target == "nk6-table":
        rep = verify_table("NK6")
    elif target == "npg2-table":
        rep = verify_table("NPG2")
    else:
        path = Path(target)
        if not path.exists():
            raise UnknownTarget(f"unknown target {target!r}: not a catalog name "
                                f"({', '.join(catalog.CATALOG_NAMES)}) or an existing file")
        rep = verify_entry(catalog.load_space(path), mode)
        rep.target = path.name
    return rep.filtered(only)


# ---------------- fuzz ----------------


def run_fuzz(dim: int, trials: int, seed: int, mode: str = EXACT) -> Report:
    if not 3 <= dim <= 10:
        raise UnknownTarget(f"fuzz dimension must be in 3..10, got {dim}")
    rep = Report(f"fuzz:dim={dim}:trials={trials}:seed={seed}", mode)
    c = Collector(rep)
    rng = random.Random(seed)
    tol = 0.0 if mode == EXACT else 1e-9
    width = max(4, len(str(trials)))
    for trial in range(trials):
        T = random_three_form(rng, dim)
        Xv = random_vector(rng, dim)
        if mode == FLOAT:
            T = T.map_coeffs(lambda q: float(lower(q)))
            Xv = Xv.map_coeffs(lambda q: float(lower(q)))
        wit = {"seed": seed, "trial": trial, "T": str(T), "X": str(Xv)}
        for name in IDENTITY_NAMES:
            sides = identity_sides(name, T, Xv)
            ok = all(l.equals(r, tol) for l, r in sides)
            c.add(f"fuzz.{trial:0{width}d}.{name}", f"Clifford identity {name.replace('_', ' ')}",
                  sides[0][0], sides[0][1], ok, wit)
        if dim <= 4:
            c.true(f"fuzz.{trial:0{width}d}.sigma_zero", "sigma_T vanishes for n <= 4",
                   sigma_t(T).is_zero(tol), witness=wit)
    return rep
