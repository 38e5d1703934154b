"""Spinor operators on invariant spinors of a naturally reductive space.

Invariant spinors are constant maps G -> Δ_n fixed by the lifted isotropy.
For a metric connection with skew torsion H (∇^H = ∇^g + ½H on vectors),
the covariant derivative of such a spinor in direction e_a is the lift of
the Nomizu map, Λ̃^g(e_a) + ¼(e_a ⌟ H)·. The operators below are computed on
constant spinors; they are covariant derivatives only on the invariant
subspace, which is where all checks are run.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .clifford import Multivector, contract, form_norm_sq, torsion_vector, wedge
from .errors import (DimMismatch, NotTEigenspinor, PreconditionFailed, SpectrumNotResolved)
from .exactfield import TOL, ExactScalar, is_zero, lower
from .homspace import curvature_nomizu, nomizu_torsion, ricci_from_curvature, scalar_from_ricci
from .linalg import EXACT, FLOAT, eye, lower_array, nullspace, rank, same_span, trace, zeros
from .spinrep import GammaRep, SpinorVec, spin_lift
from .torsion import TorsionContext


def _num(x, mode):
    if mode == EXACT:
        return ExactScalar(x)
    v = x if isinstance(x, (float, complex)) else lower(ExactScalar(x))
    if isinstance(v, complex) and v.imag == 0:
        return v.real
    return v


class SpinGeometry:
    """A space with a spin representation and a torsion context, plus caches."""

    def __init__(self, ctx: TorsionContext, rep: GammaRep):
        if ctx.space is None:
            raise PreconditionFailed("spinor geometry needs an explicit space")
        if rep.n != ctx.n:
            raise DimMismatch(f"Δ_{rep.n} for a space of dimension {ctx.n}")
        self.ctx = ctx
        self.space = ctx.space
        self.rep = rep
        self.n = ctx.n
        self.mode = rep.mode
        self._lifts: dict = {}
        self._mats: dict = {}
        self._curv: dict = {}

    @property
    def T(self) -> Multivector:
        return self.ctx.T

    def num(self, x):
        return _num(x, self.mode)

    def cliff(self, a: Multivector) -> np.ndarray:
        key = a
        m = self._mats.get(key)
        if m is None:
            m = self.rep.matrix(a)
            self._mats[key] = m
        return m

    def e(self, a: int) -> Multivector:
        return Multivector.basis(self.n, a + 1)

    def gamma(self, a: int) -> np.ndarray:
        return self.rep.gamma[a]

    def isotropy_lifts(self) -> list:
        key = "k"
        if key not in self._lifts:
            self._lifts[key] = [spin_lift(self.space.ad_k(j), self.rep) for j in range(self.space.dim_k)]
        return self._lifts[key]

    def lc_lifts(self) -> list:
        """Λ̃^g(e_a) for each frame vector."""
        key = "g"
        if key not in self._lifts:
            Lam = nomizu_torsion(self.space, None)
            self._lifts[key] = [spin_lift(L, self.rep) for L in Lam]
        return self._lifts[key]

    def nabla_matrices(self, H: Multivector | None) -> list:
        """Matrices of ∇^H_{e_a} on constant spinors: Λ̃^g(e_a) + ¼(e_a ⌟ H)·."""
        key = ("H", H)
        if key not in self._lifts:
            base = self.lc_lifts()
            if H is None or not H.terms:
                out = list(base)
            else:
                q = self.num(Fraction(1, 4))
                out = [base[a] + self.cliff(contract(self.e(a), H)) * q for a in range(self.n)]
            self._lifts[key] = out
        return self._lifts[key]

    def nomizu_lift_matrices(self, H: Multivector | None) -> list:
        """Independent route: spin lift of the Nomizu map of ∇^g + ½H."""
        return [spin_lift(L, self.rep) for L in nomizu_torsion(self.space, H)]

    def dirac_matrix(self, H: Multivector | None) -> np.ndarray:
        key = ("D", H)
        if key not in self._lifts:
            nab = self.nabla_matrices(H)
            D = self.rep.zeros()
            for a in range(self.n):
                D = D + self.gamma(a) @ nab[a]
            self._lifts[key] = D
        return self._lifts[key]

    def H_of_s(self, s) -> Multivector:
        return self.T * (self.num(s) * 4)

    def curvature(self, H: Multivector | None) -> list:
        """Curvature endomorphisms R^H(e_a, e_b) of m."""
        key = H
        if key not in self._curv:
            self._curv[key] = curvature_nomizu(self.space, nomizu_torsion(self.space, H))
        return self._curv[key]

    def ricci(self, H: Multivector | None):
        return ricci_from_curvature(self.curvature(H))

    def spinor_curvature(self, H, a: int, b: int) -> np.ndarray:
        return spin_lift(self.curvature(H)[a][b], self.rep)

    def ric_vector(self, Ric, a: int) -> Multivector:
        return Multivector.vector(self.n, [Ric[a, b] for b in range(self.n)])

    def invariant_basis(self) -> list:
        lifts = self.isotropy_lifts()
        if not lifts:
            return list(eye(self.rep.dim, self.mode))
        return nullspace(np.vstack(lifts))

    def is_invariant(self, phi: SpinorVec) -> bool:
        return all(phi.apply(L).is_zero() for L in self.isotropy_lifts())

    def spinor(self, data) -> SpinorVec:
        return SpinorVec(self.rep, data)


def nabla_spinor(geo: SpinGeometry, a: int, phi: SpinorVec, H: Multivector | None) -> SpinorVec:
    """∇^H_{e_a} φ for a constant spinor φ (frame index a is 0-based)."""
    return phi.apply(geo.nabla_matrices(H)[a])


def dirac(geo: SpinGeometry, phi: SpinorVec, H: Multivector | None) -> SpinorVec:
    """D^H φ = Σ e_a · ∇^H_{e_a} φ."""
    return phi.apply(geo.dirac_matrix(H))


def cubic_torsion(geo: SpinGeometry) -> Multivector:
    """Torsion form T/3 of the cubic Dirac operator (the s = 1/12 member of ∇^s)."""
    return geo.T / 3 if geo.mode == EXACT else geo.T * (1 / 3)


def twistor_residual(geo: SpinGeometry, phi: SpinorVec, H: Multivector | None) -> list[SpinorVec]:
    """∇^H_{e_a} φ + (1/n) e_a · D^H φ for each frame vector."""
    D = dirac(geo, phi, H)
    inv_n = geo.num(Fraction(1, geo.n))
    return [nabla_spinor(geo, a, phi, H) + D.apply(geo.gamma(a)) * inv_n for a in range(geo.n)]


@dataclass
class TSpectrum:
    eigenvalues: list  # [(value, multiplicity)], increasing
    eigenspaces: dict = field(default_factory=dict)
    exact: bool = True
    annihilator: list | None = None

    def as_dict(self) -> dict:
        return {str(v): m for v, m in self.eigenvalues}

    def multiplicity(self, value) -> int:
        for v, m in self.eigenvalues:
            if _values_close(v, value):
                return m
        return 0

    def eigenspace(self, value) -> list:
        for v, basis in self.eigenspaces.items():
            if _values_close(v, value):
                return basis
        return []


def _values_close(a, b) -> bool:
    if isinstance(a, ExactScalar) and not isinstance(b, (float, complex)):
        return a == ExactScalar(b)
    return abs(complex(lower(a)) - complex(lower(b))) <= 1e-8


def _minimal_polynomial(M):
    """Coefficients (low to high, monic) of the minimal polynomial of M, exactly."""
    N = M.shape[0]
    powers = [eye(N, EXACT)]
    while True:
        powers.append(powers[-1] @ M)
        cols = np.array([p.reshape(-1) for p in powers], dtype=object).T
        ker = nullspace(cols)
        if ker:
            v = ker[0]
            lead = v[-1]
            return [c / lead for c in v]


def _recognize(x: float):
    """Exact candidate ±sqrt(q) or q for a float, with small denominators."""
    for cand in (Fraction(x).limit_denominator(10000),):
        if abs(float(cand) - x) < 1e-9:
            return ExactScalar(cand)
    q = Fraction(x * x).limit_denominator(10000)
    if abs(float(q) - x * x) < 1e-8:
        r = ExactScalar.sqrt(q)
        return r if x > 0 else -r
    return None


def _sort_key(v):
    return complex(lower(v)).real


def t_spectrum_matrix(M, fallback: bool = False) -> TSpectrum:
    N = M.shape[0]
    if M.dtype != object:
        return _float_spectrum(M)
    minpoly = _minimal_polynomial(M)
    deg = len(minpoly) - 1
    cands = None
    if deg == 1:
        cands = [-minpoly[0]]
    elif deg == 2:
        c, b = minpoly[0], minpoly[1]
        disc = b * b - c * 4
        if disc.is_rational():
            r = ExactScalar.sqrt(disc)
            cands = [(-b - r) / 2, (-b + r) / 2]
    if cands is None:
        vals = np.linalg.eigvals(lower_array(M))
        cands = []
        for x in vals:
            if abs(x.imag) > 1e-8:
                break
            v = _recognize(float(x.real))
            if v is None:
                break
            if not any(v == c for c in cands):
                cands.append(v)
        else:
            pass
    # exact verification: the candidate product annihilates M, multiplicities from ranks
    ident = eye(N, EXACT)
    ok = bool(cands)
    if ok:
        P = ident
        for c in cands:
            P = P @ (M - ident * c)
        ok = all(not x for x in P.reshape(-1))
    if not ok:
        if fallback:
            return _float_spectrum(lower_array(M))
        raise SpectrumNotResolved("no exact annihilating polynomial found")
    spaces = {c: nullspace(M - ident * c) for c in cands}
    mults = [(c, len(spaces[c])) for c in cands]
    total = sum(m for _, m in mults)
    tr = sum((c * m for c, m in mults), ExactScalar())
    if total != N or tr != trace(M):
        if fallback:
            return _float_spectrum(lower_array(M))
        raise SpectrumNotResolved("multiplicities do not add up")
    mults.sort(key=lambda cm: _sort_key(cm[0]))
    return TSpectrum(mults, spaces, True, minpoly)


def _float_spectrum(M) -> TSpectrum:
    vals = np.linalg.eigvals(M)
    groups: list = []
    for x in sorted(vals, key=lambda z: z.real):
        for g in groups:
            if abs(g[0] - x) < 1e-7:
                g[1] += 1
                break
        else:
            groups.append([x, 1])
    spaces = {}
    out = []
    N = M.shape[0]
    for x, m in groups:
        v = x.real if abs(x.imag) < 1e-9 else x
        spaces[v] = nullspace(M - np.eye(N) * x, 1e-7)
        out.append((v, m))
    return TSpectrum(out, spaces, False, None)


def t_spectrum(geo: SpinGeometry, T: Multivector | None = None, fallback: bool = False) -> TSpectrum:
    T = geo.T if T is None else T
    return t_spectrum_matrix(geo.cliff(T) if T.terms else geo.rep.zeros(), fallback)


def t_eigenvalue(geo: SpinGeometry, phi: SpinorVec):
    """γ with T·φ = γφ, or raise NotTEigenspinor."""
    g = phi.apply(geo.cliff(geo.T)).ratio_to(phi)
    if g is None:
        raise NotTEigenspinor("T·φ is not a multiple of φ")
    return g


def eigenspinor_relation_check(geo: SpinGeometry, phi: SpinorVec) -> bool:
    """(X⌟T)·φ + (3γ/n) X·φ = 0 and (X∧T)·φ = ((n-3)γ/n) X·φ on every frame X."""
    gamma = t_eigenvalue(geo, phi)
    n = geo.n
    c1 = gamma * geo.num(Fraction(3, n))
    c2 = gamma * geo.num(Fraction(n - 3, n))
    for a in range(n):
        e = geo.e(a)
        Xphi = phi.apply(geo.gamma(a))
        if not (phi.apply(geo.cliff(contract(e, geo.T))) + Xphi * c1).is_zero():
            return False
        if not (phi.apply(geo.cliff(wedge(e, geo.T))) - Xphi * c2).is_zero():
            return False
    return True


class SuperConnection:
    """The operator ∇^{s,E}_X on pairs (φ, ψ) of spinors."""

    def __init__(self, geo: SpinGeometry, s):
        self.geo = geo
        self.s = geo.num(s)
        n = geo.n
        H = geo.H_of_s(s)
        self.H = H
        self.Ric = geo.ricci(H)  # from the curvature engine, not the Einstein shortcut
        self.Sca = scalar_from_ricci(self.Ric)

    def apply(self, a: int, phi: SpinorVec, psi: SpinorVec) -> tuple[SpinorVec, SpinorVec]:
        geo, s, n = self.geo, self.s, self.geo.n
        num = geo.num
        ctx = geo.ctx
        e = geo.e(a)
        first = nabla_spinor(geo, a, phi, self.H) + psi.apply(geo.gamma(a)) * num(Fraction(1, n))
        # Schouten term: (1/(n-2))[-Ric^s(X) + Sca^s/(2(n-1)) X]
        scho = (-geo.ric_vector(self.Ric, a) + e * (self.Sca / (2 * (n - 1)))) * num(Fraction(1, n - 2))
        c4 = s * n * (3 - 4 * s) / ((n - 1) * (n - 2))
        four = e * ctx.dT + contract(e, ctx.sigma) * (n - 1)
        c3 = s * n / ((n - 1) * (n - 2))
        three = contract(e, geo.T) * num(Fraction(8 * (n - 1), n)) + (e * geo.T) * num(Fraction(12, n))
        second = (
            -phi.apply(geo.cliff(scho)) * num(Fraction(n, 2))
            - phi.apply(geo.cliff(four)) * c4
            - psi.apply(geo.cliff(three)) * c3
            + nabla_spinor(geo, a, psi, self.H)
        )
        return first, second


def super_connection_apply(geo: SpinGeometry, a: int, pair, s) -> tuple[SpinorVec, SpinorVec]:
    return SuperConnection(geo, s).apply(a, *pair)


class IdentityKind(str, Enum):
    KST_RICCI = "KST_RICCI"
    TWISTOR_RICCI = "TWISTOR_RICCI"
    TWISTOR_SCA = "TWISTOR_SCA"
    DIRAC_SQ = "DIRAC_SQ"
    CONV = "CONV"
    RICCI_CONTRACTION = "RICCI_CONTRACTION"
    INTEGRAB = "INTEGRAB"
    PARALLEL = "PARALLEL"


@dataclass
class IdentityReport:
    kind: str
    holds: bool
    labels: list
    verdicts: list
    residuals: list

    @property
    def failures(self) -> list:
        return [l for l, v in zip(self.labels, self.verdicts) if not v]


def _residual_norm(v: SpinorVec) -> float:
    return float(np.sqrt(sum(abs(complex(lower(x))) ** 2 for x in v.data)))


def _report(kind, pairs) -> IdentityReport:
    labels, verdicts, res = [], [], []
    for label, lhs, rhs in pairs:
        d = lhs - rhs
        labels.append(label)
        verdicts.append(d.is_zero())
        res.append(_residual_norm(d))
    return IdentityReport(kind.value, all(verdicts), labels, verdicts, res)


def _require(cond: bool, what: str):
    if not cond:
        raise PreconditionFailed(what)


def _sum_e_R(geo, H, a, phi):
    acc = SpinorVec.zero(geo.rep)
    for i in range(geo.n):
        acc = acc + phi.apply(geo.spinor_curvature(H, a, i)).apply(geo.gamma(i))
    return acc


def _sum_T_contr(geo, a, phi):
    """Σ_i T(X, e_i)·(e_i ⌟ T)·φ for X = e_a."""
    T = geo.T
    acc = Multivector(geo.n)
    for i in range(geo.n):
        ei = geo.e(i)
        acc = acc + torsion_vector(T, geo.e(a), ei) * contract(ei, T)
    return phi.apply(geo.cliff(acc))


def curvature_identity_check(geo: SpinGeometry, kind, phi: SpinorVec, s=None, zeta=None) -> IdentityReport:
    kind = IdentityKind(kind)
    n, num, T, ctx = geo.n, geo.num, geo.T, geo.ctx
    sig, dT = ctx.sigma, ctx.dT
    act = lambda mv, v: v.apply(geo.cliff(mv))  # noqa: E731
    pairs = []
    if kind not in (IdentityKind.CONV, IdentityKind.RICCI_CONTRACTION):
        # constant maps define spinor fields only when isotropy-invariant
        _require(geo.is_invariant(phi), "φ is not an invariant spinor")

    if kind is IdentityKind.KST_RICCI:
        s = num(s)
        zeta = num(zeta)
        H = geo.H_of_s(s)
        _require(all(nabla_spinor(geo, a, phi, H).equals(phi.apply(geo.gamma(a)) * zeta)
                     for a in range(n)), f"φ is not a Killing spinor with torsion (s={s}, ζ={zeta})")
        Ric = geo.ricci(H)
        Sca = scalar_from_ricci(Ric)
        for a in range(n):
            e = geo.e(a)
            lhs = act(geo.ric_vector(Ric, a), phi)
            rhs = (act(e, phi) * (zeta * zeta * 4 * (n - 1)) - act(contract(e, T), phi) * (s * zeta * 16)
                   + act(contract(e, sig), phi) * (s * (3 - 4 * s) * 2))
            pairs.append((f"ric[e{a + 1}]", lhs, rhs))
        rhs = (phi * (zeta * zeta * 4 * n * (n - 1)) + act(T, phi) * (s * zeta * 48)
               - act(sig, phi) * (s * (3 - 4 * s) * 8))
        pairs.append(("sca", phi * Sca, rhs))

    elif kind in (IdentityKind.TWISTOR_RICCI, IdentityKind.TWISTOR_SCA, IdentityKind.DIRAC_SQ):
        s = num(s)
        H = geo.H_of_s(s)
        _require(all(r.is_zero() for r in twistor_residual(geo, phi, H)),
                 f"φ is not a twistor spinor with torsion (s={s})")
        Ric = geo.ricci(H)
        Sca = scalar_from_ricci(Ric)
        D = geo.dirac_matrix(H)
        Dphi = phi.apply(D)
        D2phi = Dphi.apply(D)
        q = s * (3 - 4 * s)
        if kind is IdentityKind.TWISTOR_RICCI:
            for a in range(n):
                e = geo.e(a)
                lhs = act(geo.ric_vector(Ric, a), phi) * num(Fraction(-1, 2))
                rhs = (act(contract(e, T), Dphi) * (-s * 8 / n)
                       + nabla_spinor(geo, a, Dphi, H) * num(Fraction(n - 2, n))
                       - D2phi.apply(geo.gamma(a)) * num(Fraction(1, n))
                       - act(contract(e, sig), phi) * q)
                pairs.append((f"ric[e{a + 1}]", lhs, rhs))
        elif kind is IdentityKind.TWISTOR_SCA:
            rhs = (act(T, Dphi) * (-s * 24 / n) + D2phi * num(Fraction(2 * (n - 1), n))
                   - act(sig, phi) * (q * 4))
            pairs.append(("sca", phi * (Sca / 2), rhs))
        else:
            rhs = (act(dT, phi) * q + act(T, Dphi) * (s * 12 / n) + phi * (Sca / 4)) * num(Fraction(n, n - 1))
            pairs.append(("dirac_sq", D2phi, rhs))

    elif kind is IdentityKind.CONV:
        Hc = T
        Ric_g = geo.ricci(None)
        for a in range(n):
            e = geo.e(a)
            lhs = _sum_e_R(geo, None, a, phi)
            rhs = (_sum_e_R(geo, Hc, a, phi) - act(contract(e, sig), phi) * num(Fraction(6, 16))
                   + _sum_T_contr(geo, a, phi) * num(Fraction(1, 8)))
            pairs.append((f"conv[e{a + 1}]", lhs, rhs))
            pairs.append((f"ricg[e{a + 1}]", lhs, act(geo.ric_vector(Ric_g, a), phi) * num(Fraction(-1, 2))))

    elif kind is IdentityKind.RICCI_CONTRACTION:
        s = num(s)
        H = geo.H_of_s(s)
        Ric = geo.ricci(H)
        for a in range(n):
            e = geo.e(a)
            lhs = _sum_e_R(geo, H, a, phi)
            rhs = (act(geo.ric_vector(Ric, a), phi) * num(Fraction(-1, 2))
                   + act(contract(e, sig), phi) * (s * (3 - 4 * s)))
            pairs.append((f"contr[e{a + 1}]", lhs, rhs))

    elif kind is IdentityKind.INTEGRAB:
        if n <= 3:
            raise PreconditionFailed("the integrability identity needs n > 3")
        _require(all(nabla_spinor(geo, a, phi, T).is_zero() for a in range(n)), "φ is not ∇^c-parallel")
        gamma = t_eigenvalue(geo, phi)
        s = num(Fraction(n - 1, 4 * (n - 3)))
        lam = num(Fraction(1, 2 * (n - 3)))
        zeta = gamma * (1 - 4 * s) * num(Fraction(3, 4 * n))
        Ric_c = geo.ricci(T)
        for a in range(n):
            e = geo.e(a)
            lhs = act(geo.ric_vector(Ric_c, a), phi)
            rhs = (act(contract(e, T), phi) * (-s * zeta * 16) + act(e, phi) * (zeta * zeta * 4 * (n - 1))
                   + act(contract(e, sig), phi) * (1 - lam * lam * 12)
                   - _sum_T_contr(geo, a, phi) * ((lam * lam * 2 + lam) * 2))
            pairs.append((f"integrab[e{a + 1}]", lhs, rhs))

    elif kind is IdentityKind.PARALLEL:
        _require(all(nabla_spinor(geo, a, phi, T).is_zero() for a in range(n)), "φ is not ∇^c-parallel")
        Ric_c = geo.ricci(T)
        Sca_c = scalar_from_ricci(Ric_c)
        pairs.append(("sca_c=-2dT", phi * Sca_c, act(dT, phi) * num(-2)))
        pairs.append(("sca_c=-4sigma", phi * Sca_c, act(sig, phi) * num(-4)))
        for a in range(n):
            e = geo.e(a)
            lhs = act(geo.ric_vector(Ric_c, a), phi)
            pairs.append((f"ric_c=dT[e{a + 1}]", lhs, act(contract(e, dT), phi) * num(Fraction(1, 2))))
            pairs.append((f"ric_c=sigma[e{a + 1}]", lhs, act(contract(e, sig), phi)))
        try:
            gamma = t_eigenvalue(geo, phi)
        except NotTEigenspinor:
            gamma = None
        if gamma is not None:
            Sca_g = scalar_from_ricci(geo.ricci(None))
            t2 = ctx.tnorm2
            pairs.append(("sca_g", phi * Sca_g, phi * (gamma * gamma * 2 - t2 / 2)))
            pairs.append(("sca_c", phi * Sca_c, phi * ((gamma * gamma - t2) * 2)))
    return _report(kind, pairs)


# Spinor classes on the invariant subspace


def _stack(blocks: list):
    return np.vstack(blocks) if blocks else None


def _solve(geo: SpinGeometry, blocks: list) -> list:
    return nullspace(np.vstack(list(geo.isotropy_lifts()) + blocks))


def spinor_classes(geo: SpinGeometry, s) -> dict:
    """The four classes ker∇^c, Killing(κ)∩Σ_γ, KsT(ζ)∩Σ_γ, kerP^s∩kerD^c,
    each summed over the eigenvalues γ of T, as bases of subspaces of Δ_n."""
    n, num = geo.n, geo.num
    s = num(s)
    spec = t_spectrum(geo, fallback=geo.mode == FLOAT)
    Tm = geo.cliff(geo.T)
    ident = geo.rep.identity()
    Hs = geo.H_of_s(s)
    nab_c = geo.nabla_matrices(geo.T)
    nab_g = geo.nabla_matrices(None)
    nab_s = geo.nabla_matrices(Hs)
    D_s = geo.dirac_matrix(Hs)
    D_c = geo.dirac_matrix(geo.T)
    classes = {"parallel": [], "killing": [], "kst": [], "twistor_harmonic": []}
    classes["parallel"] = _solve(geo, list(nab_c))
    for gamma, _ in spec.eigenvalues:
        g = num(gamma) if geo.mode == EXACT else gamma
        eig = Tm - ident * g
        kappa = g * num(Fraction(3, 4 * n))
        zeta = g * (1 - 4 * s) * num(Fraction(3, 4 * n))
        classes["killing"] += _solve(geo, [nab_g[a] - geo.gamma(a) * kappa for a in range(n)] + [eig])
        classes["kst"] += _solve(geo, [nab_s[a] - geo.gamma(a) * zeta for a in range(n)] + [eig])
        tw = [nab_s[a] + geo.gamma(a) @ D_s * num(Fraction(1, n)) for a in range(n)]
        classes["twistor_harmonic"] += _solve(geo, tw + [D_c, eig])
    return classes


def classes_coincide(geo: SpinGeometry, classes: dict) -> bool:
    vals = list(classes.values())
    return all(same_span(vals[0], v, geo.rep.dim, geo.mode) for v in vals[1:])


def twistor_kernel(geo: SpinGeometry, s) -> list:
    """ker P^s on the invariant subspace."""
    Hs = geo.H_of_s(geo.num(s))
    nab = geo.nabla_matrices(Hs)
    D = geo.dirac_matrix(Hs)
    n = geo.n
    return _solve(geo, [nab[a] + geo.gamma(a) @ D * geo.num(Fraction(1, n)) for a in range(n)])
