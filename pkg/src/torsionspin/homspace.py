"""Reductive homogeneous spaces g = k + m given by structure constants.

Basis order is k-basis followed by m-basis; the m-basis is orthonormal.
Structure constants: [x_a, x_b] = sum_c C[a, b, c] x_c. Endomorphisms of m
are n x n matrices acting on coordinate columns, M[c, b] = e_c-coordinate of
M(e_b).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .clifford import Multivector, _reorder_sign, contract, form_derivation, hodge_star
from .errors import NotInvariant, NotNaturallyReductive, ValidationError
from .exactfield import TOL, ExactScalar, is_zero, lower
from .linalg import EXACT, FLOAT, commutator, lower_array, zeros

# Sign s in (d alpha)(X0..Xp) = s * sum_{i<j} (-1)^(i+j) alpha([Xi,Xj]_m, ...).
# Pinned by the printed value of dT for the canonical torsion of B7 (see tests).
D_SIGN = 1


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)


class ReductiveSpace:
    def __init__(self, name: str, dim_k: int, dim_m: int, structure, mode: str = EXACT,
                 basis_names: list[str] | None = None):
        N = dim_k + dim_m
        C = np.asarray(structure)
        if C.shape != (N, N, N):
            raise ValidationError(f"structure constants of shape {C.shape}, expected {(N, N, N)}")
        self.name = name
        self.dim_k = dim_k
        self.dim_m = dim_m
        self.mode = mode
        self.C = C
        self.basis_names = basis_names or (
            [f"k{j + 1}" for j in range(dim_k)] + [f"e{a + 1}" for a in range(dim_m)]
        )

    @property
    def n(self) -> int:
        return self.dim_m

    @cached_property
    def Cm(self):
        """Cm[a, b, c] = e_c-coordinate of [e_a, e_b]_m."""
        k = self.dim_k
        return self.C[k:, k:, k:]

    @cached_property
    def Ck(self):
        """Ck[a, b, j] = k_j-coordinate of [e_a, e_b]_k."""
        k = self.dim_k
        return self.C[k:, k:, :k]

    def ad_k(self, j: int):
        """ad(k_j) restricted to m, as an n x n matrix."""
        k = self.dim_k
        return self.C[j, k:, k:].T.copy()

    def ad_m(self, a: int):
        """X -> [e_a, X]_m as an n x n matrix."""
        return self.Cm[a].T.copy()

    def zero(self):
        return ExactScalar() if self.mode == EXACT else 0.0

    def lowered(self) -> "ReductiveSpace":
        if self.mode == FLOAT:
            return self
        return ReductiveSpace(self.name, self.dim_k, self.dim_m,
                              lower_array(self.C).real.astype(float), FLOAT, self.basis_names)

    def bracket(self, u, v):
        """Bracket of coordinate vectors (length dim_k + dim_m)."""
        N = self.dim_k + self.dim_m
        out = [self.zero()] * N
        for a in range(N):
            if is_zero(u[a], 0.0):
                continue
            for b in range(N):
                if is_zero(v[b], 0.0):
                    continue
                f = u[a] * v[b]
                for c in range(N):
                    if not is_zero(self.C[a, b, c], 0.0):
                        out[c] = out[c] + f * self.C[a, b, c]
        return out


def from_matrix_algebra(name: str, k_mats: list, m_mats: list, inner, mode: str = EXACT,
                        basis_names: list[str] | None = None) -> ReductiveSpace:
    """Structure constants of a matrix Lie algebra with an orthogonal basis.

    inner(A, B) is an ad-invariant inner product; the m-matrices must be
    orthonormal for it, the k-matrices orthogonal. Every bracket is expanded by
    orthogonal projection and the expansion is checked exactly.
    """
    basis = list(k_mats) + list(m_mats)
    N = len(basis)
    norms = [inner(B, B) for B in basis]
    for a, b in itertools.combinations(range(N), 2):
        if not is_zero(inner(basis[a], basis[b])):
            raise ValidationError(f"basis elements {a} and {b} are not orthogonal")
    for a in range(len(k_mats), N):
        if norms[a] != 1:
            raise ValidationError(f"m-basis element {a - len(k_mats)} is not unit length")
    C = zeros((N, N, N), EXACT)
    for a in range(N):
        for b in range(N):
            br = basis[a] @ basis[b] - basis[b] @ basis[a]
            recon = br * 0
            for c in range(N):
                coef = inner(br, basis[c]) / norms[c]
                C[a, b, c] = coef
                recon = recon + basis[c] * coef
            if any(not is_zero(x) for x in (br - recon).reshape(-1)):
                raise ValidationError(f"bracket [{a},{b}] leaves the span of the basis")
    space = ReductiveSpace(name, len(k_mats), len(m_mats), C, EXACT, basis_names)
    return space if mode == EXACT else space.lowered()


def validate(space: ReductiveSpace, tol: float = TOL) -> ValidationReport:
    C = space.C
    N = space.dim_k + space.dim_m
    k = space.dim_k
    rep = ValidationReport()

    def first(pred_iter):
        for w in pred_iter:
            return w
        return None

    w = first((a, b) for a in range(N) for b in range(a, N)
              if any(not is_zero(C[a, b, c] + C[b, a, c], tol) for c in range(N)))
    rep.checks.append(Check("antisymmetry", w is None, w))

    def jacobi_violations():
        for a, b, c in itertools.combinations(range(N), 3):
            total = C[a, b, :] @ C[:, c, :] + C[b, c, :] @ C[:, a, :] + C[c, a, :] @ C[:, b, :]
            if any(not is_zero(x, tol) for x in total):
                yield (a, b, c)

    w = first(jacobi_violations())
    rep.checks.append(Check("jacobi", w is None, w))

    w = first((j, a) for j in range(k) for a in range(k, N)
              if any(not is_zero(C[j, a, i], tol) for i in range(k)))
    rep.checks.append(Check("reductive", w is None, w))

    w = first((j, a, b) for j in range(k) for a in range(k, N) for b in range(k, N)
              if not is_zero(C[j, a, b] + C[j, b, a], tol))
    rep.checks.append(Check("invariant_metric", w is None, w))

    n = space.dim_m
    Cm = space.Cm
    w = first((a, b, c) for a in range(n) for b in range(n) for c in range(n)
              if not is_zero(Cm[a, b, c] + Cm[a, c, b], tol))
    rep.checks.append(Check("naturally_reductive", w is None, w))
    return rep


def canonical_torsion(space: ReductiveSpace) -> Multivector:
    """The 3-form T(X, Y, Z) = -g([X, Y]_m, Z)."""
    n = space.n
    Cm = space.Cm
    comps = {}
    for a, b, c in itertools.product(range(n), repeat=3):
        if not is_zero(Cm[a, b, c] + Cm[a, c, b]):
            raise NotNaturallyReductive(
                f"g([e{a + 1},e{b + 1}]_m, e{c + 1}) is not skew in the last two slots")
    for a, b, c in itertools.combinations(range(n), 3):
        comps[(a + 1, b + 1, c + 1)] = -Cm[a, b, c]
    return Multivector.from_components(n, comps)


def form_tensor3(H: Multivector):
    """Totally skew array h[a, b, c] = H(e_a, e_b, e_c)."""
    n = H.dim
    mode = FLOAT if any(isinstance(v, (float, complex)) for v in H.terms.values()) else EXACT
    h = zeros((n, n, n), mode)
    for mask, c in H.terms.items():
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) != 3:
            raise ValueError("form_tensor3 needs a 3-form")
        for perm in itertools.permutations(range(3)):
            sign = _perm_sign(perm)
            a, b, d = (idx[p] for p in perm)
            h[a, b, d] = h[a, b, d] + (c if sign > 0 else -c)
    return h


def _perm_sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def nomizu(space: ReductiveSpace, t=0) -> list:
    """Λ^t(e_a) = ((1 - t)/2) ad_m(e_a); t = 0 Levi-Civita, t = 1 canonical."""
    f = (1 - ExactScalar(t)) / 2 if space.mode == EXACT else (1 - float(t)) / 2
    return [space.ad_m(a) * f for a in range(space.n)]


def nomizu_torsion(space: ReductiveSpace, H: Multivector | None) -> list:
    """Nomizu map of the metric connection ∇^g + ½H: Λ^g(X) + ½ H(X, ·)."""
    base = nomizu(space, 0)
    if H is None or not H.terms:
        return base
    h = form_tensor3(H)
    if space.mode == FLOAT:
        h = lower_array(h).real
    out = []
    for a in range(space.n):
        # matrix[c, b] = ½ H(e_a, e_b, e_c)
        out.append(base[a] + h[a].T * (ExactScalar(1) / 2 if space.mode == EXACT else 0.5))
    return out


def skew_to_E(M) -> dict:
    """Coefficients of a skew matrix in the basis E_{i,j} (e_i -> e_j), 1-based i < j."""
    n = M.shape[0]
    return {(i + 1, j + 1): M[j, i] for i in range(n) for j in range(i + 1, n)
            if not is_zero(M[j, i], 0.0)}


def curvature_nomizu(space: ReductiveSpace, Lam: list) -> list:
    """R[a][b] = [Λ(e_a), Λ(e_b)] - Λ([e_a, e_b]_m) - ad([e_a, e_b]_k)|_m."""
    n, k = space.n, space.dim_k
    ad = [space.ad_k(j) for j in range(k)]
    R = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if b < a:
                R[a][b] = -R[b][a]
                continue
            M = commutator(Lam[a], Lam[b])
            for c in range(n):
                coef = space.Cm[a, b, c]
                if not is_zero(coef, 0.0):
                    M = M - Lam[c] * coef
            for j in range(k):
                coef = space.Ck[a, b, j]
                if not is_zero(coef, 0.0):
                    M = M - ad[j] * coef
            R[a][b] = M
    return R


def curvature(space: ReductiveSpace, t=0) -> list:
    return curvature_nomizu(space, nomizu(space, t))


def ricci_from_curvature(R: list):
    """Ric[a, b] = sum_i g(R(e_a, e_i) e_i, e_b)."""
    n = len(R)
    Ric = np.empty((n, n), dtype=R[0][0].dtype)
    for a in range(n):
        for b in range(n):
            acc = R[a][0][b, 0] * 0
            for i in range(n):
                acc = acc + R[a][i][b, i]
            Ric[a, b] = acc
    return Ric


def ricci(space: ReductiveSpace, t=0):
    return ricci_from_curvature(curvature(space, t))


def scalar_from_ricci(Ric):
    acc = Ric[0, 0] * 0
    for i in range(Ric.shape[0]):
        acc = acc + Ric[i, i]
    return acc


def scalar(space: ReductiveSpace, t=0):
    return scalar_from_ricci(ricci(space, t))


def is_invariant(space: ReductiveSpace, alpha: Multivector, tol: float = TOL) -> bool:
    return all(form_derivation(space.ad_k(j), alpha).is_zero(tol) for j in range(space.dim_k))


def _component(alpha: Multivector, idx: list[int]):
    """alpha(e_idx[0], e_idx[1], ...) for 0-based indices."""
    if len(set(idx)) < len(idx):
        return 0
    mask = 0
    sign = 1
    for i in idx:
        bit = 1 << i
        if _reorder_sign(mask, bit) < 0:
            sign = -sign
        mask |= bit
    c = alpha.terms.get(mask, 0)
    return c if sign > 0 else -c


def invariant_d(space: ReductiveSpace, alpha: Multivector, check: bool = True) -> Multivector:
    """Exterior derivative of an invariant form via structure constants."""
    if check and not is_invariant(space, alpha):
        raise NotInvariant("form is not annihilated by ad(k)")
    n = space.n
    grades = alpha.grades()
    if not grades:
        return Multivector(n)
    if len(grades) != 1:
        return sum((invariant_d(space, alpha.grade(g), False) for g in sorted(grades)), Multivector(n))
    p = grades.pop()
    Cm = space.Cm
    comps = {}
    for I in itertools.combinations(range(n), p + 1):
        acc = 0
        for i, j in itertools.combinations(range(p + 1), 2):
            rest = [I[q] for q in range(p + 1) if q not in (i, j)]
            inner = 0
            for c in range(n):
                coef = Cm[I[i], I[j], c]
                if is_zero(coef, 0.0):
                    continue
                val = _component(alpha, [c] + rest)
                if not is_zero(val, 0.0):
                    inner = inner + coef * val
            if (i + j) % 2:
                inner = -inner
            acc = acc + inner
        if D_SIGN < 0:
            acc = -acc
        if not is_zero(acc, 0.0):
            comps[tuple(x + 1 for x in I)] = acc
    return Multivector.from_components(n, comps)


def invariant_delta(space: ReductiveSpace, alpha: Multivector, check: bool = True) -> Multivector:
    """Codifferential δ = (-1)^(n(k+1)+1) ∗d∗ on k-forms."""
    n = space.n
    out = Multivector(n)
    for k in sorted(alpha.grades()):
        piece = hodge_star(invariant_d(space, hodge_star(alpha.grade(k)), check))
        if (n * (k + 1) + 1) % 2:
            piece = -piece
        out = out + piece
    return out
