"""Derived torsion data: S-tensor, the Ric^s / Sca^s family, and ∇^s T.

The connection family is ∇^s = ∇^g + 2sT on vectors (torsion 4sT), so
s = 0 is Levi-Civita and s = 1/4 is the characteristic connection.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import Multivector, contract, form_derivation, form_norm_sq, sigma_t
from .errors import FormulaModeUnsupported, NotA3Form, ShapeMismatch
from .exactfield import TOL, ExactScalar
from .homspace import (ReductiveSpace, canonical_torsion, curvature_nomizu, form_tensor3,
                       invariant_d, nomizu_torsion, ricci_from_curvature, scalar_from_ricci)
from .linalg import EXACT, array_is_zero, lower_array


def _num(s, mode):
    if mode == EXACT:
        return ExactScalar(s)
    return float(s)


def s_tensor(T: Multivector):
    """S(X, Y) = Σ_i g(T(X, e_i), T(Y, e_i)) as an n x n matrix."""
    if not T.is_homogeneous(3) and T.terms:
        raise NotA3Form("S-tensor needs a 3-form")
    h = form_tensor3(T)
    n = T.dim
    S = np.empty((n, n), dtype=h.dtype)
    for a in range(n):
        for b in range(n):
            acc = h[0, 0, 0] * 0
            for i in range(n):
                for c in range(n):
                    acc = acc + h[a, i, c] * h[b, i, c]
            S[a, b] = acc
    return S


def ric_s(ric_g, S, s):
    """Ric^s = Ric^g - 4 s² S."""
    ric_g, S = np.asarray(ric_g), np.asarray(S)
    if ric_g.shape != S.shape:
        raise ShapeMismatch(f"Ric^g {ric_g.shape} vs S {S.shape}")
    f = 4 * s * s
    return ric_g - S * f


def sca_s(sca_g, tnorm2, s):
    """Sca^s = Sca^g - 24 s² ‖T‖²."""
    return sca_g - 24 * s * s * tnorm2


@dataclass
class TorsionContext:
    """A 3-form with its derived data; space is None in formula-only mode."""

    n: int
    T: Multivector | None
    tnorm2: object
    sigma: Multivector | None = None
    dT: Multivector | None = None
    S: object = None
    parallel: bool = True
    space: ReductiveSpace | None = None

    @classmethod
    def from_space(cls, space: ReductiveSpace, T: Multivector | None = None) -> "TorsionContext":
        if T is None:
            T = canonical_torsion(space)
        if T.terms and not T.is_homogeneous(3):
            raise NotA3Form("torsion must be a 3-form")
        sigma = sigma_t(T) if T.terms else Multivector(space.n)
        dT = invariant_d(space, T)
        ctx = cls(space.n, T, form_norm_sq(T) if T.terms else space.zero(), sigma, dT,
                  s_tensor(T), True, space)
        ctx.parallel = nabla_s_derivative_zero(ctx, Fraction(1, 4))
        return ctx

    @classmethod
    def formula(cls, n: int, tnorm2, S_multiple=None) -> "TorsionContext":
        """Formula-only context: S given as S_multiple * Id (default 6‖T‖²/n)."""
        if S_multiple is None:
            S_multiple = 6 * tnorm2 / n
        return cls(n, None, tnorm2, None, None, S_multiple, True, None)

    @property
    def mode(self) -> str:
        return self.space.mode if self.space is not None else EXACT

    def trace_S(self):
        if self.space is None:
            return self.S * self.n
        acc = self.S[0, 0] * 0
        for i in range(self.n):
            acc = acc + self.S[i, i]
        return acc

    def torsion_H(self, s) -> Multivector:
        """The torsion form H = 4sT of ∇^s."""
        return self.T * (_num(s, self.mode) * 4)

    def ric_s(self, s):
        """Ric^s from the curvature engine (Nomizu map of ∇^g + ½·4sT)."""
        self._need_space()
        R = curvature_nomizu(self.space, nomizu_torsion(self.space, self.torsion_H(s)))
        return ricci_from_curvature(R)

    def sca_s(self, s):
        return scalar_from_ricci(self.ric_s(s))

    def _need_space(self):
        if self.space is None:
            raise FormulaModeUnsupported("this operation needs an explicit homogeneous space")


def nabla_s_T(ctx: TorsionContext, s) -> list:
    """[∇^s_{e_a} T for each frame vector], via Nomizu maps as derivations."""
    ctx._need_space()
    Lam = nomizu_torsion(ctx.space, ctx.torsion_H(s))
    return [form_derivation(Lam[a], ctx.T) for a in range(ctx.n)]


def nabla_s_derivative_zero(ctx: TorsionContext, s) -> bool:
    return all(d.is_zero() for d in nabla_s_T(ctx, s))


def nabla_s_torsion_check(ctx: TorsionContext, s) -> bool:
    """∇^s_X T (Y, Z, V) = ((4s - 1)/2) σ_T(Y, Z, V, X) for every frame X."""
    if ctx.space is None:
        raise FormulaModeUnsupported("∇^s T needs an explicit homogeneous space")
    lhs = nabla_s_T(ctx, s)
    f = (_num(s, ctx.mode) * 4 - 1) / 2
    n = ctx.n
    for a in range(n):
        e = Multivector.basis(n, a + 1)
        # σ(Y, Z, V, X) = -(X ⌟ σ)(Y, Z, V)
        rhs = contract(e, ctx.sigma) * (-f)
        if not (lhs[a] - rhs).is_zero(TOL):
            return False
    return True


def ric_consistency(ctx: TorsionContext, ric_g, s) -> bool:
    """Curvature-engine Ric^s equals Ric^g - 4 s² S."""
    got = ctx.ric_s(s)
    want = ric_s(ric_g, ctx.S, _num(s, ctx.mode))
    diff = got - want
    if diff.dtype == object:
        return array_is_zero(diff)
    return array_is_zero(lower_array(diff))
