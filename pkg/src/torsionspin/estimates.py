"""Scalar-level eigenvalue estimates, the Killing criterion and Killing numbers.

All functions are generic in the value type: ExactScalar, Fraction, int,
ScalarPoly (for symbolic parameters such as tau0 or s) or float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateDimension, DimOutOfRange
from .exactfield import ExactScalar, ScalarPoly


@dataclass
class EstimateInput:
    """Sca^g_min, ‖T‖² and the T-eigenvalue γ (or only γ², for symbolic input)."""

    n: int
    sca_g_min: object
    tnorm2: object
    gamma: object = None
    gamma_sq: object = None

    def __post_init__(self):
        if self.n < 3:
            raise DimOutOfRange(f"n must be >= 3, got {self.n}")
        if self.gamma_sq is None:
            if self.gamma is None:
                raise ValueError("need gamma or gamma_sq")
            self.gamma_sq = self.gamma * self.gamma
        if isinstance(self.tnorm2, float) and self.tnorm2 < 0:
            raise ValueError("tnorm2 must be non-negative")

    def with_gamma_sq(self, g2) -> "EstimateInput":
        return EstimateInput(self.n, self.sca_g_min, self.tnorm2, None, g2)


def _q(a, b):
    return Fraction(a, b)


def beta_univ(inp: EstimateInput):
    """¼Sca^g_min + ⅛‖T‖² − ¼γ²."""
    return inp.sca_g_min * _q(1, 4) + inp.tnorm2 * _q(1, 8) - inp.gamma_sq * _q(1, 4)


def beta_tw(inp: EstimateInput):
    """n/(4(n−1))·Sca + n(n−5)/(8(n−3)²)·‖T‖² + n(4−n)/(4(n−3)²)·γ²."""
    n = inp.n
    if n == 3:
        raise DegenerateDimension("the twistorial estimate divides by (n-3)^2")
    d = (n - 3) ** 2
    return (inp.sca_g_min * _q(n, 4 * (n - 1)) + inp.tnorm2 * _q(n * (n - 5), 8 * d)
            + inp.gamma_sq * _q(n * (4 - n), 4 * d))


def killing_criterion(n: int, sca_g):
    """γ² forced by a ∇^c-parallel real Killing spinor: 4n/(9(n−1))·Sca^g."""
    if n < 3:
        raise DimOutOfRange(f"n must be >= 3, got {n}")
    return sca_g * _q(4 * n, 9 * (n - 1))


def low_dim_variants(n: int, tnorm2) -> dict:
    """For 3 < n <= 8: γ² = 2n‖T‖²/(9−n) and Sca^g = 9(n−1)‖T‖²/(2(9−n))."""
    if not 3 < n <= 8:
        raise DimOutOfRange(f"low-dimensional variants need 3 < n <= 8, got {n}")
    return {
        "gamma_sq": tnorm2 * _q(2 * n, 9 - n),
        "sca_g": tnorm2 * _q(9 * (n - 1), 2 * (9 - n)),
    }


def _sign(x) -> int:
    if isinstance(x, ExactScalar):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if abs(x) <= 1e-10:
        return 0
    return 1 if x > 0 else -1


def _status(x) -> str:
    s = _sign(x)
    return "equality" if s == 0 else ("strict" if s > 0 else "violated")


@dataclass
class InequalityReport:
    torsion_gap: object  # 2n‖T‖² + (n−9)γ²
    torsion_status: str
    sca_gap: object  # 9(n−1)/(2(9−n))·‖T‖² − Sca^g
    sca_status: str
    killing_flag: bool
    beta_univ: object
    beta_tw: object

    @property
    def double_equality(self) -> bool:
        return self.torsion_status == "equality" and self.sca_status == "equality"


def inequality_suite(inp: EstimateInput) -> InequalityReport:
    """Evaluate 0 <= 2n‖T‖² + (n−9)γ² and Sca^g <= 9(n−1)‖T‖²/(2(9−n)).

    Double equality is the case β_tw = β_univ, where the eigenspinor is a real
    Killing spinor with κ = 3γ/(4n); the flag records that case.
    """
    n = inp.n
    if not 3 < n <= 8:
        raise DimOutOfRange(f"the inequality suite needs 3 < n <= 8, got {n}")
    tg = inp.tnorm2 * (2 * n) + inp.gamma_sq * (n - 9)
    sg = inp.tnorm2 * _q(9 * (n - 1), 2 * (9 - n)) - inp.sca_g_min
    ts, ss = _status(tg), _status(sg)
    flag = ts == "equality" and ss == "equality"
    return InequalityReport(tg, ts, sg, ss, flag, beta_univ(inp), beta_tw(inp))


def ric_coefficient(n: int, s):
    """C(n, s) = [6(n−1)(1−4s)² + 96s(1−4s) + 16s(3−4s)(n−3)]/16.

    The Ric^s eigen-coefficient on a ∇^c-parallel Killing spinor is (6γ²/n²)·C(n, s).
    Pass s=None for the polynomial in s.
    """
    if n < 3:
        raise DimOutOfRange(f"n must be >= 3, got {n}")
    if s is None:
        s = ScalarPoly.variable("s")
    if isinstance(s, ScalarPoly):
        one = ScalarPoly([1], s.var)
        a = one - s * 4
        return (a * a * (6 * (n - 1)) + s * a * 96 + s * (one * 3 - s * 4) * (16 * (n - 3))) / 16
    a = 1 - 4 * s
    return (6 * (n - 1) * a * a + 96 * s * a + 16 * s * (3 - 4 * s) * (n - 3)) / 16


@dataclass
class SpinorConstants:
    n: int
    gamma: object
    kappa: object
    zeta: object
    sca_g: object
    sca_c: object
    tnorm2: object
    sca_g_alt: object  # 2γ² − ½‖T‖²
    sca_c_alt: object  # 2(γ² − ‖T‖²)
    dT_eig: object
    sigma_eig: object
    T_sq_eig: object
    s_star: object

    def consistent(self) -> dict:
        """Internal consistency relations, each True when exact equality holds."""
        return {
            "sca_g": self.sca_g == self.sca_g_alt,
            "sca_c": self.sca_c == self.sca_c_alt,
            "T_sq": self.T_sq_eig == self.gamma * self.gamma,
            "sigma_dT": self.dT_eig == self.sigma_eig * 2,
        }


def spinor_constants(n: int, gamma, s=None, tnorm2=None) -> SpinorConstants:
    """Constants attached to a ∇^c-parallel spinor with T·φ = γφ.

    Without tnorm2, ‖T‖² is recovered from Sca^g = 9(n−1)γ²/(4n) = 2γ² − ½‖T‖².
    Passing an independently computed ‖T‖² turns consistent() into a real check.
    """
    if n < 3:
        raise DimOutOfRange(f"n must be >= 3, got {n}")
    g2 = gamma * gamma
    kappa = gamma * _q(3, 4 * n)
    zeta = None
    if s is not None:
        one_minus = (ScalarPoly([1], s.var) if isinstance(s, ScalarPoly) else 1) - s * 4
        zeta = one_minus * gamma * _q(3, 4 * n) if isinstance(s, ScalarPoly) else gamma * one_minus * _q(3, 4 * n)
    sca_g = g2 * _q(9 * (n - 1), 4 * n)
    sca_c = g2 * _q(3 * (n - 3), n)
    if tnorm2 is None:
        tnorm2 = (g2 * 2 - sca_g) * 2
    dT = g2 * _q(-3 * (n - 3), 2 * n)
    sigma = sca_c * _q(-1, 4)
    t_sq = (sca_g * 2 + tnorm2) * _q(1, 4)
    s_star = _q(n - 1, 4 * (n - 3)) if n > 3 else None
    return SpinorConstants(n, gamma, kappa, zeta, sca_g, sca_c, tnorm2,
                           g2 * 2 - tnorm2 * _q(1, 2), (g2 - tnorm2) * 2, dT, sigma, t_sq, s_star)


def special_s(n: int) -> Fraction:
    """s* = (n−1)/(4(n−3)); undefined for n = 3."""
    if n <= 3:
        raise DimOutOfRange("s* = (n-1)/(4(n-3)) needs n > 3")
    return _q(n - 1, 4 * (n - 3))
