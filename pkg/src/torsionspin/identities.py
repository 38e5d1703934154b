"""The seven Clifford-algebra identities for a 3-form T and a vector X.

Each returns (lhs, rhs) so callers can report both sides.
"""
from __future__ import annotations

import random
from itertools import combinations

from .clifford import Multivector, contract, form_norm_sq, frame, sigma_t, torsion_vector, wedge

IDENTITY_NAMES = (
    "sigma_square",      # 2σ_T = ‖T‖² − T²
    "wedge_split",       # X∧T = X⌟T + X·T
    "sigma_contraction", # −2(X⌟σ_T) = ½(T²X − XT²) = (X⌟T)T − T(X⌟T)
    "sum_contract_T",    # Σ e_i(e_i⌟T) = 3T
    "sum_contract_sigma",  # Σ e_i(e_i⌟σ_T) = 4σ_T
    "torsion_vector_sum",  # Σ e_i T(X, e_i) = 2(X⌟T)
    "contraction_square",  # Σ (e_i⌟T)(e_i⌟T) = 2σ_T − 3‖T‖²
)


def identity_sides(name: str, T: Multivector, X: Multivector) -> list[tuple[Multivector, Multivector]]:
    n = T.dim
    E = frame(n)
    one = Multivector.scalar(n, 1)
    if name == "sigma_square":
        return [(sigma_t(T) * 2, one * form_norm_sq(T) - T * T)]
    if name == "wedge_split":
        return [(wedge(X, T), contract(X, T) + X * T)]
    if name == "sigma_contraction":
        T2 = T * T
        XT = contract(X, T)
        a = contract(X, sigma_t(T)) * -2
        return [(a, (T2 * X - X * T2) / 2), (a, XT * T - T * XT)]
    if name == "sum_contract_T":
        return [(_sum(n, (e * contract(e, T) for e in E)), T * 3)]
    if name == "sum_contract_sigma":
        s = sigma_t(T)
        return [(_sum(n, (e * contract(e, s) for e in E)), s * 4)]
    if name == "torsion_vector_sum":
        return [(_sum(n, (e * torsion_vector(T, X, e) for e in E)), contract(X, T) * 2)]
    if name == "contraction_square":
        lhs = _sum(n, (contract(e, T) * contract(e, T) for e in E))
        return [(lhs, sigma_t(T) * 2 - one * (form_norm_sq(T) * 3))]
    raise KeyError(name)


def _sum(n, items):
    acc = Multivector(n)
    for x in items:
        acc = acc + x
    return acc


def check_identity(name: str, T: Multivector, X: Multivector, tol: float = 0.0) -> bool:
    return all(l.equals(r, tol) for l, r in identity_sides(name, T, X))


def random_three_form(rng: random.Random, n: int, lo: int = -3, hi: int = 3, density: float = 0.6) -> Multivector:
    comps = {}
    for idx in combinations(range(1, n + 1), 3):
        if rng.random() < density:
            c = rng.randint(lo, hi)
            if c:
                comps[idx] = c
    return Multivector.from_components(n, comps) if comps else Multivector.blade(n, (1, 2, 3), 1)


def random_vector(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Multivector:
    v = Multivector.vector(n, [rng.randint(lo, hi) for _ in range(n)])
    return v if v.terms else Multivector.basis(n, 1)
