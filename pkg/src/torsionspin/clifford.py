"""Clifford and exterior algebra over an orthonormal frame e_1..e_n.

Convention: e_i e_j + e_j e_i = -2 delta_ij. A basis blade e_{i1..ik}
(i1 < ... < ik) is stored under the bitmask with bit (i-1) set for each
index; as a Clifford element it is the product e_i1 ... e_ik, and as a form
it is e_i1 ^ ... ^ e_ik. Coefficients are any exact or float scalars.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import DimMismatch, NotA3Form, NotAVector
from .exactfield import TOL, fmt, is_zero

MAX_DIM = 10


@lru_cache(maxsize=None)
def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated index word of blades a and b."""
    a >>= 1
    swaps = 0
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _gp_sign(a: int, b: int) -> int:
    s = _reorder_sign(a, b)
    # each repeated index contributes e_i e_i = -1
    if bin(a & b).count("1") & 1:
        s = -s
    return s


def _nonzero(c) -> bool:
    return c != 0


class Multivector:
    """Immutable element of Cl(n) with e_i^2 = -1."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        if not 1 <= dim <= MAX_DIM:
            raise DimMismatch(f"dimension {dim} outside 1..{MAX_DIM}")
        self.dim = dim
        self.terms: dict[int, object] = {
            m: c for m, c in (terms or {}).items() if _nonzero(c)
        }

    # constructors
    @classmethod
    def scalar(cls, dim: int, c) -> "Multivector":
        return cls(dim, {0: c})

    @classmethod
    def blade(cls, dim: int, indices: Iterable[int], coeff=1) -> "Multivector":
        """coeff * e_{i1} e_{i2} ... in the given order (1-based indices)."""
        out = cls.scalar(dim, coeff)
        for i in indices:
            out = out * cls.basis(dim, i)
        return out

    @classmethod
    def basis(cls, dim: int, i: int) -> "Multivector":
        if not 1 <= i <= dim:
            raise DimMismatch(f"index {i} outside 1..{dim}")
        return cls(dim, {1 << (i - 1): 1})

    @classmethod
    def vector(cls, dim: int, coords: Iterable) -> "Multivector":
        coords = list(coords)
        if len(coords) != dim:
            raise DimMismatch(f"{len(coords)} coordinates for dimension {dim}")
        return cls(dim, {1 << k: c for k, c in enumerate(coords)})

    @classmethod
    def from_components(cls, dim: int, comps: dict[tuple[int, ...], object]) -> "Multivector":
        """Form from coefficients keyed by increasing 1-based index tuples."""
        out = {}
        for idx, c in comps.items():
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"indices {idx} must be strictly increasing")
            m = 0
            for i in idx:
                m |= 1 << (i - 1)
            out[m] = out.get(m, 0) + c
        return cls(dim, out)

    # inspection
    def grades(self) -> set[int]:
        return {bin(m).count("1") for m in self.terms}

    def grade(self, k: int) -> "Multivector":
        return Multivector(self.dim, {m: c for m, c in self.terms.items() if bin(m).count("1") == k})

    def is_homogeneous(self, k: int) -> bool:
        return all(bin(m).count("1") == k for m in self.terms)

    def scalar_part(self):
        return self.terms.get(0, 0)

    def coeff(self, *indices: int):
        m = 0
        for i in indices:
            m |= 1 << (i - 1)
        return self.terms.get(m, 0)

    def vector_coords(self) -> list:
        if not self.is_homogeneous(1):
            raise NotAVector("not a vector")
        return [self.terms.get(1 << k, 0) for k in range(self.dim)]

    def is_zero(self, tol: float = TOL) -> bool:
        return all(is_zero(c, tol) for c in self.terms.values())

    def map_coeffs(self, f) -> "Multivector":
        return Multivector(self.dim, {m: f(c) for m, c in self.terms.items()})

    # arithmetic
    def _check(self, other: "Multivector") -> None:
        if other.dim != self.dim:
            raise DimMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.dim, other)
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return Multivector(self.dim, t)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            other = Multivector.scalar(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Multivector):
            return Multivector(self.dim, {m: c * other for m, c in self.terms.items()})
        return geometric_product(self, other)

    def __rmul__(self, other):
        return Multivector(self.dim, {m: other * c for m, c in self.terms.items()})

    def __truediv__(self, other):
        return Multivector(self.dim, {m: c / other for m, c in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.dim == other.dim and (self - other).is_zero(0.0)
        if other == 0:
            return not self.terms
        return NotImplemented

    def equals(self, other: "Multivector", tol: float = TOL) -> bool:
        return (self - other).is_zero(tol)

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (bin(m).count("1"), _indices(m))):
            c = self.terms[m]
            name = blade_name(m)
            cs = fmt(c)
            if name == "":
                parts.append(cs)
            elif cs == "1":
                parts.append(name)
            elif cs == "-1":
                parts.append("-" + name)
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{name}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") and not p.startswith("-(") else f" + {p}"
        return out

    __repr__ = __str__


def _indices(m: int) -> tuple[int, ...]:
    out = []
    k = 1
    while m:
        if m & 1:
            out.append(k)
        m >>= 1
        k += 1
    return tuple(out)


def blade_indices(m: int) -> tuple[int, ...]:
    return _indices(m)


def blade_name(m: int) -> str:
    idx = _indices(m)
    if not idx:
        return ""
    if all(i < 10 for i in idx):
        return "e" + "".join(str(i) for i in idx)
    return "e(" + ",".join(str(i) for i in idx) + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            k = ma ^ mb
            v = ca * cb
            if _gp_sign(ma, mb) < 0:
                v = -v
            out[k] = out[k] + v if k in out else v
    return Multivector(a.dim, out)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out: dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            k = ma | mb
            v = ca * cb
            if _reorder_sign(ma, mb) < 0:
                v = -v
            out[k] = out[k] + v if k in out else v
    return Multivector(a.dim, out)


def contract(x: Multivector, a: Multivector) -> Multivector:
    """Interior product x ⌟ a of a vector into a form (first slot)."""
    if not x.is_homogeneous(1):
        raise NotAVector("contract needs a grade-1 multivector")
    x._check(a)
    out: dict[int, object] = {}
    for mx, cx in x.terms.items():
        for ma, ca in a.terms.items():
            if not ma & mx:
                continue
            k = ma ^ mx
            v = cx * ca
            # number of indices in the blade before the removed one
            if bin(ma & (mx - 1)).count("1") & 1:
                v = -v
            out[k] = out[k] + v if k in out else v
    return Multivector(a.dim, out)


def _require_3form(T: Multivector) -> None:
    if not T.is_homogeneous(3):
        raise NotA3Form("expected a 3-form")


def frame(dim: int) -> list[Multivector]:
    return [Multivector.basis(dim, i) for i in range(1, dim + 1)]


def sigma_t(T: Multivector) -> Multivector:
    """The 4-form ½ Σ (e_i ⌟ T) ∧ (e_i ⌟ T)."""
    _require_3form(T)
    acc = Multivector(T.dim)
    for e in frame(T.dim):
        c = contract(e, T)
        acc = acc + wedge(c, c)
    return acc.map_coeffs(_half)


def _half(c):
    return c / 2


def form_norm_sq(T: Multivector):
    """Σ_{i<j<k} T_ijk² (the squared norm of a 3-form)."""
    _require_3form(T)
    return norm_sq(T)


def norm_sq(a: Multivector):
    acc = 0
    for c in a.terms.values():
        acc = acc + c * c
    return acc


def hodge_star(a: Multivector) -> Multivector:
    """Hodge star with e_I ∧ ∗e_I = vol = e_1...e_n."""
    n = a.dim
    full = (1 << n) - 1
    out = {}
    for m, c in a.terms.items():
        comp = full ^ m
        out[comp] = -c if _reorder_sign(m, comp) < 0 else c
    return Multivector(n, out)


def volume(dim: int) -> Multivector:
    return Multivector(dim, {(1 << dim) - 1: 1})


def evaluate(a: Multivector, *vectors: Multivector):
    """Evaluate a k-form on k vectors: a(v1, ..., vk)."""
    cur = a
    for v in vectors:
        cur = contract(v, cur)
    return cur.scalar_part()


def torsion_vector(T: Multivector, x: Multivector, y: Multivector) -> Multivector:
    """The vector T(x, y) with g(T(x, y), z) = T(x, y, z)."""
    _require_3form(T)
    if not x.is_homogeneous(1) or not y.is_homogeneous(1):
        raise NotAVector("torsion_vector needs vectors")
    return contract(y, contract(x, T))


def form_derivation(A, a: Multivector) -> Multivector:
    """Extend an endomorphism A of the frame (A[i][j] = e_i-coordinate of A e_j)
    to forms as a derivation: e_{i1}∧...∧e_{ik} ↦ Σ_j e_{i1}∧...∧A e_{ij}∧...∧e_{ik}."""
    n = a.dim
    cols = [Multivector.vector(n, [A[r][j] for r in range(n)]) for j in range(n)]
    acc = Multivector(n)
    for m, c in a.terms.items():
        idx = _indices(m)
        for pos in range(len(idx)):
            piece = Multivector.scalar(n, c)
            for q, i in enumerate(idx):
                piece = wedge(piece, cols[i - 1] if q == pos else Multivector.basis(n, i))
            acc = acc + piece
    return acc
