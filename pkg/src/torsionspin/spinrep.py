"""Spin representations of Cl(n), 3 <= n <= 8, with e_i^2 = -1.

For n != 7 the gamma matrices come from the standard Pauli tensor recursion
(Hermitian generators G_k with G_k^2 = 1, then gamma_k = i G_k). For n = 7
the matrices are real: gamma_k = -L_k, where L_k is left multiplication by
the imaginary octonion unit e_k on R^8 = span(1, e_1, ..., e_7), with the
octonion product fixed by e_i e_{i+1} = e_{i+3} (indices mod 7).
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from .clifford import Multivector
from .errors import DimMismatch, NotSkew, UnsupportedDim
from .exactfield import ExactScalar, is_zero
from .linalg import EXACT, FLOAT, eye, lower_array, zeros

_I = ExactScalar.i()

FANO_TRIPLES = tuple((i, (i % 7) + 1, ((i + 2) % 7) + 1) for i in range(1, 8))


def _pauli():
    one, zero = ExactScalar(1), ExactScalar()
    X = np.array([[zero, one], [one, zero]], dtype=object)
    Y = np.array([[zero, -_I], [_I, zero]], dtype=object)
    Z = np.array([[one, zero], [zero, -one]], dtype=object)
    Id = np.array([[one, zero], [zero, one]], dtype=object)
    return X, Y, Z, Id


def _kron_all(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _complex_gammas(n: int) -> list[np.ndarray]:
    X, Y, Z, Id = _pauli()
    m = n // 2
    gens = []
    for k in range(m):
        for P in (X, Y):
            gens.append(_kron_all([Z] * k + [P] + [Id] * (m - k - 1)))
    if n % 2:
        gens.append(_kron_all([Z] * m))
    return [g * _I for g in gens]


def octonion_left(k: int) -> np.ndarray:
    """Matrix of left multiplication by e_k on the octonions (basis 1, e_1..e_7)."""
    table = {}
    for a, b, c in FANO_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[(x, y)] = (1, z)
            table[(y, x)] = (-1, z)
    L = zeros((8, 8))
    L[k, 0] = ExactScalar(1)  # e_k * 1 = e_k
    L[0, k] = ExactScalar(-1)  # e_k * e_k = -1
    for j in range(1, 8):
        if j != k:
            s, z = table[(k, j)]
            L[z, j] = ExactScalar(s)
    return L


def _real7_gammas() -> list[np.ndarray]:
    return [-octonion_left(k) for k in range(1, 8)]


class GammaRep:
    """Gamma matrices for Cl(n); mode 'exact' (ExactScalar) or 'float' (complex)."""

    def __init__(self, n: int, gamma: list, mode: str, conventions: str):
        self.n = n
        self.gamma = gamma
        self.mode = mode
        self.conventions = conventions
        self._blade_cache: dict[int, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return self.gamma[0].shape[0]

    def identity(self):
        return eye(self.dim, self.mode)

    def zeros(self):
        return zeros((self.dim, self.dim), self.mode)

    def blade_matrix(self, mask: int) -> np.ndarray:
        mat = self._blade_cache.get(mask)
        if mat is None:
            mat = self.identity()
            k = 0
            m = mask
            while m:
                if m & 1:
                    mat = mat @ self.gamma[k]
                m >>= 1
                k += 1
            self._blade_cache[mask] = mat
        return mat

    def matrix(self, a: Multivector) -> np.ndarray:
        """Matrix of Clifford multiplication by a."""
        if a.dim != self.n:
            raise DimMismatch(f"multivector of dim {a.dim} on Δ_{self.n}")
        out = self.zeros()
        for m, c in a.terms.items():
            if self.mode == FLOAT:
                c = complex(c)
            out = out + self.blade_matrix(m) * c
        return out

    @cached_property
    def volume_sign(self) -> int:
        vol = self.blade_matrix((1 << self.n) - 1)
        ident = self.identity()
        for s in (1, -1):
            if all(is_zero(x) for x in (vol - ident * s).reshape(-1)):
                return s
        return 0

    def lowered(self) -> "GammaRep":
        if self.mode == FLOAT:
            return self
        return GammaRep(self.n, [lower_array(g) for g in self.gamma], FLOAT, self.conventions)


def build_rep(n: int, mode: str = EXACT) -> GammaRep:
    if not 3 <= n <= 8:
        raise UnsupportedDim(f"spin representations are provided for 3 <= n <= 8, got {n}")
    if n == 7:
        rep = GammaRep(7, _real7_gammas(), EXACT, "real-octonion: gamma_k = -L(e_k)")
    else:
        rep = GammaRep(n, _complex_gammas(n), EXACT, "pauli-recursion: gamma_k = i*G_k")
    return rep if mode == EXACT else rep.lowered()


class SpinorVec:
    """A spinor: a column vector for a given representation."""

    __slots__ = ("rep", "data")

    def __init__(self, rep: GammaRep, data):
        data = np.asarray(data, dtype=object if rep.mode == EXACT else complex)
        if data.shape != (rep.dim,):
            raise DimMismatch(f"spinor of length {data.shape} for Δ of dim {rep.dim}")
        if rep.mode == EXACT:
            data = np.array([ExactScalar(x) for x in data], dtype=object)
        self.rep = rep
        self.data = data

    @classmethod
    def zero(cls, rep: GammaRep) -> "SpinorVec":
        return cls(rep, zeros(rep.dim, rep.mode))

    def _new(self, data) -> "SpinorVec":
        out = SpinorVec.__new__(SpinorVec)
        out.rep = self.rep
        out.data = data
        return out

    def __add__(self, other: "SpinorVec"):
        return self._new(self.data + other.data)

    def __sub__(self, other: "SpinorVec"):
        return self._new(self.data - other.data)

    def __neg__(self):
        return self._new(-self.data)

    def __mul__(self, c):
        if self.rep.mode == FLOAT:
            c = complex(c)
        return self._new(self.data * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self._new(self.data * (1 / (complex(c) if self.rep.mode == FLOAT else ExactScalar(c))))

    def apply(self, mat) -> "SpinorVec":
        return self._new(mat @ self.data)

    def is_zero(self, tol: float = 1e-10) -> bool:
        return all(is_zero(x, tol) for x in self.data)

    def equals(self, other: "SpinorVec", tol: float = 1e-10) -> bool:
        return (self - other).is_zero(tol)

    def __eq__(self, other):
        if not isinstance(other, SpinorVec):
            return NotImplemented
        return self.equals(other, 0.0 if self.rep.mode == EXACT else 1e-10)

    __hash__ = None

    def ratio_to(self, other: "SpinorVec"):
        """The scalar c with self = c * other, or None if not proportional."""
        k = next((i for i, x in enumerate(other.data) if not is_zero(x)), None)
        if k is None:
            return None
        c = self.data[k] / other.data[k]
        return c if self.equals(other * c) else None

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.data) + "]"


def act(a: Multivector, v: SpinorVec) -> SpinorVec:
    return v.apply(v.rep.matrix(a))


def spin_lift(A, rep: GammaRep) -> np.ndarray:
    """Lift of a skew endomorphism A (A[j][i] = e_j-coordinate of A e_i) to
    the spin representation: E_{i,j} (e_i -> e_j, e_j -> -e_i) maps to ½ e_i e_j."""
    n = rep.n
    A = np.asarray(A, dtype=object if rep.mode == EXACT else complex)
    if A.shape != (n, n):
        raise DimMismatch(f"{A.shape} matrix for Δ_{n}")
    for i in range(n):
        for j in range(i, n):
            if not is_zero(A[i, j] + A[j, i]):
                raise NotSkew(f"entry ({i + 1},{j + 1}) breaks skew-symmetry")
    out = rep.zeros()
    for i in range(n):
        for j in range(i + 1, n):
            c = A[j, i]
            if is_zero(c, 0.0):
                continue
            mask = (1 << i) | (1 << j)
            out = out + rep.blade_matrix(mask) * (c / 2)
    return out
