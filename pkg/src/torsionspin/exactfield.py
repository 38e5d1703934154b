"""Exact arithmetic in multi-quadratic number fields Q(i, sqrt(d1), ..., sqrt(dk)).

An element is stored as a map from signed square-free radicands r to
rational coefficients, meaning sum q_r * sqrt(r), with sqrt(-m) = i*sqrt(m).
The radicands span the field as a rational vector space; the generators of
the tower are the distinct primes occurring in them, plus -1 when i appears.
"""
from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from sympy import factorint, primefactors

from .errors import DivisionByZero, ParseError, TowerOverflow

Rational = Union[int, Fraction]

# Equality tolerance used whenever a value is a float or complex.
TOL = 1e-10


@lru_cache(maxsize=None)
def _squarefree_split(m: int) -> tuple[int, int]:
    """Return (k, f) with m = k**2 * f and f square-free, for m > 0."""
    k, f = 1, 1
    for p, e in factorint(m).items():
        k *= p ** (e // 2)
        if e % 2:
            f *= p
    return k, f


@lru_cache(maxsize=None)
def _generators(r: int) -> tuple[int, ...]:
    gens = tuple(primefactors(abs(r))) if abs(r) > 1 else ()
    return ((-1,) if r < 0 else ()) + gens


@lru_cache(maxsize=65536)
def _radical_product(r1: int, r2: int) -> tuple[int, int]:
    """sqrt(r1)*sqrt(r2) = factor * sqrt(r); returns (factor, r)."""
    a, b = abs(r1), abs(r2)
    g = math.gcd(a, b)
    r = (a // g) * (b // g)
    factor = g
    neg1, neg2 = r1 < 0, r2 < 0
    if neg1 and neg2:
        factor = -factor
    elif neg1 or neg2:
        r = -r
    return factor, r


class ExactScalar:
    """Immutable element of a multi-quadratic field, optionally containing i."""

    __slots__ = ("_c", "_hash")

    # Maximum number of tower generators (primes and i) an element may involve.
    max_radicals = 4

    def __init__(self, value: "ExactScalar | Rational | str | dict | None" = 0):
        if isinstance(value, ExactScalar):
            c = value._c
        elif isinstance(value, (int, Fraction)):
            c = {1: Fraction(value)} if value else {}
        elif isinstance(value, str):
            c = parse_scalar(value)._c
        elif isinstance(value, dict):
            c = {}
            for r, q in value.items():
                r = int(r)
                if r == 0:
                    raise ValueError("radicand 0")
                k, f = _squarefree_split(abs(r))
                q = Fraction(q) * k
                if r < 0:
                    f = -f
                c[f] = c.get(f, Fraction(0)) + q
            c = {r: q for r, q in c.items() if q}
            _check_tower(c)
        elif value is None:
            c = {}
        else:
            raise TypeError(f"cannot build ExactScalar from {type(value).__name__}")
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    # construction helpers
    @classmethod
    def sqrt(cls, q: "Rational | str | ExactScalar") -> "ExactScalar":
        """Exact square root of a rational number (negative values give i*sqrt)."""
        if isinstance(q, ExactScalar):
            if not q.is_rational():
                raise ValueError("sqrt is only available for rational values")
            q = q.rational()
        q = Fraction(q)
        if q == 0:
            return cls()
        num, den = abs(q.numerator), q.denominator
        # sqrt(num/den) = sqrt(num*den)/den
        k, f = _squarefree_split(num * den)
        if q < 0:
            f = -f
        c = {f: Fraction(k, den)}
        _check_tower(c)
        return cls._raw(c)

    @classmethod
    def i(cls) -> "ExactScalar":
        return cls._raw({-1: Fraction(1)})

    # inspection
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def tower(self) -> list[int]:
        gens: set[int] = set()
        for r in self._c:
            gens.update(_generators(r))
        return sorted(gens)

    def is_rational(self) -> bool:
        return all(r == 1 for r in self._c)

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c.get(1, Fraction(0))

    def is_real(self) -> bool:
        return all(r > 0 for r in self._c)

    def real(self) -> "ExactScalar":
        return ExactScalar._raw({r: q for r, q in self._c.items() if r > 0})

    def imag(self) -> "ExactScalar":
        """Imaginary part, as a real element."""
        out = {}
        for r, q in self._c.items():
            if r < 0:
                out[-r] = q
        return ExactScalar._raw(out)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar._raw({r: (-q if r < 0 else q) for r, q in self._c.items()})

    def galois_conjugate(self, p: int) -> "ExactScalar":
        """Flip the sign of sqrt(p) (p a prime generator, or -1 for i)."""
        if p == -1:
            return self.conjugate()
        return ExactScalar._raw(
            {r: (-q if r % p == 0 else q) for r, q in self._c.items()}
        )

    # arithmetic
    def _coerce(self, other) -> "ExactScalar | None":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar._raw({1: Fraction(other)} if other else {})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for r, q in o._c.items():
            v = c.get(r, 0) + q
            if v:
                c[r] = v
            else:
                c.pop(r, None)
        if len(o._c) and not set(o._c) <= set(self._c):
            _check_tower(c)
        return ExactScalar._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw({r: -q for r, q in self._c.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return ExactScalar._raw({})
        if len(o._c) == 1 and 1 in o._c:
            f = o._c[1]
            return ExactScalar._raw({r: q * f for r, q in self._c.items()})
        if len(self._c) == 1 and 1 in self._c:
            f = self._c[1]
            return ExactScalar._raw({r: q * f for r, q in o._c.items()})
        c: dict[int, Fraction] = {}
        for r1, q1 in self._c.items():
            for r2, q2 in o._c.items():
                factor, r = _radical_product(r1, r2)
                c[r] = c.get(r, 0) + q1 * q2 * factor
        c = {r: q for r, q in c.items() if q}
        _check_tower(c)
        return ExactScalar._raw(c)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self._c:
            raise DivisionByZero("division by exact zero")
        num = ExactScalar(1)
        den = self
        for p in self.tower:
            conj = den.galois_conjugate(p)
            num = num * conj
            den = den * conj
        return num * (1 / den.rational())

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._c:
            raise DivisionByZero("division by exact zero")
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self._c == o._c

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational())
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def sign(self) -> int:
        """Exact sign of a real element: -1, 0 or 1."""
        if not self._c:
            return 0
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        if self.is_rational():
            q = self.rational()
            return (q > 0) - (q < 0)
        bound = sum(abs(q) * math.isqrt(r) + abs(q) for r, q in self._c.items())
        prec = 40
        while True:
            with localcontext() as ctx:
                ctx.prec = prec
                approx = sum(
                    (Decimal(q.numerator) / Decimal(q.denominator)) * Decimal(r).sqrt()
                    for r, q in self._c.items()
                )
                err = Decimal(int(bound) + 1) * Decimal(10) ** (-(prec - 5))
                if abs(approx) > err:
                    return 1 if approx > 0 else -1
            prec *= 2

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # conversion
    def __complex__(self):
        re_part = 0.0
        im_part = 0.0
        for r, q in self._c.items():
            v = float(q) * (math.sqrt(abs(r)) if abs(r) != 1 else 1.0)
            if r > 0:
                re_part += v
            else:
                im_part += v
        return complex(re_part, im_part)

    def __float__(self):
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return complex(self).real

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for r in sorted(self._c, key=lambda r: (abs(r), r < 0)):
            q = self._c[r]
            neg = q < 0
            q = abs(q)
            if r == 1:
                body = str(q)
            else:
                rad = "i" if r == -1 else (f"i*sqrt({-r})" if r < 0 else f"sqrt({r})")
                body = rad if q == 1 else f"{q}*{rad}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, body in parts[1:]:
            out += f" {s} {body}"
        return out

    def __repr__(self):
        return f"ExactScalar('{self}')"


def _check_tower(c: dict) -> None:
    gens: set[int] = set()
    for r in c:
        if r != 1:
            gens.update(_generators(r))
    if len(gens) > ExactScalar.max_radicals:
        raise TowerOverflow(
            f"{len(gens)} radicals {sorted(gens)} exceed the cap of {ExactScalar.max_radicals}"
        )


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)\s*\(\s*(-?\d+)\s*\)|(sqrt)(\d+)|(i)|([-+*/()]))")


def parse_scalar(text: str) -> ExactScalar:
    """Parse the text form produced by str(ExactScalar), plus simple variations.

    Accepted: integers, 'i', 'sqrt(d)' or 'sqrtd', combined with + - * / and
    parentheses, e.g. '-1/sqrt(5)', '3/2*sqrt(15) - i'.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse scalar {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            tokens.append(ExactScalar(int(m.group(1))))
        elif m.group(2):
            tokens.append(ExactScalar.sqrt(int(m.group(3))))
        elif m.group(4):
            tokens.append(ExactScalar.sqrt(int(m.group(5))))
        elif m.group(6):
            tokens.append(ExactScalar.i())
        else:
            tokens.append(m.group(7))
    if not tokens:
        raise ParseError("empty scalar")
    value, rest = _parse_sum(tokens, 0)
    if rest != len(tokens):
        raise ParseError(f"trailing input in scalar {text!r}")
    return value


def _parse_sum(tokens, k):
    sign = 1
    if k < len(tokens) and tokens[k] in ("+", "-"):
        sign = -1 if tokens[k] == "-" else 1
        k += 1
    value, k = _parse_product(tokens, k)
    value = value * sign
    while k < len(tokens) and tokens[k] in ("+", "-"):
        op = tokens[k]
        term, k = _parse_product(tokens, k + 1)
        value = value + term if op == "+" else value - term
    return value, k


def _parse_product(tokens, k):
    value, k = _parse_atom(tokens, k)
    while k < len(tokens) and tokens[k] in ("*", "/"):
        op = tokens[k]
        rhs, k = _parse_atom(tokens, k + 1)
        value = value * rhs if op == "*" else value / rhs
    return value, k


def _parse_atom(tokens, k):
    if k >= len(tokens):
        raise ParseError("unexpected end of scalar")
    t = tokens[k]
    if isinstance(t, ExactScalar):
        return t, k + 1
    if t == "(":
        value, k = _parse_sum(tokens, k + 1)
        if k >= len(tokens) or tokens[k] != ")":
            raise ParseError("unbalanced parenthesis")
        return value, k + 1
    if t == "-":
        value, k = _parse_atom(tokens, k + 1)
        return -value, k
    raise ParseError(f"unexpected token {t!r}")


# Functional API and mode helpers


def field_arith(a, b, op: str) -> ExactScalar:
    a, b = ExactScalar(a), ExactScalar(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def to_float(a) -> float:
    return float(a)


def lower(x):
    """Float twin of an exact value: float when real, complex otherwise."""
    if isinstance(x, ExactScalar):
        return float(x) if x.is_real() else complex(x)
    if isinstance(x, Fraction):
        return float(x)
    return x


def is_exact(x) -> bool:
    return isinstance(x, (ExactScalar, int, Fraction))


def is_zero(x, tol: float = TOL) -> bool:
    if isinstance(x, (ExactScalar, int, Fraction)):
        return not x
    if isinstance(x, ScalarPoly):
        return x.is_zero()
    return abs(x) <= tol


def close(a, b, tol: float = TOL) -> bool:
    """Equality: exact for exact values, relative-absolute tolerance otherwise."""
    if is_exact(a) and is_exact(b):
        return ExactScalar(a) == ExactScalar(b)
    if isinstance(a, ScalarPoly) or isinstance(b, ScalarPoly):
        return ScalarPoly.coerce(a) == ScalarPoly.coerce(b)
    a, b = complex(a), complex(b)
    return abs(a - b) <= tol * max(1.0, abs(b))


def fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return repr(x.real) if x.imag == 0 else repr(x)
    return str(x)


class ScalarPoly:
    """Univariate polynomial with ExactScalar coefficients (index = degree)."""

    __slots__ = ("coefficients", "var")

    def __init__(self, coefficients: Iterable = (), var: str = "t"):
        cs = [ExactScalar(c) for c in coefficients]
        while cs and not cs[-1]:
            cs.pop()
        self.coefficients: tuple[ExactScalar, ...] = tuple(cs)
        self.var = var

    @classmethod
    def variable(cls, var: str = "t") -> "ScalarPoly":
        return cls([0, 1], var)

    @classmethod
    def coerce(cls, x, var: str = "t") -> "ScalarPoly":
        if isinstance(x, ScalarPoly):
            return x
        return cls([x], var)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def _wrap(self, other):
        if isinstance(other, ScalarPoly):
            return other
        if isinstance(other, (ExactScalar, int, Fraction)):
            return ScalarPoly([other], self.var)
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coefficients), len(o.coefficients))
        a = self.coefficients + (ExactScalar(),) * (n - len(self.coefficients))
        b = o.coefficients + (ExactScalar(),) * (n - len(o.coefficients))
        return ScalarPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly([-c for c in self.coefficients], self.var)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return ScalarPoly([], self.var)
        out = [ExactScalar()] * (len(self.coefficients) + len(o.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(o.coefficients):
                out[i + j] = out[i + j] + a * b
        return ScalarPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (ExactScalar, int, Fraction)):
            inv = ExactScalar(1) / ExactScalar(other)
            return ScalarPoly([c * inv for c in self.coefficients], self.var)
        return NotImplemented

    def __pow__(self, k: int):
        out = ScalarPoly([1], self.var)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = ExactScalar() if is_exact(x) or isinstance(x, ExactScalar) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + (c if is_exact(x) else lower(c))
        return acc

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.coefficients == o.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            cs = str(c)
            if len(c.coeffs) > 1:
                cs = f"({cs})"
            if k == 0:
                terms.append(cs)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                terms.append(mono if cs == "1" else (f"-{mono}" if cs == "-1" else f"{cs}*{mono}"))
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"ScalarPoly('{self}')"


def poly_identity(lhs, rhs) -> bool:
    """True iff lhs - rhs is the zero polynomial."""
    return (ScalarPoly.coerce(lhs) - ScalarPoly.coerce(rhs)).is_zero()


ZERO = ExactScalar()
ONE = ExactScalar(1)
