"""Verification reports: check records, deterministic JSON and text output."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .clifford import Multivector
from .exactfield import ExactScalar, ScalarPoly, lower
from .linalg import EXACT, arrays_equal, lower_array
from .spinrep import SpinorVec

REPORT_VERSION = 1
FLOAT_TOL = 1e-9
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def _fnum(x) -> str:
    z = complex(lower(x)) if not isinstance(x, (float, complex)) else complex(x)
    if abs(z.imag) <= 1e-13:
        return f"{z.real:.12g}"
    return f"({z.real:.12g}{z.imag:+.12g}j)"


def _round(c):
    z = complex(lower(c)) if not isinstance(c, (float, complex)) else complex(c)
    if abs(z.imag) <= 1e-13:
        return float(f"{z.real:.12g}")
    return complex(float(f"{z.real:.12g}"), float(f"{z.imag:.12g}"))


def render(x, mode: str = EXACT) -> str:
    """Stable text form of a value for reports."""
    if x is None:
        return "-"
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Multivector):
        if mode == EXACT:
            return str(x)
        return str(x.map_coeffs(_round))
    if isinstance(x, SpinorVec):
        return "[" + ", ".join(render(c, mode) for c in x.data) + "]"
    if isinstance(x, np.ndarray):
        if x.ndim == 2 and _is_scalar_matrix(x):
            return f"{render(x[0, 0], mode)}*Id"
        return "[" + ", ".join(render(c, mode) for c in x.reshape(-1)) + "]"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(render(c, mode) for c in x) + "]"
    if isinstance(x, ScalarPoly):
        return str(x)
    if mode == EXACT and not isinstance(x, (float, complex)):
        return str(ExactScalar(x))
    return _fnum(x)


def _is_scalar_matrix(M) -> bool:
    n = M.shape[0]
    if M.shape != (n, n):
        return False
    d = M[0, 0]
    for i in range(n):
        for j in range(n):
            want = d if i == j else 0
            v = M[i, j]
            if M.dtype == object:
                if v != want:
                    return False
            elif abs(complex(v) - complex(want)) > FLOAT_TOL:
                return False
    return True


def same(a, b, mode: str = EXACT) -> bool:
    """Exact equality, or tolerance equality in float mode."""
    tol = 0.0 if mode == EXACT else FLOAT_TOL
    if isinstance(a, Multivector):
        return a.equals(b, tol)
    if isinstance(a, SpinorVec):
        return a.equals(b, tol)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a, b = np.asarray(a), np.asarray(b)
        if mode == EXACT and a.dtype == object and b.dtype == object:
            return arrays_equal(a, b)
        return arrays_equal(lower_array(a), lower_array(b), FLOAT_TOL)
    if isinstance(a, (list, tuple)):
        return isinstance(b, (list, tuple)) and len(a) == len(b) and all(same(x, y, mode) for x, y in zip(a, b))
    if isinstance(a, ScalarPoly) or isinstance(b, ScalarPoly):
        return ScalarPoly.coerce(a) == ScalarPoly.coerce(b)
    if mode == EXACT and not isinstance(a, (float, complex)) and not isinstance(b, (float, complex)):
        return ExactScalar(a) == ExactScalar(b)
    za, zb = complex(lower(a)), complex(lower(b))
    return abs(za - zb) <= FLOAT_TOL * max(1.0, abs(zb))


@dataclass
class CheckResult:
    check_id: str
    paper_anchor: str
    lhs: str
    rhs: str
    status: str
    arithmetic: str
    witness: object = None

    def to_dict(self) -> dict:
        d = {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status,
            "arithmetic": self.arithmetic,
            "exact_or_float": self.arithmetic,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    target: str
    arithmetic: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(c.status == FAIL for c in self.checks)

    @property
    def passed(self) -> int:
        return sum(c.status == PASS for c in self.checks)

    @property
    def skipped(self) -> int:
        return sum(c.status == SKIPPED for c in self.checks)

    def sorted_checks(self) -> list:
        return sorted(self.checks, key=lambda c: c.check_id)

    def filtered(self, prefix: str | None) -> "Report":
        if not prefix:
            return self
        return Report(self.target, self.arithmetic,
                      [c for c in self.checks if c.check_id.startswith(prefix)], list(self.notes))

    def to_dict(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "target": self.target,
            "arithmetic": self.arithmetic,
            "checks": [c.to_dict() for c in self.sorted_checks()],
            "summary": {"total": len(self.checks), "passed": self.passed,
                        "failed": self.failed, "skipped": self.skipped},
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"target: {self.target}  arithmetic: {self.arithmetic}"]
        for c in self.sorted_checks():
            lines.append(f"[{c.status.upper():7}] {c.check_id}: {c.lhs} == {c.rhs}  ({c.paper_anchor})")
            if c.witness is not None and c.status == FAIL:
                lines.append(f"          witness: {json.dumps(c.witness, sort_keys=True)}")
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"summary: {self.passed} passed, {self.failed} failed, {self.skipped} skipped, "
                     f"{len(self.checks)} total")
        return "\n".join(lines) + "\n"

    def merge(self, other: "Report") -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)


class Collector:
    """Accumulates checks; exceptions inside a check become failures with a witness."""

    def __init__(self, report: Report):
        self.report = report
        self.mode = report.arithmetic

    def add(self, check_id, anchor, lhs, rhs, passed: bool, witness=None):
        status = PASS if passed else FAIL
        if not passed and witness is None:
            witness = {"check": check_id}
        self.report.checks.append(CheckResult(check_id, anchor, render(lhs, self.mode), render(rhs, self.mode),
                                              status, self.mode, witness if not passed else None))

    def eq(self, check_id, anchor, lhs, rhs, witness=None):
        self.add(check_id, anchor, lhs, rhs, same(lhs, rhs, self.mode), witness)

    def true(self, check_id, anchor, cond: bool, lhs="true", rhs="true", witness=None):
        self.add(check_id, anchor, lhs if cond else "false", rhs, bool(cond), witness)

    def skip(self, check_id, anchor, reason: str):
        self.report.checks.append(CheckResult(check_id, anchor, reason, "-", SKIPPED, self.mode))

    def guarded(self, check_id, anchor, fn):
        """Run fn(); any exception is recorded as a failed check."""
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report, do not crash the run
            self.report.checks.append(CheckResult(check_id, anchor, type(exc).__name__, str(exc), FAIL,
                                                  self.mode, {"error": type(exc).__name__, "message": str(exc)}))


def adapt(x, mode: str):
    """Lower an exact expected value for comparison in float mode."""
    if mode == EXACT or x is None:
        return x
    if isinstance(x, Multivector):
        return x.map_coeffs(lambda c: lower(c) if isinstance(c, ExactScalar) else c)
    if isinstance(x, np.ndarray):
        return lower_array(x)
    if isinstance(x, ExactScalar):
        return lower(x)
    return x
