"""Check results shared by every identity catalog."""

import time
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witness: str | None = None
    elapsed_ms: int = 0

    @property
    def passed(self):
        return self.status == "pass"

    def as_dict(self, normalize_timing=False):
        out = {"id": self.check_id, "params": dict(self.params), "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out["elapsed_ms"] = 0 if normalize_timing else self.elapsed_ms
        return out


def rational_text(q):
    """Render an exact rational as ``num/den`` (or ``num`` when den = 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def run_check(check_id, params, body):
    """Run ``body()``, which returns None on success or a witness string."""
    start = time.perf_counter()
    try:
        witness = body()
    except (ValueError, ArithmeticError, RecursionError, MemoryError) as exc:
        witness = f"error: {type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    status = "pass" if witness is None else "fail"
    return CheckResult(check_id, dict(params), status, witness, elapsed)
