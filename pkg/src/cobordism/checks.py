from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check; ``witness`` names the first failure."""

    name: str
    passed: bool
    witness: str | None = None
    details: tuple = field(default=(), compare=False)

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.witness})" if self.witness else "")
