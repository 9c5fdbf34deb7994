"""Pass/fail records for exact identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import RMatrix, format_rational, max_violation


@dataclass(frozen=True)
class Witness:
    location: str
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"location": self.location, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    passed: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError(f"check {self.name!r} passed but carries a witness")
        if not self.passed and self.witness is None:
            object.__setattr__(self, "witness", Witness("-", "false", "true"))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "pass": self.passed,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, anchor: str, passed: bool, witness: Witness | None = None) -> Check:
        check = Check(name, anchor, bool(passed), None if passed else witness)
        self.checks.append(check)
        return check

    def add_equal(self, name: str, anchor: str, lhs: RMatrix, rhs: RMatrix) -> Check:
        """Record lhs == rhs; on failure the witness is the entry of largest gap."""
        if lhs.shape != rhs.shape:
            return self.add(name, anchor, False, Witness("shape", str(lhs.shape), str(rhs.shape)))
        worst = max_violation(lhs, rhs)
        if worst is None:
            return self.add(name, anchor, True)
        i, j, x, y = worst
        return self.add(
            name, anchor, False, Witness(f"({i + 1},{j + 1})", format_rational(x), format_rational(y))
        )

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.anchor, c.passed, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def sorted_checks(self) -> list[Check]:
        return sorted(self.checks, key=lambda c: c.name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.sorted_checks()]}

    def format_text(self) -> str:
        lines = []
        for c in self.sorted_checks():
            status = "PASS" if c.passed else "FAIL"
            line = f"[{status}] {c.name}: {c.anchor}"
            if c.witness is not None:
                w = c.witness
                line += f"  (at {w.location}: lhs={w.lhs}, rhs={w.rhs})"
            lines.append(line)
        return "\n".join(lines)
