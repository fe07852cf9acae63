"""Validation reports: a flat list of findings, empty iff everything holds."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    axiom: str
    message: str
    indices: tuple = ()

    def as_dict(self):
        return {"axiom": self.axiom, "message": self.message,
                "indices": list(self.indices)}


@dataclass
class Report:
    findings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.findings

    def __bool__(self):
        return self.ok

    def __len__(self):
        return len(self.findings)

    def add(self, axiom, message, indices=()):
        self.findings.append(Finding(axiom, message, tuple(indices)))

    def extend(self, other, prefix=""):
        for f in other.findings:
            axiom = f"{prefix}{f.axiom}" if prefix else f.axiom
            self.findings.append(Finding(axiom, f.message, f.indices))
        return self

    def axioms(self):
        return sorted({f.axiom for f in self.findings})

    def as_dict(self):
        return {"ok": self.ok, "findings": [f.as_dict() for f in self.findings]}

    def __str__(self):
        if self.ok:
            return "all axioms hold"
        lines = [f"{len(self.findings)} violation(s):"]
        lines += [f"  [{f.axiom}] {f.message} at {f.indices}" for f in self.findings[:20]]
        if len(self.findings) > 20:
            lines.append(f"  ... {len(self.findings) - 20} more")
        return "\n".join(lines)
