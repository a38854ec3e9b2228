"""Verification dossiers: a block plus the list of claims checked about it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..manifold import ManifoldBlock, geography_check

PASS, FAIL, UNCHECKED = "pass", "fail", "unchecked"


@dataclass(frozen=True)
class Claim:
    id: str
    status: str
    evidence: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, UNCHECKED):
            raise ValueError(f"bad claim status {self.status!r}")

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "evidence": self.evidence}


def claim(id: str, ok: bool, evidence: str = "") -> Claim:
    return Claim(id, PASS if ok else FAIL, evidence)


@dataclass(frozen=True)
class ConstructionDossier:
    name: str
    block: ManifoldBlock
    claims: tuple[Claim, ...]
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.claims)

    def claim(self, id: str) -> Claim:
        for c in self.claims:
            if c.id == id:
                return c
        raise KeyError(id)

    def to_json(self) -> dict:
        b = self.block
        out = {"construction": self.name, **b.summary()}
        out["pi1"] = str(b.pi1)
        out["pi1_order"] = self.data.get("pi1_order")
        if b.spheres:
            out["spheres"] = list(b.spheres)
        out["data"] = self.data
        out["claims"] = [c.to_json() for c in self.claims]
        out["status"] = PASS if self.passed else FAIL
        return out


def standard_claims(block: ManifoldBlock) -> list[Claim]:
    """Checks every pipeline attaches: well-formed Betti numbers and geography at b+ = 1."""
    out = [claim("betti_consistent", block.well_formed(), f"b1={block.b1}, b+={block.b_plus}, b-={block.b_minus}")]
    if block.b_plus == 1 and block.minimal.state == "yes":
        rep = geography_check(block)
        failed = [k for k, v in rep.checks.items() if not v]
        out.append(claim("geography_b_plus_1", rep.passed, "failed: " + ", ".join(failed) if failed else "4 b1 + b- <= 9 and b1 in {0, 2}"))
    return out
