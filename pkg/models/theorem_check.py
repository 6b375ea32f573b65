"""
Result and scope models for the theorem checks.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass(frozen=True)
class CheckScope:
    """
    Per-check caps.

    - dim2_max_order: largest group classified in dimension 2
    - dim3_max_order: largest group classified in dimension 3
    - dim3_max_orbits: largest dimension-3 orbit count classified
    - cyclic_range: Z_n range for the cyclic dimension-3 statements
    - lemma_max: largest n for the index-set lemma
    """
    dim2_max_order: int = 16
    dim3_max_order: int = 12
    dim3_max_orbits: int = 22
    cyclic_range: Tuple[int, int] = (4, 13)
    lemma_max: int = 24

    def __post_init__(self):
        object.__setattr__(self, "cyclic_range", tuple(int(v) for v in self.cyclic_range))
        for name in ("dim2_max_order", "dim3_max_order", "dim3_max_orbits", "lemma_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        low, high = self.cyclic_range
        if low < 4 or high < low:
            raise ValueError(f"cyclic_range must satisfy 4 <= low <= high, got {self.cyclic_range}")

    def cyclic_orders(self, low: Optional[int] = None) -> range:
        start = self.cyclic_range[0] if low is None else max(low, self.cyclic_range[0])
        return range(start, self.cyclic_range[1] + 1)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["cyclic_range"] = list(self.cyclic_range)
        return data

    @staticmethod
    def from_dict(data: dict) -> 'CheckScope':
        return CheckScope(**data)


@dataclass
class TheoremCheck:
    """
    Outcome of one named check.

    Statuses:
    - pass: the statement held on every instance in scope
    - fail: counterexample holds a replayable payload (orbit labels, a rule
      instance or an exchange witness)
    - skip: nothing in the catalog falls in scope
    """
    id: str
    statement: str
    status: str = PASS
    scope: Dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    counterexample: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIP):
            raise ValueError(f"Status must be one of: {PASS}, {FAIL}, {SKIP}")
        if self.status == FAIL and self.counterexample is None:
            raise ValueError(f"Failing check {self.id} needs a counterexample")

    @property
    def ok(self) -> bool:
        """Skips count as passing"""
        return self.status != FAIL

    def to_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_dict(data: dict) -> 'TheoremCheck':
        return TheoremCheck(
            id=data["id"],
            statement=data.get("statement", ""),
            status=data.get("status", PASS),
            scope=dict(data.get("scope", {})),
            detail=data.get("detail", ""),
            counterexample=data.get("counterexample"),
        )
