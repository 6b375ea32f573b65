"""
Data models for the fixed-point search: options, implication rules and the
classification report.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

from models.errors import ContradictoryOptions
from models.orbit import OrbitLabel, mask_of, members_of


@dataclass(frozen=True)
class SearchOptions:
    """
    Options for enumerate_fixed_plucker.

    use_pruning=None means "prune unless oracle_mode"; asking for pruning and
    oracle mode together is contradictory. orbit_cap=None takes the
    configured default. theorem_rules adds the proposition-derived rules and
    mandatory cyclic orbits to the exchange clauses when pruning.
    """
    use_pruning: Optional[bool] = None
    oracle_mode: bool = False
    theorem_rules: bool = True
    orbit_cap: Optional[int] = None
    parallel: bool = False
    workers: Optional[int] = None
    include_timing: bool = False

    def __post_init__(self):
        if self.oracle_mode and self.use_pruning:
            raise ContradictoryOptions("Oracle mode enumerates every union and cannot prune")
        if self.oracle_mode and self.parallel:
            raise ContradictoryOptions("Oracle mode runs single-process")
        if self.orbit_cap is not None and self.orbit_cap < 1:
            raise ValueError(f"orbit_cap must be >= 1, got {self.orbit_cap}")
        if self.workers is not None and self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")

    @property
    def pruning(self) -> bool:
        if self.use_pruning is None:
            return not self.oracle_mode
        return self.use_pruning

    @property
    def mode(self) -> str:
        if self.oracle_mode:
            return "oracle"
        return "pruned" if self.pruning else "exhaustive"


@dataclass(frozen=True)
class ExchangeInstance:
    """Bases a, b (masks) and the element x in a-b that must be exchanged"""
    a: int
    b: int
    x: int

    def to_dict(self) -> dict:
        return {"a": list(members_of(self.a)), "b": list(members_of(self.b)), "x": self.x}

    @staticmethod
    def from_dict(data: dict) -> 'ExchangeInstance':
        return ExchangeInstance(mask_of(data["a"]), mask_of(data["b"]), int(data["x"]))


@dataclass(frozen=True)
class ImplicationRule:
    """
    "All premise orbits in the family => at least one conclusion orbit in it".

    witnesses certify the rule: a single exchange instance for rules read off
    one basis exchange, or the chain of instances for derived rules.
    """
    premises: Tuple[OrbitLabel, ...]
    conclusions: Tuple[OrbitLabel, ...]
    source: str
    witnesses: Tuple[ExchangeInstance, ...] = ()

    def key(self) -> Tuple[Tuple[OrbitLabel, ...], Tuple[OrbitLabel, ...]]:
        return (self.premises, self.conclusions)

    def to_dict(self) -> dict:
        return {
            "premises": [list(p) for p in self.premises],
            "conclusions": [list(c) for c in self.conclusions],
            "source": self.source,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class FamilyEntry:
    """One matroidal union of orbits found by the search"""
    orbit_labels: Tuple[OrbitLabel, ...]
    display: str
    basis_count: int
    uniform: bool
    subgroup_complements: Tuple[str, ...] = ()
    codim_one: bool = False
    excluded_labels: Tuple[OrbitLabel, ...] = ()

    def sort_key(self) -> Tuple[int, Tuple[OrbitLabel, ...]]:
        return (len(self.orbit_labels), self.orbit_labels)

    def to_dict(self) -> dict:
        return {
            "orbit_labels": [list(label) for label in self.orbit_labels],
            "display": self.display,
            "basis_count": self.basis_count,
            "uniform": self.uniform,
            "subgroup_complement": self.subgroup_complements[0] if self.subgroup_complements else None,
            "subgroup_complements": list(self.subgroup_complements),
            "codim_one": self.codim_one,
            "excluded_labels": [list(label) for label in self.excluded_labels],
        }

    @staticmethod
    def from_dict(data: dict) -> 'FamilyEntry':
        return FamilyEntry(
            orbit_labels=tuple(tuple(label) for label in data["orbit_labels"]),
            display=data.get("display", ""),
            basis_count=int(data["basis_count"]),
            uniform=bool(data["uniform"]),
            subgroup_complements=tuple(data.get("subgroup_complements") or ()),
            codim_one=bool(data.get("codim_one", False)),
            excluded_labels=tuple(tuple(label) for label in data.get("excluded_labels", [])),
        )


@dataclass
class SearchStats:
    candidates_visited: int = 0
    pruned: int = 0
    clauses: int = 0
    rules: int = 0
    forced: int = 0
    wall_ms: Optional[float] = None

    def merge(self, other: 'SearchStats') -> None:
        self.candidates_visited += other.candidates_visited
        self.pruned += other.pruned
        self.forced += other.forced

    def to_dict(self) -> dict:
        data = asdict(self)
        if self.wall_ms is None:
            data.pop("wall_ms")
        return data


@dataclass
class ClassificationReport:
    """
    Full output of a fixed-point search: every matroidal orbit union with its
    annotations, the orbit census and search statistics.
    """
    group: str
    group_order: int
    dim: int
    mode: str
    orbits: List[dict] = field(default_factory=list)
    families: List[FamilyEntry] = field(default_factory=list)
    stats: SearchStats = field(default_factory=SearchStats)

    def labels(self) -> List[Tuple[OrbitLabel, ...]]:
        return [entry.orbit_labels for entry in self.families]

    def family_sets(self) -> List[frozenset]:
        return [frozenset(entry.orbit_labels) for entry in self.families]

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "group_order": self.group_order,
            "dim": self.dim,
            "mode": self.mode,
            "orbits": self.orbits,
            "families": [entry.to_dict() for entry in self.families],
            "stats": self.stats.to_dict(),
        }

    @staticmethod
    def from_dict(data: dict) -> 'ClassificationReport':
        stats = SearchStats(**data.get("stats", {}))
        return ClassificationReport(
            group=data["group"],
            group_order=int(data.get("group_order", 0)),
            dim=int(data["dim"]),
            mode=data.get("mode", "pruned"),
            orbits=list(data.get("orbits", [])),
            families=[FamilyEntry.from_dict(entry) for entry in data.get("families", [])],
            stats=stats,
        )

    def render_text(self) -> str:
        """Human-readable report in the f_{g,h} display convention"""
        lines = [f"group {self.group} (order {self.group_order}), dimension {self.dim}, mode {self.mode}"]
        lines.append(f"orbits: {len(self.orbits)}")
        for orbit in self.orbits:
            lines.append(f"  {orbit['display']}  size {orbit['size']}")
        lines.append(f"matroidal unions: {len(self.families)}")
        for entry in self.families:
            notes = []
            if entry.uniform:
                notes.append("uniform")
            for name in entry.subgroup_complements:
                notes.append(f"f_{{{self.group}-{name}}}")
            if entry.codim_one:
                notes.append("codim one")
            suffix = f"  [{'; '.join(notes)}]" if notes else ""
            lines.append(f"  {entry.display}  ({entry.basis_count} bases){suffix}")
        stats = self.stats
        lines.append(f"visited {stats.candidates_visited}, pruned {stats.pruned}")
        if stats.wall_ms is not None:
            lines.append(f"wall {stats.wall_ms:.1f} ms")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CodimOneResult:
    """Kernel verdict against the predicted verdict for all-orbits-minus-f_{u,ku}"""
    n: int
    u: int
    k: int
    label: OrbitLabel
    predicted: bool
    verdict: bool
    witness: Optional[dict] = None

    @property
    def agrees(self) -> bool:
        return self.predicted == self.verdict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "u": self.u,
            "k": self.k,
            "label": list(self.label),
            "predicted": self.predicted,
            "verdict": self.verdict,
            "witness": self.witness,
        }
