"""
Candidate basis families and exchange-failure witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from models.errors import WrongCardinality
from models.orbit import MAX_WORD_BITS, mask_of, members_of, popcount, subset_sort_key


@dataclass(frozen=True)
class BasisFamily:
    """
    A set of d-subsets of {0..ground_size-1}.

    Doubles as the indicator (Plücker) vector on d-subsets: a subset is
    indicated iff it is a member.
    """
    ground_size: int
    d: int
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not 1 <= self.ground_size <= MAX_WORD_BITS:
            raise ValueError(f"Ground size must be in 1..{MAX_WORD_BITS}, got {self.ground_size}")
        if not 1 <= self.d <= self.ground_size:
            raise ValueError(f"Rank {self.d} is outside 1..{self.ground_size}")
        limit = 1 << self.ground_size
        for m in self.members:
            if popcount(m) != self.d:
                raise WrongCardinality(f"Member {list(members_of(m))} does not have {self.d} elements")
            if m >= limit:
                raise ValueError(f"Member {list(members_of(m))} is outside the ground set")

    @staticmethod
    def from_subsets(ground_size: int, d: int, subsets: Iterable[Iterable[int]]) -> 'BasisFamily':
        return BasisFamily(ground_size, d, frozenset(mask_of(s) for s in subsets))

    def __contains__(self, mask: object) -> bool:
        return mask in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    @cached_property
    def ordered(self) -> Tuple[int, ...]:
        """Members in lexicographic order of their sorted element tuples"""
        return tuple(sorted(self.members, key=subset_sort_key))

    @cached_property
    def array(self) -> np.ndarray:
        """Members (in `ordered` order) as a uint64 array for vectorised scans"""
        return np.fromiter((np.uint64(m) for m in self.ordered), dtype=np.uint64, count=len(self.ordered))

    @cached_property
    def completions(self) -> Dict[int, int]:
        """Map each (d-1)-subset S of a member to the mask of y with S+y a member"""
        table: Dict[int, int] = {}
        for m in self.members:
            rest = m
            while rest:
                low = rest & -rest
                rest ^= low
                key = m ^ low
                table[key] = table.get(key, 0) | low
        return table

    def union(self, other: 'BasisFamily') -> 'BasisFamily':
        if (other.ground_size, other.d) != (self.ground_size, self.d):
            raise ValueError("Families over different ground sets or ranks cannot be combined")
        return BasisFamily(self.ground_size, self.d, self.members | other.members)

    def to_dict(self) -> dict:
        """Family exchange document: ground_size, d and sorted index lists"""
        return {
            "ground_size": self.ground_size,
            "d": self.d,
            "members": [list(members_of(m)) for m in self.ordered],
        }

    @staticmethod
    def from_dict(data: dict) -> 'BasisFamily':
        return BasisFamily.from_subsets(int(data["ground_size"]), int(data["d"]), data.get("members", []))


@dataclass(frozen=True)
class ExchangeWitness:
    """
    A failed instance of the exchange axiom: for x in a-b, no y in b-a has
    a-x+y in the family. failed_candidates lists every a-x+y that was absent.
    """
    a: int = 0
    b: int = 0
    x: int = -1
    failed_candidates: Tuple[int, ...] = ()
    empty_family: bool = False

    def to_dict(self) -> dict:
        if self.empty_family:
            return {"empty_family": True}
        return {
            "a": list(members_of(self.a)),
            "b": list(members_of(self.b)),
            "x": self.x,
            "failed_candidates": [list(members_of(c)) for c in self.failed_candidates],
        }

    @staticmethod
    def from_dict(data: dict) -> 'ExchangeWitness':
        if data.get("empty_family"):
            return ExchangeWitness(empty_family=True)
        return ExchangeWitness(
            a=mask_of(data["a"]),
            b=mask_of(data["b"]),
            x=int(data["x"]),
            failed_candidates=tuple(mask_of(c) for c in data["failed_candidates"]),
        )


@dataclass(frozen=True)
class Verdict:
    """Outcome of a basis-family test"""
    is_matroid: bool
    witness: Optional[ExchangeWitness] = None

    def __bool__(self) -> bool:
        return self.is_matroid

    def to_dict(self) -> dict:
        return {
            "matroid": self.is_matroid,
            "witness": self.witness.to_dict() if self.witness else None,
        }
