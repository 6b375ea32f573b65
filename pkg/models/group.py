"""
Finite group data model.

A group is stored as a dense multiplication table over element indices
0..n-1, so any Cayley table is a first-class group regardless of how it was
presented.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import (
    GroupValidationError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
)


def _as_table(raw: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in raw)


def validate_table(mul: Sequence[Sequence[int]]) -> np.ndarray:
    """
    Check that a raw table is square with entries in range and is a Latin square.

    Args:
        mul: n x n table of element indices

    Returns:
        The table as a numpy array

    Raises:
        GroupValidationError: table is empty, ragged or out of range
        NotLatinSquare: some row or column repeats an entry
    """
    n = len(mul)
    if n == 0:
        raise GroupValidationError("Cayley table is empty")
    for r, row in enumerate(mul):
        if len(row) != n:
            raise GroupValidationError(f"Cayley table is not square: row {r} has {len(row)} entries, expected {n}")
    table = np.asarray(mul, dtype=np.int32)
    if table.min() < 0 or table.max() >= n:
        bad = np.argwhere((table < 0) | (table >= n))[0]
        raise GroupValidationError(
            f"Cayley table entry at row {bad[0]}, column {bad[1]} is outside 0..{n - 1}"
        )

    expected = np.arange(n)
    for r in range(n):
        if not np.array_equal(np.sort(table[r]), expected):
            raise NotLatinSquare(f"Row {r} is not a permutation of 0..{n - 1}")
    for c in range(n):
        if not np.array_equal(np.sort(table[:, c]), expected):
            raise NotLatinSquare(f"Column {c} is not a permutation of 0..{n - 1}")
    return table


def find_identity(table: np.ndarray) -> int:
    """Return the two-sided identity of a Latin-square table or raise NoIdentity"""
    n = table.shape[0]
    expected = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], expected) and np.array_equal(table[:, e], expected):
            return e
    raise NoIdentity("No element acts as a two-sided identity")


def find_inverses(table: np.ndarray, identity: int) -> Tuple[int, ...]:
    """Return the inverse table, raising NoInverse for the first element without one"""
    n = table.shape[0]
    inverses = []
    for a in range(n):
        candidates = np.flatnonzero(table[a] == identity)
        b = int(candidates[0]) if len(candidates) else -1
        if b < 0 or table[b, a] != identity:
            raise NoInverse(f"Element {a} has no two-sided inverse")
        inverses.append(b)
    return tuple(inverses)


def check_associative(table: np.ndarray) -> None:
    """
    Verify (ab)c = a(bc) for all triples, one left factor at a time.

    Raises:
        NotAssociative: naming the first failing triple (a, b, c)
    """
    n = table.shape[0]
    for a in range(n):
        # left[b, c] = (ab)c, right[b, c] = a(bc)
        left = table[table[a]]
        right = table[a][table]
        mismatch = np.argwhere(left != right)
        if len(mismatch):
            b, c = (int(v) for v in mismatch[0])
            raise NotAssociative(f"Associativity fails for triple ({a}, {b}, {c})")


@dataclass(frozen=True)
class GroupTable:
    """
    Finite group as an indexed multiplication table.

    mul[a][b] is the index of the product ab. The table is validated on
    construction (Latin square, identity, inverses, associativity).
    """
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    identity: int
    element_names: Tuple[str, ...]
    name: str = "G"

    def __post_init__(self):
        object.__setattr__(self, "mul", _as_table(self.mul))
        object.__setattr__(self, "inv", tuple(int(v) for v in self.inv))
        object.__setattr__(self, "element_names", tuple(str(v) for v in self.element_names))

        table = validate_table(self.mul)
        n = table.shape[0]
        if not 0 <= self.identity < n:
            raise NoIdentity(f"Identity index {self.identity} is outside 0..{n - 1}")
        if find_identity(table) != self.identity:
            raise NoIdentity(f"Element {self.identity} is not a two-sided identity")
        if len(self.inv) != n:
            raise NoInverse(f"Inverse table has {len(self.inv)} entries, expected {n}")
        for a, b in enumerate(self.inv):
            if not 0 <= b < n or table[a, b] != self.identity or table[b, a] != self.identity:
                raise NoInverse(f"inv[{a}] = {b} is not a two-sided inverse of {a}")
        check_associative(table)

        if len(self.element_names) != n:
            raise GroupValidationError(f"Expected {n} element names, got {len(self.element_names)}")
        if len(set(self.element_names)) != n:
            raise GroupValidationError("Element names must be distinct")

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table as a read-only numpy array"""
        array = np.asarray(self.mul, dtype=np.int32)
        array.setflags(write=False)
        return array

    @cached_property
    def _name_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.element_names)}

    def multiply(self, *elements: int) -> int:
        """Product of the given elements, left to right (identity when empty)"""
        result = self.identity
        for a in elements:
            result = self.mul[result][a]
        return result

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def power(self, a: int, k: int) -> int:
        """a^k for any integer k"""
        if k < 0:
            a, k = self.inv[a], -k
        result = self.identity
        for _ in range(k % self.element_order(a) if k else 0):
            result = self.mul[result][a]
        return result

    def element_order(self, a: int) -> int:
        current, k = a, 1
        while current != self.identity:
            current = self.mul[current][a]
            k += 1
        return k

    def element_orders(self) -> Tuple[int, ...]:
        """Sorted multiset of element orders"""
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def index_of(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"{self.name} has no element named {name!r}") from None

    def display(self, a: int) -> str:
        return self.element_names[a]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON storage"""
        return {
            "name": self.name,
            "order": self.order,
            "identity": self.identity,
            "element_names": list(self.element_names),
            "mul": [list(row) for row in self.mul],
        }

    @staticmethod
    def from_dict(data: dict) -> 'GroupTable':
        """Create from dictionary; inverses are recomputed from the table"""
        table = validate_table(data["mul"])
        identity = int(data.get("identity", find_identity(table)))
        return GroupTable(
            mul=data["mul"],
            inv=find_inverses(table, identity),
            identity=identity,
            element_names=data.get("element_names") or [str(i) for i in range(len(data["mul"]))],
            name=data.get("name", "G"),
        )


@dataclass(frozen=True)
class ElementSet:
    """Subset of a group's element indices stored as a bit mask"""
    bits: int
    order: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.order:
            raise ValueError(f"Element set {self.bits:#x} does not fit in 0..{self.order - 1}")

    @staticmethod
    def from_members(members: Iterable[int], order: int) -> 'ElementSet':
        bits = 0
        for a in members:
            if not 0 <= a < order:
                raise ValueError(f"Element {a} is outside 0..{order - 1}")
            bits |= 1 << a
        return ElementSet(bits, order)

    def members(self) -> Tuple[int, ...]:
        return tuple(a for a in range(self.order) if self.bits >> a & 1)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, a: object) -> bool:
        return isinstance(a, int) and 0 <= a < self.order and bool(self.bits >> a & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.size

    def complement(self) -> 'ElementSet':
        return ElementSet(((1 << self.order) - 1) & ~self.bits, self.order)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.size, self.members())

    def display(self, group: Optional[GroupTable] = None) -> str:
        if group is None:
            return "{" + ", ".join(str(a) for a in self.members()) + "}"
        return "{" + ", ".join(group.display(a) for a in self.members()) + "}"

    def to_dict(self) -> dict:
        return {"order": self.order, "members": list(self.members())}

    @staticmethod
    def from_dict(data: dict) -> 'ElementSet':
        return ElementSet.from_members(data["members"], int(data["order"]))


def element_sets_sorted(sets: Iterable[ElementSet]) -> List[ElementSet]:
    return sorted(set(sets), key=ElementSet.sort_key)
