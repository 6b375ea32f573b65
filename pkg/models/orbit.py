"""
d-subsets of a group and orbits of the left-multiplication action on them.

A d-subset is a plain int bit mask (bit a set <=> element a is a member);
group orders are capped at 64 so every mask fits a machine word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

# Dimension 2: (g,), dimension 3: (g, h), otherwise the sorted member tuple of
# the index-minimal orbit member that contains the identity.
OrbitLabel = Tuple[int, ...]

MAX_WORD_BITS = 64


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for a in members:
        mask |= 1 << a
    return mask


def members_of(mask: int) -> Tuple[int, ...]:
    """Sorted element indices of a mask"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def subset_sort_key(mask: int) -> Tuple[int, ...]:
    """Lexicographic order on sorted member tuples"""
    return members_of(mask)


def translate(mul: Sequence[Sequence[int]], g: int, mask: int) -> int:
    """Left action g.{a_1..a_d} = {g a_1 .. g a_d}"""
    row = mul[g]
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


def format_subset(mask: int, names: Sequence[str]) -> str:
    return "{" + ",".join(names[a] for a in members_of(mask)) + "}"


def format_label(label: OrbitLabel, names: Sequence[str]) -> str:
    """Render a label as f_{1,2} or f_{ρ,σ}"""
    return "f_{" + ",".join(names[a] for a in label) + "}"


@dataclass(frozen=True)
class Orbit:
    """
    One orbit of G acting on d-subsets of G by left multiplication.

    members are sorted lexicographically by member tuple; index is the
    position of the orbit in the label-sorted partition.
    """
    label: OrbitLabel
    members: Tuple[int, ...]
    d: int
    index: int = 0

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> int:
        return self.members[0]

    def to_dict(self, names: Sequence[str] = ()) -> dict:
        data = {
            "label": list(self.label),
            "size": self.size,
            "members": [list(members_of(m)) for m in self.members],
        }
        if names:
            data["display"] = format_label(self.label, names)
            data["member_names"] = [[names[a] for a in members_of(m)] for m in self.members]
        return data


@dataclass
class OrbitCensus:
    """Labels and sizes of a partition, in partition order"""
    labels: List[OrbitLabel] = field(default_factory=list)
    sizes: List[int] = field(default_factory=list)
    displays: List[str] = field(default_factory=list)

    def to_dict(self) -> List[dict]:
        return [
            {"label": list(label), "display": display, "size": size}
            for label, size, display in zip(self.labels, self.sizes, self.displays)
        ]
