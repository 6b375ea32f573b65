"""
Subgroup-complement families f_{G-H} and the lookup used to annotate reports.
"""

from typing import Dict, FrozenSet, List, Tuple

from groups.subgroups import is_subgroup, proper_subgroups, subgroup_name
from models.errors import NotASubgroup, UnsupportedDimension
from models.family import BasisFamily
from models.group import ElementSet, GroupTable
from models.orbit import OrbitLabel
from orbits.engine import labels_of_union, orbit_union


def _require(g: GroupTable, h: ElementSet, d: int) -> None:
    if d not in (2, 3):
        raise UnsupportedDimension(f"f_(G-H) is defined for dimensions 2 and 3, not {d}")
    if not is_subgroup(g, h):
        raise NotASubgroup(f"{h.display(g)} is not a subgroup of {g.name}")


def subgroup_complement_labels(g: GroupTable, h: ElementSet, d: int) -> List[OrbitLabel]:
    """Orbit labels whose union is f_{G-H}"""
    _require(g, h, d)
    return labels_of_union(g, d, h.complement())


def subgroup_complement_family(g: GroupTable, h: ElementSet, d: int) -> BasisFamily:
    """
    f_{G-H}: in dimension 2 every pair {a, ab} with b outside H, in dimension
    3 every triple {a, ag, ah} with g, h and g^-1 h outside H.

    Raises:
        NotASubgroup: h is not a subgroup of g
        UnsupportedDimension: d is not 2 or 3
    """
    _require(g, h, d)
    return orbit_union(g, d, h.complement())


def complement_index(g: GroupTable, d: int) -> Dict[FrozenSet[OrbitLabel], Tuple[str, ...]]:
    """Nonempty f_{G-H} label sets over proper subgroups H, mapped to every matching subgroup name"""
    found: Dict[FrozenSet[OrbitLabel], List[str]] = {}
    for h in proper_subgroups(g):
        labels = frozenset(subgroup_complement_labels(g, h, d))
        if labels:
            found.setdefault(labels, []).append(subgroup_name(g, h))
    return {labels: tuple(names) for labels, names in found.items()}
