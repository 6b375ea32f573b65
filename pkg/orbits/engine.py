"""
Orbits of a group acting on its own d-subsets by left multiplication.

Labels follow the f_g / f_{g,h} naming: a 2-subset {a, b} lies in f_g for
g = a^-1 b (equivalently g^-1), and a 3-subset {a, ag, ah} lies in f_{g,h}.
"""

import logging
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from models.errors import CapExceeded, UnsupportedDimension, WrongCardinality
from models.family import BasisFamily
from models.group import ElementSet, GroupTable
from models.orbit import (
    MAX_WORD_BITS,
    Orbit,
    OrbitCensus,
    OrbitLabel,
    format_label,
    format_subset,
    mask_of,
    members_of,
    popcount,
    translate,
)
from storage.settings import get_group_order_cap, get_subset_cap

LOGGER = logging.getLogger(__name__)

Subset = Union[int, Iterable[int]]


def _as_mask(subset: Subset) -> int:
    return subset if isinstance(subset, int) else mask_of(subset)


def _sized(subset: Subset, d: int) -> Tuple[int, ...]:
    members = members_of(_as_mask(subset))
    if len(members) != d:
        raise WrongCardinality(f"Expected a {d}-subset, got {list(members)}")
    return members


def difference_label(g: GroupTable, pair: Subset) -> OrbitLabel:
    """(min(a^-1 b, b^-1 a),) for the pair {a, b}"""
    a, b = _sized(pair, 2)
    diff = g.mul[g.inv[a]][b]
    return (min(diff, g.inv[diff]),)


def triple_label(g: GroupTable, triple: Subset) -> OrbitLabel:
    """Index-minimal (p^-1 q, p^-1 r) over the six choices of base point p and order of q, r"""
    members = _sized(triple, 3)
    best = None
    for p in members:
        q, r = (m for m in members if m != p)
        row = g.mul[g.inv[p]]
        for pair in ((row[q], row[r]), (row[r], row[q])):
            if best is None or pair < best:
                best = pair
    return best


def generic_label(g: GroupTable, subset: Subset) -> OrbitLabel:
    """Sorted member tuple of the index-minimal translate a^-1 X, a in X"""
    mask = _as_mask(subset)
    return min(members_of(translate(g.mul, g.inv[a], mask)) for a in members_of(mask))


def orbit_label(g: GroupTable, subset: Subset, d: int) -> OrbitLabel:
    _sized(subset, d)
    if d == 2:
        return difference_label(g, subset)
    if d == 3:
        return triple_label(g, subset)
    return generic_label(g, subset)


def label_display(g: GroupTable, label: OrbitLabel) -> str:
    return format_label(label, g.element_names)


def _check_caps(g: GroupTable, d: int) -> None:
    if not 1 <= d <= g.order:
        raise UnsupportedDimension(f"Dimension {d} is outside 1..{g.order} for {g.name}")
    order_cap = min(get_group_order_cap(), MAX_WORD_BITS)
    if g.order > order_cap:
        raise CapExceeded(f"{g.name} has order {g.order}, above the orbit cap of {order_cap}")
    universe = comb(g.order, d)
    subset_cap = get_subset_cap()
    if universe > subset_cap:
        raise CapExceeded(f"C({g.order},{d}) = {universe} subsets exceeds the subset cap of {subset_cap}")


@lru_cache(maxsize=64)
def _partition(g: GroupTable, d: int) -> Tuple[Orbit, ...]:
    visited = set()
    found = []
    for combo in combinations(range(g.order), d):
        start = mask_of(combo)
        if start in visited:
            continue
        members = {translate(g.mul, a, start) for a in range(g.order)}
        visited.update(members)
        found.append((orbit_label(g, start, d), tuple(sorted(members, key=members_of))))
    found.sort(key=lambda item: item[0])
    return tuple(Orbit(label=label, members=members, d=d, index=i) for i, (label, members) in enumerate(found))


def orbit_partition(g: GroupTable, d: int) -> List[Orbit]:
    """
    Partition all d-subsets of g into orbits, sorted by label.

    Raises:
        UnsupportedDimension: d outside 1..|G|
        CapExceeded: |G| above the order cap or C(|G|, d) above the subset cap
    """
    _check_caps(g, d)
    orbits = list(_partition(g, d))
    LOGGER.info("%s, d=%d: %d orbits over %d subsets", g.name, d, len(orbits), comb(g.order, d))
    return orbits


def orbit_members(g: GroupTable, subset: Subset) -> FrozenSet[int]:
    """{a.X : a in G} computed directly, without the partition"""
    mask = _as_mask(subset)
    return frozenset(translate(g.mul, a, mask) for a in range(g.order))


def orbit_of(g: GroupTable, subset: Subset) -> Orbit:
    """The orbit (from the cached partition) containing the subset"""
    mask = _as_mask(subset)
    d = popcount(mask)
    label = orbit_label(g, mask, d)
    for orbit in orbit_partition(g, d):
        if orbit.label == label:
            return orbit
    raise ValueError(f"No orbit with label {label}")


def label_index(orbits: Sequence[Orbit]) -> Dict[OrbitLabel, int]:
    return {orbit.label: i for i, orbit in enumerate(orbits)}


def union_of_orbits(g: GroupTable, orbits: Sequence[Orbit], indices: Iterable[int]) -> BasisFamily:
    """BasisFamily holding every member of the selected orbits"""
    chosen = [orbits[i] for i in indices]
    d = orbits[0].d if orbits else 1
    members = frozenset(m for orbit in chosen for m in orbit.members)
    return BasisFamily(g.order, d, members)


def labels_of_union(g: GroupTable, d: int, s: ElementSet) -> List[OrbitLabel]:
    """Orbit labels making up f_S in dimension 2 or 3"""
    if d not in (2, 3):
        raise UnsupportedDimension(f"f_S is defined for dimensions 2 and 3, not {d}")
    if s.order != g.order:
        raise ValueError(f"Element set over {s.order} elements used with {g.name} of order {g.order}")
    chosen = [a for a in s.members() if a != g.identity]
    labels = set()
    if d == 2:
        for a in chosen:
            labels.add(difference_label(g, mask_of((g.identity, a))))
    else:
        for a in chosen:
            for b in chosen:
                if a != b and g.mul[g.inv[a]][b] in s:
                    labels.add(triple_label(g, mask_of((g.identity, a, b))))
    return sorted(labels)


def orbit_union(g: GroupTable, d: int, s: ElementSet) -> BasisFamily:
    """
    f_S: for d = 2 the union of f_a over a in S - {e}; for d = 3 the union of
    f_{a,b} over a, b, a^-1 b all in S - {e}.

    Raises:
        UnsupportedDimension: d is not 2 or 3
    """
    labels = set(labels_of_union(g, d, s))
    orbits = orbit_partition(g, d)
    return union_of_orbits(g, orbits, [o.index for o in orbits if o.label in labels])


def orbit_census(g: GroupTable, orbits: Sequence[Orbit]) -> OrbitCensus:
    return OrbitCensus(
        labels=[o.label for o in orbits],
        sizes=[o.size for o in orbits],
        displays=[label_display(g, o.label) for o in orbits],
    )


def format_orbit_dump(g: GroupTable, orbits: Sequence[Orbit]) -> str:
    """One orbit per line: label, size, then members as element-name sets"""
    lines = []
    for orbit in orbits:
        members = " ".join(format_subset(m, g.element_names) for m in orbit.members)
        lines.append(f"{label_display(g, orbit.label)}\t{orbit.size}\t{members}")
    return "\n".join(lines) + "\n"


def orbit_dump_document(g: GroupTable, orbits: Sequence[Orbit]) -> dict:
    return {
        "group": g.name,
        "order": g.order,
        "dim": orbits[0].d if orbits else None,
        "orbits": [o.to_dict(g.element_names) for o in orbits],
    }
