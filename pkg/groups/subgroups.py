"""
Subgroup enumeration and helpers over GroupTable element sets.
"""

import logging
from itertools import combinations
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from models.errors import NotASubgroup
from models.group import ElementSet, GroupTable, element_sets_sorted

LOGGER = logging.getLogger(__name__)

NAIVE_SUBGROUP_LIMIT = 16


def _close(g: GroupTable, generators: Iterable[int]) -> int:
    """Bit mask of the subgroup generated by the given elements"""
    gens = tuple(dict.fromkeys(generators))
    seen = 1 << g.identity
    queue = [g.identity]
    while queue:
        x = queue.pop()
        row = g.mul[x]
        for s in gens:
            y = row[s]
            if not seen >> y & 1:
                seen |= 1 << y
                queue.append(y)
    return seen


def generated_subgroup(g: GroupTable, generators: Iterable[int]) -> ElementSet:
    """<X> for a set of element indices X"""
    gens = list(generators)
    for a in gens:
        if not 0 <= a < g.order:
            raise ValueError(f"Element {a} is outside 0..{g.order - 1}")
    return ElementSet(_close(g, gens), g.order)


def is_subgroup(g: GroupTable, s: ElementSet) -> bool:
    """Nonempty and closed under a * b^-1"""
    members = s.members()
    if s.order != g.order or not members:
        return False
    for a in members:
        row = g.mul[a]
        for b in members:
            if row[g.inv[b]] not in s:
                return False
    return True


def enumerate_subgroups(g: GroupTable) -> List[ElementSet]:
    """
    Every subgroup of g, sorted by (size, member tuple).

    Seeds with <a> and <a, b> for all elements, then repeatedly adds one
    generator to a known subgroup and closes until no new subgroup appears.
    """
    found: Dict[int, Tuple[int, ...]] = {}
    for a in range(g.order):
        bits = _close(g, (a,))
        found.setdefault(bits, (a,))
    for a, b in combinations(range(g.order), 2):
        bits = _close(g, (a, b))
        found.setdefault(bits, (a, b))

    frontier = list(found)
    while frontier:
        new = []
        for bits in frontier:
            gens = found[bits]
            for x in range(g.order):
                if bits >> x & 1:
                    continue
                closed = _close(g, gens + (x,))
                if closed not in found:
                    found[closed] = gens + (x,)
                    new.append(closed)
        frontier = new

    subgroups = element_sets_sorted(ElementSet(bits, g.order) for bits in found)
    LOGGER.debug("%s has %d subgroups", g.name, len(subgroups))
    return subgroups


def naive_subgroups(g: GroupTable) -> List[ElementSet]:
    """Exponential filter over all subsets; only for small groups"""
    if g.order > NAIVE_SUBGROUP_LIMIT:
        raise ValueError(f"Naive subgroup search is limited to order {NAIVE_SUBGROUP_LIMIT}, got {g.order}")
    out = []
    for bits in range(1, 1 << g.order):
        s = ElementSet(bits, g.order)
        if s.bits >> g.identity & 1 and is_subgroup(g, s):
            out.append(s)
    return element_sets_sorted(out)


def index(g: GroupTable, h: ElementSet) -> int:
    """[G:H]"""
    if not is_subgroup(g, h):
        raise NotASubgroup(f"{h.display(g)} is not a subgroup of {g.name}")
    return g.order // h.size


def minimal_generators(g: GroupTable, h: ElementSet) -> Tuple[int, ...]:
    """Index-lexicographically smallest generating set of minimum size"""
    if not is_subgroup(g, h):
        raise NotASubgroup(f"{h.display(g)} is not a subgroup of {g.name}")
    if h.size == 1:
        return ()
    members = [a for a in h.members() if a != g.identity]
    for k in range(1, len(members) + 1):
        for gens in combinations(members, k):
            if _close(g, gens) == h.bits:
                return gens
    return tuple(members)


def subgroup_name(g: GroupTable, h: ElementSet) -> str:
    """
    Display name of a subgroup: {e} for the trivial group, the group's own
    name for G, otherwise <x> or <x,y> over a minimal generating set.
    """
    if h.size == g.order and is_subgroup(g, h):
        return g.name
    gens = minimal_generators(g, h)
    if not gens:
        return "{" + g.display(g.identity) + "}"
    return "⟨" + ",".join(g.display(a) for a in gens) + "⟩"


def proper_subgroups(g: GroupTable) -> List[ElementSet]:
    return [h for h in enumerate_subgroups(g) if h.size < g.order]


def cyclic_generator(g: GroupTable) -> Optional[int]:
    """Smallest-index element of order |G|, or None when G is not cyclic"""
    for a in range(g.order):
        if g.element_order(a) == g.order:
            return a
    return None


def units(n: int) -> List[int]:
    """Residues u in 0..n-1 with gcd(u, n) = 1"""
    return [u for u in range(n) if gcd(u, n) == 1]
