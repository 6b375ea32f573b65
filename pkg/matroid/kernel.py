"""
Matroid basis-family tests and derived matroid data.

Families are bit-mask sets (see models.family). The exchange check is
vectorised with numpy: for a fixed basis A and x in A, every B that contains
neither x nor any y with A - x + y in the family is a failure.
"""

import logging
from itertools import combinations
from math import comb
from typing import Iterator, List

import numpy as np

from models.errors import NotAMatroid
from models.family import BasisFamily, ExchangeWitness, Verdict
from models.group import ElementSet, element_sets_sorted
from models.orbit import mask_of, members_of, subset_sort_key

LOGGER = logging.getLogger(__name__)

# Bits set in each byte value
_POPCOUNT8 = np.array([bin(v).count("1") for v in range(256)], dtype=np.uint8)

_ONE = np.uint64(1)


def popcounts(array: np.ndarray) -> np.ndarray:
    """Per-element popcount of a uint64 array"""
    if array.size == 0:
        return np.zeros(0, dtype=np.int64)
    as_bytes = np.ascontiguousarray(array, dtype=np.uint64).view(np.uint8).reshape(-1, 8)
    return _POPCOUNT8[as_bytes].sum(axis=1, dtype=np.int64)


def _bit(x: int) -> np.uint64:
    return _ONE << np.uint64(x)


def _witness(family: BasisFamily, a: int, b: int, x: int) -> ExchangeWitness:
    base = a ^ (1 << x)
    candidates = tuple(sorted((base | (1 << y) for y in members_of(b & ~a)), key=subset_sort_key))
    return ExchangeWitness(a=a, b=b, x=x, failed_candidates=candidates)


def is_basis_family(family: BasisFamily) -> Verdict:
    """
    Decide whether a family is the basis set of a matroid.

    A nonempty family is a matroid iff for all A, B in it and x in A - B there
    is y in B - A with A - x + y in it. On failure the witness is the first
    (A, B, x) in lexicographic order of sorted member tuples.
    """
    if not family:
        return Verdict(False, ExchangeWitness(empty_family=True))
    ordered = family.ordered
    array = family.array
    completions = family.completions
    for a in ordered:
        xs = members_of(a)
        # masks[j]: elements whose presence in B rescues the exchange of xs[j]
        masks = np.array(
            [(completions[a ^ (1 << x)] & ~a) | (1 << x) for x in xs],
            dtype=np.uint64,
        )
        failing = (array[:, None] & masks[None, :]) == 0
        rows = np.flatnonzero(failing.any(axis=1))
        if len(rows):
            b_index = int(rows[0])
            x = xs[int(np.argmax(failing[b_index]))]
            witness = _witness(family, a, ordered[b_index], x)
            LOGGER.debug("Exchange fails for A=%s, B=%s, x=%d", members_of(a), members_of(witness.b), x)
            return Verdict(False, witness)
    return Verdict(True)


def exchange_failures(family: BasisFamily, skip_near_pairs: bool = True) -> Iterator[ExchangeWitness]:
    """
    Every failing (A, B, x) in lexicographic order, scanned pair by pair.

    With skip_near_pairs, pairs with |A & B| >= d - 1 are not examined; they
    have A - x + y = B for the single y in B - A and so never fail.
    """
    d = family.d
    for a in family.ordered:
        for b in family.ordered:
            if a == b:
                continue
            if skip_near_pairs and (a & b).bit_count() >= d - 1:
                continue
            for x in members_of(a & ~b):
                if exchange_fails(family, a, b, x):
                    yield _witness(family, a, b, x)


def exchange_fails(family: BasisFamily, a: int, b: int, x: int) -> bool:
    """True when no y in b - a has a - x + y in the family"""
    base = a ^ (1 << x)
    return not any((base | (1 << y)) in family for y in members_of(b & ~a))


def witness_is_valid(family: BasisFamily, witness: ExchangeWitness) -> bool:
    """Re-check a witness against the family it was produced for"""
    if witness.empty_family:
        return len(family) == 0
    if witness.a not in family or witness.b not in family:
        return False
    if not (witness.a >> witness.x & 1) or witness.b >> witness.x & 1:
        return False
    expected = _witness(family, witness.a, witness.b, witness.x).failed_candidates
    if tuple(witness.failed_candidates) != expected:
        return False
    return all(c not in family for c in witness.failed_candidates)


def _require_matroid(family: BasisFamily) -> None:
    if not is_basis_family(family):
        raise NotAMatroid(f"Family of {len(family)} {family.d}-subsets is not a matroid basis family")


def check_strong_exchange(family: BasisFamily) -> Verdict:
    """
    Symmetric exchange: for A, B and x in A - B some y in B - A has both
    A - x + y and B - y + x in the family.

    Raises:
        NotAMatroid: the family fails the ordinary exchange check
    """
    _require_matroid(family)
    ordered = family.ordered
    array = family.array
    sorted_array = np.sort(array)
    completions = family.completions
    for a in ordered:
        for x in members_of(a):
            x_bit = _bit(x)
            lacks_x = (array & x_bit) == 0
            rescued = np.zeros(len(array), dtype=bool)
            for y in members_of(completions[a ^ (1 << x)] & ~a):
                y_bit = _bit(y)
                has_y = (array & y_bit) != 0
                swapped = (array & ~y_bit) | x_bit
                positions = np.searchsorted(sorted_array, swapped)
                positions[positions >= len(sorted_array)] = 0
                member = sorted_array[positions] == swapped
                rescued |= has_y & member
            failing = np.flatnonzero(lacks_x & ~rescued)
            if len(failing):
                b = ordered[int(failing[0])]
                return Verdict(False, _witness(family, a, b, x))
    return Verdict(True)


def _member_ranks(family: BasisFamily, mask: int) -> np.ndarray:
    return popcounts(family.array & np.uint64(mask))


def rank(family: BasisFamily, subset) -> int:
    """max |B & S| over bases B"""
    _require_matroid(family)
    mask = subset if isinstance(subset, int) else mask_of(subset)
    return int(_member_ranks(family, mask).max())


def _closure(family: BasisFamily, mask: int) -> int:
    base_rank = int(_member_ranks(family, mask).max())
    out = mask
    for e in range(family.ground_size):
        if not mask >> e & 1 and int(_member_ranks(family, mask | 1 << e).max()) == base_rank:
            out |= 1 << e
    return out


def closure(family: BasisFamily, subset) -> ElementSet:
    """cl(S) = {e : rank(S + e) = rank(S)}"""
    _require_matroid(family)
    mask = subset if isinstance(subset, int) else mask_of(subset)
    return ElementSet(_closure(family, mask), family.ground_size)


def flats_of_rank(family: BasisFamily, r: int) -> List[ElementSet]:
    """Closures of the independent r-sets, deduplicated and sorted"""
    _require_matroid(family)
    if not 0 <= r <= family.d:
        raise ValueError(f"Rank {r} is outside 0..{family.d}")
    independent = set()
    for m in family.ordered:
        for combo in combinations(members_of(m), r):
            independent.add(mask_of(combo))
    flats = {_closure(family, mask) for mask in independent}
    return element_sets_sorted(ElementSet(bits, family.ground_size) for bits in flats)


def hyperplanes(family: BasisFamily) -> List[ElementSet]:
    return flats_of_rank(family, family.d - 1)


def cocircuits(family: BasisFamily) -> List[ElementSet]:
    """Complements of the hyperplanes, sorted by (size, members)"""
    return element_sets_sorted(h.complement() for h in hyperplanes(family))


def is_uniform(family: BasisFamily) -> bool:
    return bool(family) and len(family) == comb(family.ground_size, family.d)


def uniform_family(n: int, d: int) -> BasisFamily:
    """U_{d,n}: every d-subset of n elements"""
    return BasisFamily(n, d, frozenset(mask_of(c) for c in combinations(range(n), d)))

