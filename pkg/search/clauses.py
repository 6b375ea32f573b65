"""
Orbit-level clauses for the fixed-point search.

Variables are orbit indices. A clause is satisfied by a union of orbits when
some premise orbit is left out or some conclusion orbit is included.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from models.orbit import Orbit, OrbitLabel, members_of
from models.search import ExchangeInstance, ImplicationRule

LOGGER = logging.getLogger(__name__)

EXCHANGE = "exchange"
NONEMPTY = "nonempty"
MANDATORY = "thm-3d"


@dataclass(frozen=True)
class Clause:
    premises: Tuple[int, ...]
    conclusions: Tuple[int, ...]
    source: str = EXCHANGE
    witnesses: Tuple[ExchangeInstance, ...] = ()

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return (self.premises, self.conclusions)

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(self.premises) | frozenset(self.conclusions)

    def holds(self, chosen: FrozenSet[int]) -> bool:
        return not all(p in chosen for p in self.premises) or any(c in chosen for c in self.conclusions)


def subset_orbit_index(orbits: Sequence[Orbit]) -> Dict[int, int]:
    return {m: orbit.index for orbit in orbits for m in orbit.members}


def exchange_clauses(orbits: Sequence[Orbit]) -> List[Clause]:
    """
    One clause per (orbit representative A, member B of any orbit, x in A - B);
    translating any exchange pair so that A is its orbit's representative
    shows these cover every pair. Clauses whose conclusions meet their
    premises always hold and are dropped.
    """
    where = subset_orbit_index(orbits)
    kept: Dict[Tuple, Clause] = {}
    for source in orbits:
        a = source.representative
        for other in orbits:
            for b in other.members:
                if a == b:
                    continue
                outside = members_of(b & ~a)
                for x in members_of(a & ~b):
                    base = a ^ (1 << x)
                    conclusions = tuple(sorted({where[base | (1 << y)] for y in outside}))
                    premises = tuple(sorted({source.index, other.index}))
                    if set(conclusions) & set(premises):
                        continue
                    key = (premises, conclusions)
                    if key not in kept:
                        kept[key] = Clause(premises, conclusions, EXCHANGE, (ExchangeInstance(a, b, x),))
    clauses = reduce_subsumed(kept.values())
    LOGGER.debug("%d exchange clauses (%d before subsumption)", len(clauses), len(kept))
    return clauses


def reduce_subsumed(clauses: Iterable[Clause]) -> List[Clause]:
    """
    Drop every clause implied by another: C subsumes D when C's premises and
    conclusions are subsets of D's. Ties keep the first clause seen.
    """
    ordered = sorted(
        enumerate(clauses),
        key=lambda item: (len(item[1].conclusions), len(item[1].premises), item[0]),
    )
    by_premises: Dict[Tuple[int, ...], List[FrozenSet[int]]] = {}
    kept: List[Tuple[int, Clause]] = []
    seen = set()
    for position, clause in ordered:
        if clause.key() in seen:
            continue
        conclusions = frozenset(clause.conclusions)
        subsumed = False
        for premises in _premise_subsets(clause.premises):
            if any(c <= conclusions for c in by_premises.get(premises, ())):
                subsumed = True
                break
        if subsumed:
            continue
        seen.add(clause.key())
        by_premises.setdefault(clause.premises, []).append(conclusions)
        kept.append((position, clause))
    kept.sort(key=lambda item: item[0])
    return [clause for _, clause in kept]


def _premise_subsets(premises: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    out = [()]
    for p in premises:
        out += [s + (p,) for s in out]
    return [tuple(sorted(s)) for s in out]


def rule_clause(rule: ImplicationRule, index: Dict[OrbitLabel, int]) -> Clause:
    return Clause(
        premises=tuple(sorted({index[p] for p in rule.premises})),
        conclusions=tuple(sorted({index[c] for c in rule.conclusions})),
        source=rule.source,
        witnesses=rule.witnesses,
    )


def nonempty_clause(k: int) -> Clause:
    return Clause((), tuple(range(k)), NONEMPTY)


def mandatory_clause(orbit: int) -> Clause:
    """
    Forced orbit f_{u,2u} of a cyclic group. Unlike rule clauses it has no
    exchange witness; the thm-3d check confirms it by comparing the seeded
    search with the plain one.
    """
    return Clause((), (orbit,), MANDATORY)


def all_hold(clauses: Iterable[Clause], chosen: Iterable[int]) -> bool:
    selected = frozenset(chosen)
    return all(clause.holds(selected) for clause in clauses)

