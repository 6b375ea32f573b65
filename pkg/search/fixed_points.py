"""
Classification of G-fixed tropical Plücker vectors: every union of G-orbits
on d-subsets that is a matroid basis family.
"""

import logging
import multiprocessing
import time
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from matroid.kernel import is_basis_family
from models.errors import CapExceeded
from models.group import GroupTable
from models.orbit import Orbit, OrbitLabel
from models.search import ClassificationReport, FamilyEntry, SearchOptions, SearchStats
from orbits.engine import label_display, label_index, orbit_census, orbit_partition, union_of_orbits
from search.clauses import (
    EXCHANGE,
    NONEMPTY,
    Clause,
    exchange_clauses,
    mandatory_clause,
    nonempty_clause,
    reduce_subsumed,
    rule_clause,
)
from search.complements import complement_index
from search.cyclic import mandatory_orbits
from search.rules import implication_rules
from search.solver import solve_prefix, split_prefixes
from storage.settings import get_orbit_cap, get_workers

LOGGER = logging.getLogger(__name__)

# Fixed so that reports do not depend on the worker count
SPLIT_DEPTH = 4


def build_clauses(g: GroupTable, d: int, orbits: Sequence[Orbit], theorem_rules: bool = False) -> List[Clause]:
    """
    Exchange clauses plus "some orbit is chosen"; with theorem_rules, also
    the implication rules for dimensions 2 and 3 and the forced f_{u,2u}
    orbits of cyclic groups.
    """
    clauses = exchange_clauses(orbits) + [nonempty_clause(len(orbits))]
    if not theorem_rules:
        return clauses
    index = label_index(orbits)
    extra = [rule_clause(rule, index) for rule in implication_rules(g, d)]
    if d == 3:
        extra.extend(mandatory_clause(index[label]) for label in mandatory_orbits(g))
    return reduce_subsumed(clauses + extra)


def _oracle(g: GroupTable, orbits: Sequence[Orbit]) -> Tuple[List[Tuple[int, ...]], SearchStats]:
    """Hand every nonempty union to the kernel"""
    k = len(orbits)
    stats = SearchStats()
    solutions = []
    for bits in range(1, 1 << k):
        chosen = tuple(i for i in range(k) if bits >> i & 1)
        stats.candidates_visited += 1
        if is_basis_family(union_of_orbits(g, orbits, chosen)):
            solutions.append(chosen)
    return solutions, stats


def _search(engine: str, k: int, clauses: Sequence[Clause], opts: SearchOptions) -> Tuple[List[Tuple[int, ...]], SearchStats]:
    tasks = [(engine, k, clauses, prefix) for prefix in split_prefixes(k, SPLIT_DEPTH)]
    if opts.parallel:
        workers = opts.workers or get_workers()
        LOGGER.info("Searching %d subtrees on %d workers", len(tasks), workers)
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.map(solve_prefix, tasks)
    else:
        results = [solve_prefix(task) for task in tasks]
    stats = SearchStats()
    solutions = []
    for found, task_stats in results:
        solutions.extend(found)
        stats.merge(task_stats)
    return solutions, stats


def family_entry(g: GroupTable, orbits: Sequence[Orbit], chosen: Sequence[int],
                 complements: Dict[FrozenSet[OrbitLabel], Tuple[str, ...]]) -> FamilyEntry:
    selected = set(chosen)
    labels = tuple(orbits[i].label for i in sorted(selected))
    return FamilyEntry(
        orbit_labels=labels,
        display=" ∪ ".join(label_display(g, label) for label in labels),
        basis_count=sum(orbits[i].size for i in selected),
        uniform=len(selected) == len(orbits),
        subgroup_complements=complements.get(frozenset(labels), ()),
        codim_one=len(selected) == len(orbits) - 1,
        excluded_labels=tuple(o.label for o in orbits if o.index not in selected),
    )


def enumerate_fixed_plucker(g: GroupTable, d: int, opts: Optional[SearchOptions] = None) -> ClassificationReport:
    """
    Every nonempty union of orbits on d-subsets of g that is a matroid basis
    family, sorted by (orbit count, labels).

    Raises:
        CapExceeded: the partition is above the order or subset caps, or
            oracle / exhaustive mode is asked for more than orbit_cap orbits
        UnsupportedDimension: d outside 1..|G|
    """
    opts = opts or SearchOptions()
    started = time.perf_counter() if opts.include_timing else None
    orbits = orbit_partition(g, d)
    k = len(orbits)
    if opts.mode != "pruned":
        cap = opts.orbit_cap or get_orbit_cap()
        if k > cap:
            raise CapExceeded(f"{g.name}, d={d} has {k} orbits; {opts.mode} mode is capped at {cap}")

    if opts.oracle_mode:
        solutions, stats = _oracle(g, orbits)
    else:
        clauses = build_clauses(g, d, orbits, theorem_rules=opts.pruning and opts.theorem_rules)
        solutions, stats = _search(opts.mode, k, clauses, opts)
        stats.clauses = len(clauses)
        stats.rules = sum(1 for c in clauses if c.source not in (EXCHANGE, NONEMPTY))

    complements = complement_index(g, d) if d in (2, 3) else {}
    families = sorted(
        (family_entry(g, orbits, chosen, complements) for chosen in solutions),
        key=FamilyEntry.sort_key,
    )
    if started is not None:
        stats.wall_ms = round((time.perf_counter() - started) * 1000.0, 3)
    LOGGER.info(
        "%s, d=%d (%s): %d matroidal unions of %d orbits, visited %d, pruned %d",
        g.name, d, opts.mode, len(families), k, stats.candidates_visited, stats.pruned,
    )
    return ClassificationReport(
        group=g.name,
        group_order=g.order,
        dim=d,
        mode=opts.mode,
        orbits=orbit_census(g, orbits).to_dict(),
        families=families,
        stats=stats,
    )
