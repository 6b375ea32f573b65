"""
Depth-first enumeration of every orbit union satisfying a clause set.

PropagatingSolver branches on the first undecided orbit (include first) and
runs unit propagation after every decision; a falsified clause prunes the
branch. ExhaustiveSolver walks all 2^k assignments and only evaluates a
clause once its last variable is assigned.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from models.search import SearchStats
from search.clauses import Clause

LOGGER = logging.getLogger(__name__)

UNDECIDED = -1

_SATISFIED, _OPEN, _UNIT, _CONFLICT = range(4)

Prefix = Tuple[int, ...]


class PropagatingSolver:
    """Three-valued assignment (1 in, 0 out, -1 undecided) with watch lists per orbit"""

    def __init__(self, k: int, clauses: Sequence[Clause]):
        self.k = k
        self.clauses = list(clauses)
        self.watch: List[List[int]] = [[] for _ in range(k)]
        for ci, clause in enumerate(self.clauses):
            if not clause.variables:
                raise ValueError("Clause without variables")
            for v in sorted(clause.variables):
                self.watch[v].append(ci)
        self.stats = SearchStats()
        self.solutions: List[Tuple[int, ...]] = []

    @staticmethod
    def _status(clause: Clause, values: List[int]) -> Tuple[int, Optional[Tuple[int, int]]]:
        open_count = 0
        literal = None
        for v in clause.premises:
            value = values[v]
            if value == 0:
                return _SATISFIED, None
            if value == UNDECIDED:
                open_count += 1
                literal = (v, 0)
        for v in clause.conclusions:
            value = values[v]
            if value == 1:
                return _SATISFIED, None
            if value == UNDECIDED:
                open_count += 1
                literal = (v, 1)
        if open_count == 0:
            return _CONFLICT, None
        if open_count == 1:
            return _UNIT, literal
        return _OPEN, None

    def _propagate(self, values: List[int], trail: List[int], start: int) -> bool:
        i = start
        while i < len(trail):
            var = trail[i]
            i += 1
            for ci in self.watch[var]:
                status, literal = self._status(self.clauses[ci], values)
                if status == _CONFLICT:
                    return False
                if status == _UNIT:
                    v, value = literal
                    values[v] = value
                    trail.append(v)
                    self.stats.forced += 1
        return True

    def _root(self, values: List[int], trail: List[int]) -> bool:
        """Clauses that are unit before any decision (e.g. forced orbits)"""
        for clause in self.clauses:
            status, literal = self._status(clause, values)
            if status == _CONFLICT:
                return False
            if status == _UNIT:
                v, value = literal
                if values[v] == UNDECIDED:
                    values[v] = value
                    trail.append(v)
                    self.stats.forced += 1
        return self._propagate(values, trail, 0)

    @staticmethod
    def _undo(values: List[int], trail: List[int], mark: int) -> None:
        for v in trail[mark:]:
            values[v] = UNDECIDED
        del trail[mark:]

    def _decide(self, var: int, value: int, values: List[int], trail: List[int]) -> bool:
        if values[var] != UNDECIDED:
            return values[var] == value
        mark = len(trail)
        values[var] = value
        trail.append(var)
        return self._propagate(values, trail, mark)

    def _search(self, values: List[int], trail: List[int]) -> None:
        self.stats.candidates_visited += 1
        var = next((v for v in range(self.k) if values[v] == UNDECIDED), None)
        if var is None:
            self.solutions.append(tuple(v for v in range(self.k) if values[v] == 1))
            return
        for value in (1, 0):
            mark = len(trail)
            if self._decide(var, value, values, trail):
                self._search(values, trail)
            else:
                self.stats.pruned += 1
            self._undo(values, trail, mark)

    def solve(self, prefix: Prefix = ()) -> List[Tuple[int, ...]]:
        """
        All satisfying unions (as sorted orbit-index tuples) whose first
        len(prefix) orbits take the prefix values.
        """
        values = [UNDECIDED] * self.k
        trail: List[int] = []
        if not self._root(values, trail):
            self.stats.pruned += 1
            return self.solutions
        for var, value in enumerate(prefix):
            if not self._decide(var, value, values, trail):
                self.stats.pruned += 1
                return self.solutions
        self._search(values, trail)
        return self.solutions


class ExhaustiveSolver:
    """Every assignment is visited; clauses are bucketed by their largest variable"""

    def __init__(self, k: int, clauses: Sequence[Clause]):
        self.k = k
        self.buckets: List[List[Clause]] = [[] for _ in range(k)]
        for clause in clauses:
            if not clause.variables:
                raise ValueError("Clause without variables")
            self.buckets[max(clause.variables)].append(clause)
        self.stats = SearchStats()
        self.solutions: List[Tuple[int, ...]] = []

    def _holds(self, depth: int, values: List[int]) -> bool:
        for clause in self.buckets[depth]:
            if not any(values[p] == 0 for p in clause.premises) and not any(values[c] == 1 for c in clause.conclusions):
                return False
        return True

    def _search(self, depth: int, values: List[int], good: bool) -> None:
        self.stats.candidates_visited += 1
        if depth == self.k:
            if good:
                self.solutions.append(tuple(v for v in range(self.k) if values[v] == 1))
            return
        for value in (1, 0):
            values[depth] = value
            self._search(depth + 1, values, good and self._holds(depth, values))
        values[depth] = UNDECIDED

    def solve(self, prefix: Prefix = ()) -> List[Tuple[int, ...]]:
        values = [UNDECIDED] * self.k
        good = True
        for var, value in enumerate(prefix):
            values[var] = value
            good = good and self._holds(var, values)
        self._search(len(prefix), values, good)
        return self.solutions


def split_prefixes(k: int, depth: int) -> List[Prefix]:
    """All 0/1 assignments of the first min(k, depth) orbits, include-first order"""
    prefixes: List[Prefix] = [()]
    for _ in range(min(k, depth)):
        prefixes = [p + (value,) for p in prefixes for value in (1, 0)]
    return prefixes


def solve_prefix(task: Tuple[str, int, Sequence[Clause], Prefix]) -> Tuple[List[Tuple[int, ...]], SearchStats]:
    """Pool entry point: (engine, k, clauses, prefix) -> (solutions, stats)"""
    engine, k, clauses, prefix = task
    solver = PropagatingSolver(k, clauses) if engine == "pruned" else ExhaustiveSolver(k, clauses)
    solutions = solver.solve(prefix)
    return solutions, solver.stats
