"""
Test suite for the fixed-point search: clauses, solvers, implication rules,
cyclic helpers, subgroup complements and the classification report.
"""

from itertools import combinations

import pytest

from groups.catalog import DEFAULT_CATALOG_SPECS, parse_group_spec
from groups.constructors import build_cyclic, build_quaternion, build_symmetric
from groups.subgroups import units
from matroid.kernel import check_strong_exchange, cocircuits, is_basis_family, witness_is_valid
from models.errors import CapExceeded, ContradictoryOptions, NotASubgroup, UnsupportedDimension, WrongCardinality
from models.family import ExchangeWitness
from models.group import ElementSet
from models.orbit import mask_of
from models.search import ClassificationReport, SearchOptions
from orbits.engine import label_index, orbit_partition, union_of_orbits
from search.clauses import (
    Clause,
    all_hold,
    exchange_clauses,
    mandatory_clause,
    nonempty_clause,
    reduce_subsumed,
    rule_clause,
)
from search.complements import complement_index, subgroup_complement_family, subgroup_complement_labels
from search.cyclic import (
    codim_one_families_cyclic,
    codim_range,
    mandatory_orbits,
    mandatory_orbits_dim3_cyclic,
    predicted_codim_one,
    smallest_index,
)
from search.fixed_points import build_clauses, enumerate_fixed_plucker
from search.rules import (
    exchange_rule,
    half_order_rules,
    implication_rules,
    power_chain_rules,
    product_rules,
    rule_is_certified,
    square_chain_rules,
)
from search.solver import ExhaustiveSolver, PropagatingSolver, solve_prefix, split_prefixes

EQUIVALENCE_CASES = [
    ("Z:6", 3), ("Z:7", 3), ("D:3", 3), ("Q8", 2), ("D:4", 2), ("Z:8", 2), ("Z:8", 3), ("Z:2xZ:4", 2),
]

# every catalog group and dimension small enough for the oracle
CATALOG_CASES = [
    (spec, d) for spec in DEFAULT_CATALOG_SPECS for d in (2, 3)
    if len(orbit_partition(parse_group_spec(spec), d)) <= 16
]


def labels_of(report: ClassificationReport):
    return [entry.orbit_labels for entry in report.families]


class TestClauses:
    """Clause semantics and subsumption"""

    def test_holds(self):
        clause = Clause((0, 1), (2,))
        assert clause.holds(frozenset({0}))
        assert clause.holds(frozenset({0, 1, 2}))
        assert not clause.holds(frozenset({0, 1}))
        assert clause.variables == frozenset({0, 1, 2})

    def test_nonempty_and_mandatory(self):
        assert not nonempty_clause(3).holds(frozenset())
        assert nonempty_clause(3).holds(frozenset({2}))
        assert not mandatory_clause(1).holds(frozenset({0, 2}))

    def test_subsumption(self):
        weak = Clause((0, 1), (2, 3))
        strong = Clause((0,), (2,))
        other = Clause((1,), (3,))
        kept = reduce_subsumed([weak, strong, other, Clause((0,), (2,))])
        assert kept == [strong, other]

    def test_no_subsumption_across_conclusions(self):
        clauses = [Clause((0,), (1,)), Clause((0,), (2,))]
        assert reduce_subsumed(clauses) == clauses

    @pytest.mark.parametrize("spec,d", [("Z:7", 3), ("Z:6", 3), ("D:3", 3), ("Q8", 2)])
    def test_clauses_match_kernel(self, spec, d):
        g = parse_group_spec(spec)
        orbits = orbit_partition(g, d)
        clauses = exchange_clauses(orbits)
        for size in range(1, len(orbits) + 1):
            for chosen in combinations(range(len(orbits)), size):
                expected = bool(is_basis_family(union_of_orbits(g, orbits, chosen)))
                assert all_hold(clauses, chosen) == expected

    def test_clauses_carry_witnesses(self):
        g = build_cyclic(6)
        orbits = orbit_partition(g, 3)
        for clause in exchange_clauses(orbits):
            (w,) = clause.witnesses
            assert w.a in orbits[clause.premises[0]].members or w.a in orbits[clause.premises[-1]].members
            assert w.a >> w.x & 1 and not w.b >> w.x & 1

    def test_theorem_rules_only_add_clauses(self):
        g = build_cyclic(7)
        orbits = orbit_partition(g, 3)
        plain = build_clauses(g, 3, orbits)
        seeded = build_clauses(g, 3, orbits, theorem_rules=True)
        assert any(c.source == "thm-3d" for c in seeded)
        assert not any(c.source == "thm-3d" for c in plain)


class TestSolvers:
    """Propagating and exhaustive solvers on a hand-built clause set"""

    # nonempty, and orbit 0 forces orbit 1
    CLAUSES = [nonempty_clause(3), Clause((0,), (1,))]
    EXPECTED = [(0, 1, 2), (0, 1), (1, 2), (1,), (2,)]

    def test_propagating(self):
        solver = PropagatingSolver(3, self.CLAUSES)
        assert solver.solve() == self.EXPECTED
        assert solver.stats.forced > 0

    def test_exhaustive(self):
        solver = ExhaustiveSolver(3, self.CLAUSES)
        assert solver.solve() == self.EXPECTED
        assert solver.stats.candidates_visited == 2 ** 4 - 1

    def test_prefixes_partition_the_search(self):
        found = []
        for prefix in split_prefixes(3, 2):
            solutions, _ = solve_prefix(("pruned", 3, self.CLAUSES, prefix))
            found.extend(solutions)
        assert found == self.EXPECTED

    def test_conflicting_prefix(self):
        solver = PropagatingSolver(3, self.CLAUSES)
        assert solver.solve((1, 0)) == []
        assert solver.stats.pruned == 1

    def test_split_prefixes(self):
        assert split_prefixes(2, 4) == [(1, 1), (1, 0), (0, 1), (0, 0)]
        assert split_prefixes(0, 4) == [()]

    def test_empty_clause_rejected(self):
        with pytest.raises(ValueError):
            PropagatingSolver(2, [Clause((), ())])


class TestEnumeration:
    """enumerate_fixed_plucker across its three engines"""

    @pytest.mark.parametrize("spec,d", EQUIVALENCE_CASES)
    def test_engines_agree(self, spec, d):
        g = parse_group_spec(spec)
        oracle = enumerate_fixed_plucker(g, d, SearchOptions(oracle_mode=True))
        exhaustive = enumerate_fixed_plucker(g, d, SearchOptions(use_pruning=False))
        pruned = enumerate_fixed_plucker(g, d)
        plain = enumerate_fixed_plucker(g, d, SearchOptions(theorem_rules=False))
        assert labels_of(oracle) == labels_of(exhaustive) == labels_of(pruned) == labels_of(plain)
        assert (oracle.mode, exhaustive.mode, pruned.mode) == ("oracle", "exhaustive", "pruned")

    @pytest.mark.parametrize("spec,d", EQUIVALENCE_CASES)
    def test_every_family_is_matroidal(self, spec, d):
        g = parse_group_spec(spec)
        orbits = orbit_partition(g, d)
        where = label_index(orbits)
        for entry in enumerate_fixed_plucker(g, d).families:
            assert is_basis_family(union_of_orbits(g, orbits, [where[label] for label in entry.orbit_labels]))

    def test_z6_dimension_three(self):
        report = enumerate_fixed_plucker(build_cyclic(6), 3)
        assert labels_of(report) == [
            ((1, 2), (2, 4)),
            ((1, 2), (1, 3), (1, 4)),
            ((1, 2), (1, 3), (1, 4), (2, 4)),
        ]
        first, second, uniform = report.families
        assert first.subgroup_complements == ("⟨3⟩",)
        assert first.basis_count == 8
        assert second.subgroup_complements == ()
        assert second.codim_one
        assert second.excluded_labels == ((2, 4),)
        assert uniform.uniform
        assert uniform.subgroup_complements == ("{0}",)

    def test_z7_dimension_three(self):
        report = enumerate_fixed_plucker(build_cyclic(7), 3)
        assert labels_of(report) == [
            ((1, 2), (1, 3), (1, 4), (2, 4)),
            ((1, 2), (1, 4), (1, 5), (2, 4)),
            ((1, 2), (1, 3), (1, 4), (1, 5), (2, 4)),
        ]

    def test_quaternion_dimension_two(self):
        report = enumerate_fixed_plucker(build_quaternion(), 2)
        assert len(report.families) == 5
        assert all(entry.subgroup_complements for entry in report.families)

    def test_generic_dimension(self):
        g = build_cyclic(6)
        report = enumerate_fixed_plucker(g, 4)
        assert report.families[-1].uniform
        assert all(not entry.subgroup_complements for entry in report.families)

    @pytest.mark.parametrize("spec,count", [("Z:4", 1), ("Z:6", 3), ("Z:7", 3), ("D:3", 5), ("S:3", 5)])
    def test_dimension_three_with_involutions(self, spec, count):
        g = parse_group_spec(spec)
        report = enumerate_fixed_plucker(g, 3)
        assert len(report.families) == count
        assert report.families[-1].uniform

    def test_quaternion_dimension_three(self):
        g = build_quaternion()
        pruned = enumerate_fixed_plucker(g, 3)
        assert labels_of(pruned) == labels_of(enumerate_fixed_plucker(g, 3, SearchOptions(oracle_mode=True)))
        assert pruned.families[-1].uniform

    def test_symmetric_group_dimension_three(self):
        report = enumerate_fixed_plucker(build_symmetric(3), 3)
        assert len(report.families) == 5
        complements = [name for entry in report.families for name in entry.subgroup_complements]
        assert sorted(complements) == sorted(["⟨321⟩", "⟨213⟩", "⟨132⟩", "{123}"])
        assert sum(1 for entry in report.families if not entry.subgroup_complements) == 1
        assert report.families[-1].subgroup_complements == ("{123}",)

    @pytest.mark.slow
    @pytest.mark.parametrize("spec,d", CATALOG_CASES)
    def test_catalog_engines_agree(self, spec, d):
        g = parse_group_spec(spec)
        oracle = enumerate_fixed_plucker(g, d, SearchOptions(oracle_mode=True))
        exhaustive = enumerate_fixed_plucker(g, d, SearchOptions(use_pruning=False))
        pruned = enumerate_fixed_plucker(g, d)
        assert labels_of(oracle) == labels_of(exhaustive) == labels_of(pruned)
        orbits = orbit_partition(g, d)
        where = label_index(orbits)
        for entry in pruned.families:
            family = union_of_orbits(g, orbits, [where[label] for label in entry.orbit_labels])
            assert check_strong_exchange(family)
            for cocircuit in cocircuits(family):
                assert all(cocircuit.bits & basis for basis in family.ordered)

    @pytest.mark.parametrize("spec", ["Z:8", "Z:12", "D:6"])
    def test_parallel_matches_serial(self, spec):
        g = parse_group_spec(spec)
        serial = enumerate_fixed_plucker(g, 3)
        parallel = enumerate_fixed_plucker(g, 3, SearchOptions(parallel=True, workers=4))
        assert parallel.to_dict() == serial.to_dict()

    def test_reports_are_deterministic(self):
        g = parse_group_spec("D:4")
        assert enumerate_fixed_plucker(g, 3).to_dict() == enumerate_fixed_plucker(g, 3).to_dict()

    def test_statistics(self):
        g = build_cyclic(7)
        seeded = enumerate_fixed_plucker(g, 3)
        plain = enumerate_fixed_plucker(g, 3, SearchOptions(theorem_rules=False))
        assert seeded.stats.rules > 0
        assert plain.stats.rules == 0
        assert plain.stats.clauses > 0
        assert "wall_ms" not in seeded.to_dict()["stats"]

    def test_timing_is_opt_in(self):
        report = enumerate_fixed_plucker(build_cyclic(5), 2, SearchOptions(include_timing=True))
        assert report.stats.wall_ms is not None

    def test_report_round_trip(self):
        report = enumerate_fixed_plucker(build_cyclic(6), 3)
        assert ClassificationReport.from_dict(report.to_dict()).to_dict() == report.to_dict()
        assert "f_{1,2} ∪ f_{2,4}" in report.render_text()

    def test_contradictory_options(self):
        with pytest.raises(ContradictoryOptions):
            SearchOptions(use_pruning=True, oracle_mode=True)
        with pytest.raises(ContradictoryOptions):
            SearchOptions(oracle_mode=True, parallel=True)
        with pytest.raises(ValueError):
            SearchOptions(orbit_cap=0)

    def test_orbit_cap(self):
        g = build_cyclic(6)
        with pytest.raises(CapExceeded):
            enumerate_fixed_plucker(g, 3, SearchOptions(oracle_mode=True, orbit_cap=3))
        with pytest.raises(CapExceeded):
            enumerate_fixed_plucker(g, 3, SearchOptions(use_pruning=False, orbit_cap=3))
        assert enumerate_fixed_plucker(g, 3, SearchOptions(orbit_cap=3)).families

    def test_orbit_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("TROPREP_ORBIT_CAP", "2")
        with pytest.raises(CapExceeded):
            enumerate_fixed_plucker(build_cyclic(6), 3, SearchOptions(oracle_mode=True))


class TestRules:
    """Implication rules and their exchange certificates"""

    @pytest.mark.parametrize("spec", ["Z:6", "Z:7", "Z:8", "Z:12", "D:3", "D:4", "Q8", "Z:2xZ:4"])
    @pytest.mark.parametrize("d", [2, 3])
    def test_rules_are_certified(self, spec, d):
        g = parse_group_spec(spec)
        rules = implication_rules(g, d)
        assert rules
        for rule in rules:
            assert rule_is_certified(g, d, rule), rule.to_dict()

    @pytest.mark.parametrize("spec,d", [("Z:6", 3), ("Z:8", 2), ("D:3", 3), ("Q8", 2)])
    def test_rules_hold_on_classification(self, spec, d):
        g = parse_group_spec(spec)
        orbits = orbit_partition(g, d)
        index = label_index(orbits)
        report = enumerate_fixed_plucker(g, d, SearchOptions(theorem_rules=False))
        clauses = [rule_clause(rule, index) for rule in implication_rules(g, d)]
        for entry in report.families:
            assert all_hold(clauses, [index[label] for label in entry.orbit_labels])

    def test_z6_product_rule(self):
        g = build_cyclic(6)
        rule = exchange_rule(g, 3, mask_of((0, 4, 5)), mask_of((0, 1, 2)), 5)
        assert rule.premises == ((1, 2),)
        assert rule.conclusions == ((1, 4), (2, 4))

    def test_quaternion_product_rule(self):
        g = build_quaternion()
        keys = {rule.key() for rule in product_rules(g)}
        assert (((1,),), ((2,),)) in keys

    def test_tautology_is_dropped(self):
        g = build_cyclic(6)
        # A = {0,1,2}, B = {0,1,3}, x = 2: the only exchange gives B itself
        assert exchange_rule(g, 3, mask_of((0, 1, 2)), mask_of((0, 1, 3)), 2) is None

    def test_bad_instances(self):
        g = build_cyclic(6)
        with pytest.raises(WrongCardinality):
            exchange_rule(g, 3, mask_of((0, 1)), mask_of((0, 1, 3)), 1)
        with pytest.raises(ValueError):
            exchange_rule(g, 3, mask_of((0, 1, 2)), mask_of((0, 1, 3)), 1)

    def test_chains(self):
        g = build_cyclic(12)
        assert all(len(rule.premises) == 1 for rule in power_chain_rules(g))
        assert any(len(rule.witnesses) > 1 for rule in square_chain_rules(g))
        assert len(half_order_rules(g)) == 8
        assert half_order_rules(build_cyclic(7)) == []
        assert power_chain_rules(parse_group_spec("D:4"))

    def test_uncertified_rule(self):
        g = build_cyclic(6)
        rule = exchange_rule(g, 3, mask_of((0, 4, 5)), mask_of((0, 1, 2)), 5)
        forged = type(rule)(rule.premises, ((1, 3),), rule.source, rule.witnesses)
        assert not rule_is_certified(g, 3, forged)
        assert not rule_is_certified(g, 3, type(rule)(rule.premises, rule.conclusions, rule.source, ()))

    def test_no_rules_above_dimension_three(self):
        assert implication_rules(build_cyclic(6), 4) == []

    @pytest.mark.parametrize("spec", ["Z:4", "Z:6", "D:3", "D:4", "Q8", "S:3", "Z:2xZ:2", "Z:2xZ:4"])
    def test_square_chains_skip_short_orders(self, spec):
        g = parse_group_spec(spec)
        rules = square_chain_rules(g)
        if all(g.element_order(a) < 5 for a in range(g.order)):
            assert rules == []
        for rule in rules:
            assert rule_is_certified(g, 3, rule)

    @pytest.mark.parametrize("n", [6, 7, 8, 9])
    def test_forced_orbits_hold_on_plain_search(self, n):
        g = build_cyclic(n)
        orbits = orbit_partition(g, 3)
        index = label_index(orbits)
        forced = [c for c in build_clauses(g, 3, orbits, theorem_rules=True) if c.source == "thm-3d"]
        assert forced
        assert all(c.witnesses == () and c.premises == () for c in forced)
        for entry in enumerate_fixed_plucker(g, 3, SearchOptions(theorem_rules=False)).families:
            assert all_hold(forced, [index[label] for label in entry.orbit_labels])


class TestCyclicHelpers:
    """Mandatory orbits, codimension-one families and the index lemma"""

    def test_mandatory_orbits(self):
        assert mandatory_orbits_dim3_cyclic(6) == [(1, 2)]
        assert mandatory_orbits_dim3_cyclic(7) == [(1, 2), (1, 4), (2, 4)]
        assert mandatory_orbits_dim3_cyclic(4) == [(1, 2)]
        assert mandatory_orbits(parse_group_spec("D:4")) == []

    def test_mandatory_orbits_need_order_four(self):
        with pytest.raises(ValueError):
            mandatory_orbits_dim3_cyclic(3)

    @pytest.mark.parametrize("n,k,expected", [
        (7, 4, False), (7, 3, True), (7, 5, True), (6, 3, False), (6, 4, False), (8, 3, True), (8, 5, False),
        (9, 6, True), (9, 8, False),
    ])
    def test_prediction(self, n, k, expected):
        assert predicted_codim_one(n, k) is expected

    def test_codim_range(self):
        assert codim_range(10) == (3, 8)

    @pytest.mark.parametrize("n", [6, 7, 8, 9])
    def test_codim_one_families(self, n):
        g = build_cyclic(n)
        orbits = orbit_partition(g, 3)
        index = label_index(orbits)
        results = codim_one_families_cyclic(n)
        assert results
        for result in results:
            assert result.agrees
            if not result.verdict:
                family = union_of_orbits(g, orbits, [i for i in range(len(orbits)) if i != index[result.label]])
                assert witness_is_valid(family, ExchangeWitness.from_dict(result.witness))

    def test_codim_one_z7(self):
        by_k = {(r.u, r.k): r for r in codim_one_families_cyclic(7)}
        assert by_k[(1, 4)].verdict is False
        assert by_k[(1, 3)].verdict is True

    def test_codim_one_needs_order_four(self):
        with pytest.raises(ValueError):
            codim_one_families_cyclic(3)

    @pytest.mark.parametrize("n", range(3, 17))
    def test_smallest_index(self, n):
        for orbit in orbit_partition(build_cyclic(n), 3):
            for u in units(n):
                assert 3 * smallest_index(n, u, orbit.members) <= n


class TestComplements:
    """Subgroup-complement families"""

    def test_dimension_two(self):
        g = build_cyclic(6)
        h = ElementSet.from_members([0, 2, 4], 6)
        assert subgroup_complement_labels(g, h, 2) == [(1,), (3,)]
        assert is_basis_family(subgroup_complement_family(g, h, 2))

    def test_dimension_three(self):
        g = build_cyclic(6)
        h = ElementSet.from_members([0, 3], 6)
        assert subgroup_complement_labels(g, h, 3) == [(1, 2), (2, 4)]
        assert is_basis_family(subgroup_complement_family(g, h, 3))

    def test_errors(self):
        g = build_cyclic(6)
        with pytest.raises(NotASubgroup):
            subgroup_complement_family(g, ElementSet.from_members([0, 1], 6), 2)
        with pytest.raises(UnsupportedDimension):
            subgroup_complement_family(g, ElementSet.from_members([0, 3], 6), 4)

    def test_index(self):
        g = build_cyclic(6)
        index = complement_index(g, 3)
        assert index[frozenset({(1, 2), (2, 4)})] == ("⟨3⟩",)
        # index-2 subgroups leave no triples
        assert all("⟨2⟩" not in names for names in index.values())
