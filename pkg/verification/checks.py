"""
Named, runnable checks of the classification results.

Conditional statements ("if F is in B then ...") are evaluated over every
matroidal family the classifier finds, and rule-based statements also
replay the exchange witnesses of the corresponding rules. Classification
here runs without theorem-derived rules so that no check assumes what it
verifies.
"""

import logging
from math import isqrt
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from groups.catalog import default_catalog, parse_group_spec
from groups.constructors import build_cyclic, build_dihedral
from groups.subgroups import cyclic_generator, enumerate_subgroups, index, proper_subgroups, subgroup_name, units
from matroid.kernel import exchange_failures, is_basis_family, witness_is_valid
from models.errors import UnknownCheckId
from models.family import ExchangeWitness
from models.group import GroupTable
from models.orbit import OrbitLabel, mask_of
from models.search import ClassificationReport, ImplicationRule, SearchOptions
from models.theorem_check import FAIL, PASS, SKIP, CheckScope, TheoremCheck
from orbits.engine import (
    difference_label,
    label_index,
    orbit_members,
    orbit_partition,
    triple_label,
    union_of_orbits,
)
from search.clauses import all_hold
from search.complements import subgroup_complement_family, subgroup_complement_labels
from search.cyclic import codim_one_families_cyclic, mandatory_orbits, smallest_index
from search.fixed_points import build_clauses, enumerate_fixed_plucker
from search.rules import (
    cyclic_powers,
    half_order_rules,
    implication_rules,
    pair_exchange_rules,
    power_chain_rules,
    product_rules,
    rule_is_certified,
    square_chain_rules,
    sum_difference_rules,
)
from verification.golden import EXAMPLES, GoldenExample, resolve_family, resolve_rule

LOGGER = logging.getLogger(__name__)

Failure = Optional[dict]


def _labels(labels: Iterable[OrbitLabel]) -> List[List[int]]:
    return [list(label) for label in sorted(labels)]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, isqrt(n) + 1))


class CheckContext:
    """Catalog, scope and a classification cache shared by the checks of one run"""

    def __init__(self, catalog: Sequence[GroupTable], scope: Optional[CheckScope] = None,
                 parallel: bool = False, workers: Optional[int] = None):
        self.catalog = list(catalog)
        self.scope = scope or CheckScope()
        self.parallel = parallel
        self.workers = workers
        self._reports: Dict[Tuple[GroupTable, int, bool], ClassificationReport] = {}

    def classify(self, g: GroupTable, d: int, theorem_rules: bool = False) -> ClassificationReport:
        key = (g, d, theorem_rules)
        if key not in self._reports:
            opts = SearchOptions(theorem_rules=theorem_rules, parallel=self.parallel, workers=self.workers)
            self._reports[key] = enumerate_fixed_plucker(g, d, opts)
        return self._reports[key]

    def families(self, g: GroupTable, d: int) -> List[FrozenSet[OrbitLabel]]:
        return self.classify(g, d).family_sets()

    def in_cyclic_range(self, g: GroupTable) -> bool:
        low, high = self.scope.cyclic_range
        return low <= g.order <= high and cyclic_generator(g) is not None

    def dim2_groups(self) -> List[GroupTable]:
        return [g for g in self.catalog if 2 <= g.order <= self.scope.dim2_max_order]

    def dim3_groups(self) -> List[GroupTable]:
        out = []
        for g in self.catalog:
            if g.order < 3:
                continue
            if g.order > self.scope.dim3_max_order and not self.in_cyclic_range(g):
                continue
            if len(orbit_partition(g, 3)) > self.scope.dim3_max_orbits:
                LOGGER.warning("Skipping %s in dimension 3: too many orbits", g.name)
                continue
            out.append(g)
        return out

    def cyclic_dim2_groups(self) -> List[GroupTable]:
        return [g for g in self.dim2_groups() if cyclic_generator(g) is not None]

    def cyclic_dim3_groups(self) -> List[GroupTable]:
        return [g for g in self.dim3_groups() if self.in_cyclic_range(g)]


def _outcome(check_id: str, scope: dict, failure: Failure, detail: str) -> TheoremCheck:
    return TheoremCheck(
        id=check_id,
        statement=STATEMENTS[check_id],
        status=FAIL if failure else PASS,
        scope=scope,
        detail=detail,
        counterexample=failure,
    )


def _skip(check_id: str, scope: dict) -> TheoremCheck:
    return TheoremCheck(
        id=check_id,
        statement=STATEMENTS[check_id],
        status=SKIP,
        scope=scope,
        detail="no catalog group in scope",
    )


def _group_scope(groups: Sequence[GroupTable], dim: int) -> dict:
    return {"groups": [g.name for g in groups], "dims": [dim]}


def _uncertified(g: GroupTable, d: int, rules: Iterable[ImplicationRule]) -> Failure:
    for rule in rules:
        if not rule_is_certified(g, d, rule):
            return {"group": g.name, "rule": rule.to_dict()}
    return None


def _pair_labels(g: GroupTable) -> Dict[Tuple[int, int], OrbitLabel]:
    """f_{a,b} for every ordered pair of distinct non-identity elements"""
    e = g.identity
    return {
        (a, b): triple_label(g, mask_of((e, a, b)))
        for a in range(g.order) for b in range(g.order)
        if a != b and e not in (a, b)
    }


def _element_labels(g: GroupTable) -> Dict[int, OrbitLabel]:
    """f_a for every non-identity element"""
    return {a: difference_label(g, mask_of((g.identity, a))) for a in range(g.order) if a != g.identity}


def _verify_families(ctx: CheckContext, g: GroupTable, d: int) -> Failure:
    """
    Every reported family passes a pair-by-pair exchange scan and satisfies
    the rule-seeded clause set, forced orbits included.
    """
    orbits = orbit_partition(g, d)
    where = label_index(orbits)
    seeded = build_clauses(g, d, orbits, theorem_rules=True)
    for family in ctx.classify(g, d).families:
        chosen = [where[label] for label in family.orbit_labels]
        witness = next(exchange_failures(union_of_orbits(g, orbits, chosen)), None)
        if witness is not None:
            return {"group": g.name, "family": _labels(family.orbit_labels), "witness": witness.to_dict()}
        if not all_hold(seeded, chosen):
            broken = sorted({c.source for c in seeded if not c.holds(frozenset(chosen))})
            return {"group": g.name, "family": _labels(family.orbit_labels), "violated": broken}
    return None


# ---- dimension 2 -------------------------------------------------------------

def check_thm_main(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim2_groups()
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("thm-main", scope)
    for g in groups:
        failure = _verify_families(ctx, g, 2)
        if failure:
            return _outcome("thm-main", scope, failure, f"{g.name}: reported family fails exchange or a seeded clause")
        expected: Dict[FrozenSet[OrbitLabel], List[str]] = {}
        subgroups = proper_subgroups(g)
        for h in subgroups:
            expected.setdefault(frozenset(subgroup_complement_labels(g, h, 2)), []).append(subgroup_name(g, h))
        found = set(ctx.families(g, 2))
        if found != set(expected):
            return _outcome("thm-main", scope, {
                "group": g.name,
                "unexpected": [_labels(f) for f in sorted(found - set(expected), key=sorted)],
                "missing": [_labels(f) for f in sorted(set(expected) - found, key=sorted)],
            }, f"{g.name}: families differ from the subgroup complements")
        shared = [names for names in expected.values() if len(names) > 1]
        if shared:
            return _outcome("thm-main", scope, {"group": g.name, "subgroups": shared[0]},
                            f"{g.name}: distinct subgroups give the same family")
    return _outcome("thm-main", scope, None, f"{len(groups)} groups: families match proper subgroups one to one")


def check_cor_conj(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.cyclic_dim2_groups()
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("cor-conj", scope)
    for g in groups:
        families = ctx.classify(g, 2).families
        only_uniform = len(families) == 1 and families[0].uniform
        if only_uniform != _is_prime(g.order):
            return _outcome("cor-conj", scope, {
                "group": g.name,
                "prime": _is_prime(g.order),
                "families": [_labels(f.orbit_labels) for f in families],
            }, f"{g.name}: primality and uniqueness of the uniform family disagree")
    return _outcome("cor-conj", scope, None, f"{len(groups)} cyclic groups")


def check_prop_orbit_inverse(ctx: CheckContext) -> TheoremCheck:
    groups = [g for g in ctx.catalog if g.order >= 2]
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("prop-orbit-1", scope)
    for g in groups:
        e = g.identity
        for a in range(g.order):
            if a == e:
                continue
            if orbit_members(g, (e, a)) != orbit_members(g, (e, g.inv[a])):
                return _outcome("prop-orbit-1", scope, {"group": g.name, "element": g.display(a)},
                                f"{g.name}: f_a and f_(a^-1) differ")
    return _outcome("prop-orbit-1", scope, None, f"{len(groups)} groups, every element")


def check_prop_orbit_product(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim2_groups()
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("prop-orbitgh", scope)
    for g in groups:
        labels = _element_labels(g)
        e = g.identity
        for family in ctx.families(g, 2):
            for a in labels:
                for b in labels:
                    c = g.mul[a][b]
                    if c == e or labels[c] not in family:
                        continue
                    if labels[a] not in family and labels[b] not in family:
                        return _outcome("prop-orbitgh", scope, {
                            "group": g.name, "family": _labels(family), "g": g.display(a), "h": g.display(b),
                        }, f"{g.name}: f_gh in a family without f_g or f_h")
        failure = _uncertified(g, 2, product_rules(g))
        if failure:
            return _outcome("prop-orbitgh", scope, failure, f"{g.name}: rule witness does not replay")
    return _outcome("prop-orbitgh", scope, None, f"{len(groups)} groups")


def check_prop_power(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.cyclic_dim2_groups()
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("prop-fni", scope)
    for g in groups:
        labels = _element_labels(g)
        for family in ctx.families(g, 2):
            for a, label in labels.items():
                for m in range(2, g.element_order(a)):
                    if labels[g.power(a, m)] in family and label not in family:
                        return _outcome("prop-fni", scope, {
                            "group": g.name, "family": _labels(family), "i": g.display(a), "m": m,
                        }, f"{g.name}: f_mi in a family without f_i")
        failure = _uncertified(g, 2, power_chain_rules(g))
        if failure:
            return _outcome("prop-fni", scope, failure, f"{g.name}: chain witness does not replay")
    return _outcome("prop-fni", scope, None, f"{len(groups)} cyclic groups")


def check_cor_units(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.cyclic_dim2_groups()
    scope = _group_scope(groups, 2)
    if not groups:
        return _skip("cor-un", scope)
    for g in groups:
        labels = _element_labels(g)
        generators = {labels[a] for a in labels if g.element_order(a) == g.order}
        for family in ctx.families(g, 2):
            if not generators <= family:
                return _outcome("cor-un", scope, {
                    "group": g.name, "family": _labels(family), "missing": _labels(generators - family),
                }, f"{g.name}: family without every generator orbit")
    return _outcome("cor-un", scope, None, f"{len(groups)} cyclic groups")


# ---- dimension 3 -------------------------------------------------------------

def check_prop_dim3_orbit(ctx: CheckContext) -> TheoremCheck:
    groups = [g for g in ctx.catalog if g.order >= 3]
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("prop-dim3orbit", scope)
    for g in groups:
        e = g.identity
        for a in range(g.order):
            for b in range(g.order):
                if a == b or e in (a, b):
                    continue
                members = orbit_members(g, (e, a, b))
                ai, bi = g.inv[a], g.inv[b]
                for other in ((e, ai, g.mul[ai][b]), (e, bi, g.mul[bi][a])):
                    if orbit_members(g, other) != members:
                        return _outcome("prop-dim3orbit", scope, {
                            "group": g.name, "g": g.display(a), "h": g.display(b),
                            "other": [g.display(x) for x in other[1:]],
                        }, f"{g.name}: orbit identity fails")
    return _outcome("prop-dim3orbit", scope, None, f"{len(groups)} groups, every pair")


def check_prop_dim3_exchange(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim3_groups()
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("prop-dim3exchange", scope)
    for g in groups:
        pairs = _pair_labels(g)
        e = g.identity
        for family in ctx.families(g, 3):
            inside = [pair for pair, label in pairs.items() if label in family]
            for s, h in inside:
                for s2, h2 in inside:
                    conclusions = [pairs[(s, y)] for y in (s2, h2) if y not in (e, s)]
                    if not any(label in family for label in conclusions):
                        return _outcome("prop-dim3exchange", scope, {
                            "group": g.name, "family": _labels(family),
                            "premises": [[g.display(s), g.display(h)], [g.display(s2), g.display(h2)]],
                        }, f"{g.name}: exchange implication fails")
        failure = _uncertified(g, 3, pair_exchange_rules(g))
        if failure:
            return _outcome("prop-dim3exchange", scope, failure, f"{g.name}: rule witness does not replay")
    return _outcome("prop-dim3exchange", scope, None, f"{len(groups)} groups")


def check_cor_sum_difference(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim3_groups()
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("cor-dim3sumdiff", scope)
    for g in groups:
        pairs = _pair_labels(g)
        e = g.identity
        for family in ctx.families(g, 3):
            for s in range(g.order):
                if s == e:
                    continue
                si = g.inv[s]
                for h in range(g.order):
                    sh = g.mul[s][h]
                    if sh in (e, s) or pairs[(s, sh)] not in family:
                        continue
                    conclusions = []
                    if si != s:
                        conclusions.append(pairs[(s, si)])
                    if h not in (e, s):
                        conclusions.append(pairs[(s, h)])
                    if not any(label in family for label in conclusions):
                        return _outcome("cor-dim3sumdiff", scope, {
                            "group": g.name, "family": _labels(family), "g": g.display(s), "h": g.display(h),
                        }, f"{g.name}: sum-difference implication fails")
        failure = _uncertified(g, 3, sum_difference_rules(g))
        if failure:
            return _outcome("cor-dim3sumdiff", scope, failure, f"{g.name}: rule witness does not replay")
    return _outcome("cor-dim3sumdiff", scope, None, f"{len(groups)} groups")


def check_prop_square(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim3_groups()
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("prop-gg2", scope)
    for g in groups:
        pairs = _pair_labels(g)
        for family in ctx.families(g, 3):
            for s in range(g.order):
                o = g.element_order(s)
                if o < 3:
                    continue
                target = pairs[(s, g.mul[s][s])]
                for k in range(2, o):
                    if pairs[(s, g.power(s, k))] in family and target not in family:
                        return _outcome("prop-gg2", scope, {
                            "group": g.name, "family": _labels(family), "g": g.display(s), "k": k,
                        }, f"{g.name}: f_(g,g^k) in a family without f_(g,g^2)")
        failure = _uncertified(g, 3, square_chain_rules(g))
        if failure:
            return _outcome("prop-gg2", scope, failure, f"{g.name}: chain witness does not replay")
    return _outcome("prop-gg2", scope, None, f"{len(groups)} groups")


def check_lem_smallest_index(ctx: CheckContext) -> TheoremCheck:
    high = ctx.scope.lemma_max
    scope = {"n": [3, high], "dims": [3]}
    for n in range(3, high + 1):
        orbits = orbit_partition(build_cyclic(n), 3)
        for u in units(n):
            for orbit in orbits:
                s = smallest_index(n, u, orbit.members)
                if 3 * s > n:
                    return _outcome("lem-smallestindex", scope, {
                        "n": n, "u": u, "orbit": list(orbit.label), "smallest": s,
                    }, f"Z_{n}: no index s with 3s <= n")
    return _outcome("lem-smallestindex", scope, None, f"every orbit and unit of Z_n, 3 <= n <= {high}")


def check_lem_half_order(ctx: CheckContext) -> TheoremCheck:
    groups = [g for g in ctx.cyclic_dim3_groups() if g.order % 2 == 0 and g.order // 2 > 2]
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("lem-dim3n2", scope)
    for g in groups:
        n, k = g.order, g.order // 2
        powers = cyclic_powers(g)
        for u in units(n):
            low = triple_label(g, mask_of((powers[0], powers[u], powers[(k * u) % n])))
            high = triple_label(g, mask_of((powers[0], powers[u], powers[((k + 1) * u) % n])))
            for family in ctx.families(g, 3):
                if (low in family) != (high in family):
                    return _outcome("lem-dim3n2", scope, {
                        "group": g.name, "family": _labels(family), "u": u,
                    }, f"{g.name}: f_(u,ku) and f_(u,(k+1)u) not paired")
        failure = _uncertified(g, 3, half_order_rules(g))
        if failure:
            return _outcome("lem-dim3n2", scope, failure, f"{g.name}: rule witness does not replay")
    return _outcome("lem-dim3n2", scope, None, f"{len(groups)} cyclic groups of even order")


def check_thm_dim3_subgroups(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.dim3_groups()
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("thm-dim3subgroups", scope)
    checked = 0
    for g in groups:
        failure = _verify_families(ctx, g, 3)
        if failure:
            return _outcome("thm-dim3subgroups", scope, failure, f"{g.name}: reported family fails exchange or a seeded clause")
        found = set(ctx.families(g, 3))
        for h in enumerate_subgroups(g):
            if index(g, h) <= 2:
                continue
            checked += 1
            labels = frozenset(subgroup_complement_labels(g, h, 3))
            verdict = is_basis_family(subgroup_complement_family(g, h, 3))
            if not labels or labels not in found or not verdict:
                return _outcome("thm-dim3subgroups", scope, {
                    "group": g.name,
                    "subgroup": subgroup_name(g, h),
                    "family": _labels(labels),
                    "witness": verdict.witness.to_dict() if verdict.witness else None,
                }, f"{g.name}: f_(G-H) missing or not matroidal")
    return _outcome("thm-dim3subgroups", scope, None, f"{checked} subgroups of index > 2")


def check_thm_mandatory(ctx: CheckContext) -> TheoremCheck:
    groups = ctx.cyclic_dim3_groups()
    scope = _group_scope(groups, 3)
    if not groups:
        return _skip("thm-3d", scope)
    for g in groups:
        required = set(mandatory_orbits(g))
        families = ctx.families(g, 3)
        for family in families:
            if not required <= family:
                return _outcome("thm-3d", scope, {
                    "group": g.name, "family": _labels(family), "missing": _labels(required - family),
                }, f"{g.name}: family without every f_(u,2u)")
        seeded = ctx.classify(g, 3, theorem_rules=True).family_sets()
        if seeded != families:
            return _outcome("thm-3d", scope, {
                "group": g.name,
                "with_rules": [_labels(f) for f in seeded],
                "without_rules": [_labels(f) for f in families],
            }, f"{g.name}: rule-seeded search disagrees with the plain search")
    return _outcome("thm-3d", scope, None, f"{len(groups)} cyclic groups")


def check_thm_codim_one(ctx: CheckContext) -> TheoremCheck:
    low, high = ctx.scope.cyclic_range
    scope = {"n": [low, high], "k": "3..n-2", "dims": [3]}
    cases = 0
    for n in ctx.scope.cyclic_orders():
        g = build_cyclic(n)
        orbits = orbit_partition(g, 3)
        where = label_index(orbits)
        for result in codim_one_families_cyclic(n):
            cases += 1
            if not result.agrees:
                return _outcome("thm-3d2", scope, result.to_dict(),
                                f"Z_{n}, u={result.u}, k={result.k}: kernel disagrees with prediction")
            if result.verdict:
                continue
            family = union_of_orbits(g, orbits, [i for i in range(len(orbits)) if i != where[result.label]])
            if result.witness is None or not witness_is_valid(family, ExchangeWitness.from_dict(result.witness)):
                return _outcome("thm-3d2", scope, result.to_dict(),
                                f"Z_{n}, u={result.u}, k={result.k}: witness does not replay")
    return _outcome("thm-3d2", scope, None, f"{cases} (n, u, k) cases")


# ---- examples ----------------------------------------------------------------

def _check_example(ctx: CheckContext, example: GoldenExample) -> TheoremCheck:
    g = parse_group_spec(example.group_spec)
    scope = {"groups": [g.name], "dims": [example.dim]}
    report = ctx.classify(g, example.dim)
    expected = [resolve_family(g, family) for family in example.families]
    found = report.family_sets()
    if set(found) != set(expected) or len(found) != len(expected):
        return _outcome(example.check_id, scope, {
            "group": g.name,
            "found": [_labels(f) for f in found],
            "expected": [_labels(f) for f in expected],
        }, f"{g.name}: classification differs from the worked example")
    entries = {frozenset(entry.orbit_labels): entry for entry in report.families}
    for family, labels in zip(example.families, expected):
        names = set(entries[labels].subgroup_complements)
        if names != ({family.subgroup} if family.subgroup else set()):
            return _outcome(example.check_id, scope, {
                "group": g.name, "family": _labels(labels), "subgroups": sorted(names),
            }, f"{family.display}: subgroup annotation differs")
    if example.rules:
        rules = {rule.key(): rule for rule in implication_rules(g, example.dim)}
        for golden in example.rules:
            key = resolve_rule(g, golden)
            rule = rules.get(key)
            if rule is None or not rule_is_certified(g, example.dim, rule):
                return _outcome(example.check_id, scope, {
                    "group": g.name, "premises": _labels(key[0]), "conclusions": _labels(key[1]),
                }, f"{g.name}: worked-example rule missing or uncertified")
    return _outcome(example.check_id, scope, None, f"{len(found)} families")


def _dihedral_prime_families(g: GroupTable, p: int) -> List[FrozenSet[OrbitLabel]]:
    labels = _element_labels(g)
    # index p + i is the reflection σρ^i
    reflections = [labels[p + i] for i in range(p)]
    everything = frozenset(labels.values())
    families = [frozenset(reflections), everything]
    families.extend(everything - {r} for r in reflections)
    return families


def check_ex_dihedral_prime(ctx: CheckContext) -> TheoremCheck:
    primes = (3, 5)
    scope = {"groups": [f"D:{p}" for p in primes], "dims": [2]}
    for p in primes:
        g = build_dihedral(p)
        expected = _dihedral_prime_families(g, p)
        found = ctx.families(g, 2)
        if len(found) != p + 2 or set(found) != set(expected):
            return _outcome("ex-Dp", scope, {
                "group": g.name,
                "found": [_labels(f) for f in found],
                "expected": [_labels(f) for f in expected],
            }, f"{g.name}: expected {p + 2} families")
    return _outcome("ex-Dp", scope, None, "D_3 and D_5")


def check_ex_cyclic_census(ctx: CheckContext) -> TheoremCheck:
    high = ctx.scope.dim2_max_order
    scope = {"n": [3, high], "dims": [2]}
    for n in range(3, high + 1):
        orbits = orbit_partition(build_cyclic(n), 2)
        found = [(o.label, o.size) for o in orbits]
        expected = [((i,), n // 2 if 2 * i == n else n) for i in range(1, n // 2 + 1)]
        if found != expected:
            return _outcome("ex-Zn", scope, {
                "n": n,
                "found": [[list(label), size] for label, size in found],
                "expected": [[list(label), size] for label, size in expected],
            }, f"Z_{n}: orbit census differs")
    return _outcome("ex-Zn", scope, None, f"Z_n, 3 <= n <= {high}")


def check_ex_dihedral_census(ctx: CheckContext) -> TheoremCheck:
    orders = range(3, 7)
    scope = {"groups": [f"D:{n}" for n in orders], "dims": [2]}
    for n in orders:
        g = build_dihedral(n)
        labels = _element_labels(g)
        expected = {}
        for i in range(1, n // 2 + 1):
            expected[labels[i]] = n if 2 * i == n else 2 * n
        for i in range(n):
            expected[labels[n + i]] = n
        found = {o.label: o.size for o in orbit_partition(g, 2)}
        if found != expected:
            return _outcome("ex-Dn", scope, {
                "group": g.name,
                "found": [[list(label), size] for label, size in sorted(found.items())],
                "expected": [[list(label), size] for label, size in sorted(expected.items())],
            }, f"{g.name}: orbit census differs")
    return _outcome("ex-Dn", scope, None, "D_3 to D_6")


def check_rem_z13(ctx: CheckContext) -> TheoremCheck:
    scope = {"groups": ["Z:5", "Z:7", "Z:11", "Z:13"], "dims": [3]}
    for n in (5, 7, 11):
        g = build_cyclic(n)
        for family in ctx.classify(g, 3).families:
            if len(family.excluded_labels) >= 2:
                return _outcome("rem-Z13", scope, {
                    "group": g.name, "family": _labels(family.orbit_labels),
                }, f"{g.name}: family excludes more than one orbit")
    report = ctx.classify(build_cyclic(13), 3)
    wide = [f for f in report.families if len(f.excluded_labels) >= 2]
    if not wide:
        return _outcome("rem-Z13", scope, {
            "group": report.group, "families": [_labels(f.orbit_labels) for f in report.families],
        }, "Z:13: no family excludes two or more orbits")
    return _outcome("rem-Z13", scope, None, f"Z:13: {len(wide)} families exclude two or more orbits")


def _example_check(check_id: str) -> Callable[[CheckContext], TheoremCheck]:
    def run(ctx: CheckContext) -> TheoremCheck:
        return _check_example(ctx, EXAMPLES[check_id])
    return run


STATEMENTS: Dict[str, str] = {
    "thm-main": "Dimension-2 subrepresentations are exactly f_(G-H) for proper subgroups H, one per subgroup",
    "cor-conj": "For Z_n, n is prime iff the only dimension-2 subrepresentation is uniform",
    "prop-orbit-1": "f_g = f_(g^-1)",
    "prop-orbitgh": "f_gh in B implies f_g or f_h in B",
    "prop-fni": "For Z_n, f_mi in B implies f_i in B",
    "cor-un": "Every dimension-2 subrepresentation of B[Z_n] contains f_u for every unit u",
    "prop-dim3orbit": "f_(g,h) = f_(g^-1,g^-1 h) = f_(h^-1,h^-1 g)",
    "prop-dim3exchange": "f_(g,h) and f_(g',h') in B imply f_(g,g') or f_(g,h') in B",
    "cor-dim3sumdiff": "f_(g,gh) in B implies f_(g,g^-1) or f_(g,h) in B",
    "prop-gg2": "f_(g,g^k) in B implies f_(g,g^2) in B",
    "lem-smallestindex": "Every dimension-3 orbit of Z_n has an index s = k with f_(ku,lu) equal to it and 3s <= n",
    "lem-dim3n2": "For n = 2k, k > 2: f_(u,ku) in B iff f_(u,(k+1)u) in B",
    "thm-dim3subgroups": "f_(G-H) is a dimension-3 subrepresentation whenever [G:H] > 2",
    "thm-3d": "Every dimension-3 subrepresentation of B[Z_n] contains f_(u,2u) for every unit u",
    "thm-3d2": "C([n],3) - f_(u,ku) is matroidal iff k is not -1, 2, (n+1)/2 (n odd) or n/2, n/2+1 (n even)",
    "ex-Z6": "B[Z_6] in dimension 3 has exactly the three listed matroidal unions",
    "ex-Z7": "B[Z_7] in dimension 3 has exactly the three listed matroidal unions",
    "ex-S3": "B[S_3] in dimension 3 has exactly the five listed matroidal unions",
    "ex-Q8": "B[Q_8] in dimension 2 has exactly the five subgroup-complement unions",
    "ex-D4": "B[D_4] in dimension 2 has exactly the nine subgroup-complement unions",
    "ex-Dp": "B[D_p], p prime, has p + 2 dimension-2 subrepresentations",
    "ex-Zn": "Z_n has dimension-2 orbits f_1..f_(n/2), f_(n/2) of size n/2 for even n",
    "ex-Dn": "D_n has dimension-2 rotation orbits of size 2n (n for rho^(n/2)) and n reflection orbits of size n",
    "rem-Z13": "Z_13 is the first prime order with a family excluding two or more dimension-3 orbits",
}

REGISTRY: Dict[str, Callable[[CheckContext], TheoremCheck]] = {
    "thm-main": check_thm_main,
    "cor-conj": check_cor_conj,
    "prop-orbit-1": check_prop_orbit_inverse,
    "prop-orbitgh": check_prop_orbit_product,
    "prop-fni": check_prop_power,
    "cor-un": check_cor_units,
    "prop-dim3orbit": check_prop_dim3_orbit,
    "prop-dim3exchange": check_prop_dim3_exchange,
    "cor-dim3sumdiff": check_cor_sum_difference,
    "prop-gg2": check_prop_square,
    "lem-smallestindex": check_lem_smallest_index,
    "lem-dim3n2": check_lem_half_order,
    "thm-dim3subgroups": check_thm_dim3_subgroups,
    "thm-3d": check_thm_mandatory,
    "thm-3d2": check_thm_codim_one,
    "ex-Z6": _example_check("ex-Z6"),
    "ex-Z7": _example_check("ex-Z7"),
    "ex-S3": _example_check("ex-S3"),
    "ex-Q8": _example_check("ex-Q8"),
    "ex-D4": _example_check("ex-D4"),
    "ex-Dp": check_ex_dihedral_prime,
    "ex-Zn": check_ex_cyclic_census,
    "ex-Dn": check_ex_dihedral_census,
    "rem-Z13": check_rem_z13,
}


def check_ids() -> List[str]:
    return list(REGISTRY)


def _run(check_id: str, ctx: CheckContext) -> TheoremCheck:
    if check_id not in REGISTRY:
        raise UnknownCheckId(f"Unknown check id {check_id!r}; known ids: {', '.join(REGISTRY)}")
    result = REGISTRY[check_id](ctx)
    LOGGER.info("%s: %s %s", check_id, result.status, result.detail)
    return result


def run_check(check_id: str, catalog: Optional[Sequence[GroupTable]] = None,
              scope: Optional[CheckScope] = None, parallel: bool = False,
              workers: Optional[int] = None) -> TheoremCheck:
    """
    Run one check over a catalog (the default catalog when None).

    Raises:
        UnknownCheckId: check_id is not registered
    """
    if check_id not in REGISTRY:
        raise UnknownCheckId(f"Unknown check id {check_id!r}; known ids: {', '.join(REGISTRY)}")
    ctx = CheckContext(default_catalog() if catalog is None else catalog, scope, parallel, workers)
    return _run(check_id, ctx)


def run_all(catalog: Optional[Sequence[GroupTable]] = None, scope: Optional[CheckScope] = None,
            ids: Optional[Sequence[str]] = None, parallel: bool = False,
            workers: Optional[int] = None) -> List[TheoremCheck]:
    """
    Selected checks (all by default) in registry order, sharing one
    classification cache. parallel and workers go to every search; results
    do not depend on them.
    """
    selected = list(REGISTRY) if ids is None else list(ids)
    for check_id in selected:
        if check_id not in REGISTRY:
            raise UnknownCheckId(f"Unknown check id {check_id!r}; known ids: {', '.join(REGISTRY)}")
    ctx = CheckContext(default_catalog() if catalog is None else catalog, scope, parallel, workers)
    ordered = [check_id for check_id in REGISTRY if check_id in selected]
    return [_run(check_id, ctx) for check_id in ordered]


def all_passed(checks: Iterable[TheoremCheck]) -> bool:
    return all(check.ok for check in checks)


def checks_document(checks: Sequence[TheoremCheck], scope: Optional[CheckScope] = None) -> dict:
    return {
        "passed": all_passed(checks),
        "scope": (scope or CheckScope()).to_dict(),
        "checks": [check.to_dict() for check in checks],
    }


def render_checks_text(checks: Sequence[TheoremCheck]) -> str:
    lines = [f"{check.status.upper():<5} {check.id:<18} {check.detail}" for check in checks]
    failed = sum(1 for check in checks if not check.ok)
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"
