"""
Implication rules between orbits, each certified by basis-exchange instances.

A rule "P => C" reads: a matroidal orbit union containing every premise orbit
contains at least one conclusion orbit. A single exchange instance (A, B, x)
gives the rule {orbit(A), orbit(B)} => {orbit(A - x + y) : y in B - A}.
Derived rules carry the chain of instances they were obtained from.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

from groups.subgroups import cyclic_generator
from models.errors import WrongCardinality
from models.group import GroupTable
from models.orbit import OrbitLabel, mask_of, members_of, popcount
from models.search import ExchangeInstance, ImplicationRule
from orbits.engine import orbit_label
from search.clauses import EXCHANGE

LOGGER = logging.getLogger(__name__)

PRODUCT = "prop-orbitgh"
POWER_CHAIN = "prop-fni"
PAIR_EXCHANGE = "prop-dim3exchange"
SUM_DIFFERENCE = "cor-dim3sumdiff"
SQUARE_CHAIN = "prop-gg2"
HALF_ORDER = "lem-dim3n2"


def is_exchange_instance(d: int, a: int, b: int, x: int) -> bool:
    """a, b are distinct d-subsets and x lies in a - b"""
    return popcount(a) == d and popcount(b) == d and a != b and bool(a >> x & 1) and not b >> x & 1


def exchange_conclusions(g: GroupTable, d: int, a: int, b: int, x: int) -> Tuple[OrbitLabel, ...]:
    """Sorted distinct labels of a - x + y over y in b - a"""
    base = a ^ (1 << x)
    return tuple(sorted({orbit_label(g, base | (1 << y), d) for y in members_of(b & ~a)}))


def exchange_rule(g: GroupTable, d: int, a: int, b: int, x: int, source: str = EXCHANGE) -> Optional[ImplicationRule]:
    """
    The rule read off one exchange instance, or None when a conclusion is
    already a premise.

    Raises:
        WrongCardinality: a or b is not a d-subset
        ValueError: x is not in a - b or a == b
    """
    if popcount(a) != d or popcount(b) != d:
        raise WrongCardinality(f"Exchange instance needs two {d}-subsets, got {list(members_of(a))}, {list(members_of(b))}")
    if not is_exchange_instance(d, a, b, x):
        raise ValueError(f"{x} is not in {list(members_of(a))} - {list(members_of(b))}")
    premises = tuple(sorted({orbit_label(g, a, d), orbit_label(g, b, d)}))
    conclusions = exchange_conclusions(g, d, a, b, x)
    if set(conclusions) & set(premises):
        return None
    return ImplicationRule(premises, conclusions, source, (ExchangeInstance(a, b, x),))


def rule_is_certified(g: GroupTable, d: int, rule: ImplicationRule) -> bool:
    """
    Replay a rule's witnesses.

    Every step's bases must lie in the orbits assumed so far. The labels a
    step derives, minus the rule's conclusions, must be empty on the last step
    and a single label (assumed from then on) on every earlier step.
    """
    if not rule.witnesses or not rule.conclusions:
        return False
    assumed = set(rule.premises)
    targets = set(rule.conclusions)
    last = len(rule.witnesses) - 1
    for step, w in enumerate(rule.witnesses):
        if not is_exchange_instance(d, w.a, w.b, w.x):
            return False
        if orbit_label(g, w.a, d) not in assumed or orbit_label(g, w.b, d) not in assumed:
            return False
        leftover = set(exchange_conclusions(g, d, w.a, w.b, w.x)) - targets
        if not leftover:
            return step == last
        if len(leftover) > 1:
            return False
        assumed = leftover
    return False


def deduplicate(rules: Iterable[ImplicationRule]) -> List[ImplicationRule]:
    """First rule per (premises, conclusions), in first-seen order"""
    kept: Dict[Tuple, ImplicationRule] = {}
    for rule in rules:
        kept.setdefault(rule.key(), rule)
    return list(kept.values())


def _chain_rule(premise: OrbitLabel, target: OrbitLabel, steps: List[ExchangeInstance], source: str) -> Optional[ImplicationRule]:
    if premise == target or not steps:
        return None
    return ImplicationRule((premise,), (target,), source, tuple(steps))


def product_rules(g: GroupTable) -> List[ImplicationRule]:
    """f_{ab} forces f_a or f_b, from A = {e, ab}, B = {a^-1, b}, x = ab"""
    e = g.identity
    rules = []
    for a in range(g.order):
        for b in range(g.order):
            c = g.mul[a][b]
            if e in (a, b, c) or c in (a, g.inv[a], b, g.inv[b]):
                continue
            rule = exchange_rule(g, 2, mask_of((e, c)), mask_of((g.inv[a], b)), c, PRODUCT)
            if rule is not None:
                rules.append(rule)
    return rules


def cyclic_powers(g: GroupTable) -> Optional[List[int]]:
    """powers[t] = a^t for the smallest-index generator a, or None"""
    generator = cyclic_generator(g)
    if generator is None:
        return None
    powers = [g.identity]
    for _ in range(g.order - 1):
        powers.append(g.mul[powers[-1]][generator])
    return powers


def power_chain_rules(g: GroupTable) -> List[ImplicationRule]:
    """
    f_{a^m} forces f_a for every a and 2 <= m <= ord(a)/2, chained through
    f_{a^j} => f_a or f_{a^(j-1)} for j = m..2.
    """
    e = g.identity
    rules = []
    for a in range(g.order):
        if a == e:
            continue
        o = g.element_order(a)
        target = orbit_label(g, mask_of((e, a)), 2)
        for m in range(2, o // 2 + 1):
            steps = []
            for j in range(m, 1, -1):
                aj, aj1 = g.power(a, j), g.power(a, j - 1)
                steps.append(ExchangeInstance(mask_of((e, aj)), mask_of((g.inv[a], aj1)), aj))
                if orbit_label(g, mask_of((e, aj1)), 2) == target:
                    break
            premise = orbit_label(g, mask_of((e, g.power(a, m))), 2)
            rule = _chain_rule(premise, target, steps, POWER_CHAIN)
            if rule is not None:
                rules.append(rule)
    return rules


def dim2_implication_rules(g: GroupTable) -> List[ImplicationRule]:
    """Product rules for any group, plus the power chains when g is cyclic"""
    rules = product_rules(g)
    if cyclic_generator(g) is not None:
        rules.extend(power_chain_rules(g))
    rules = deduplicate(rules)
    LOGGER.debug("%s: %d dimension-2 rules", g.name, len(rules))
    return rules


def pair_exchange_rules(g: GroupTable) -> List[ImplicationRule]:
    """f_{g,h} and f_{g',h'} force f_{g,g'} or f_{g,h'}, from {e,g,h}, {e,g',h'}, x = h"""
    e = g.identity
    others = [a for a in range(g.order) if a != e]
    pairs = [(p, q) for p in others for q in others if p < q]
    rules = []
    for s in others:
        for h in others:
            if h == s:
                continue
            a = mask_of((e, s, h))
            for p, q in pairs:
                if h in (p, q):
                    continue
                rule = exchange_rule(g, 3, a, mask_of((e, p, q)), h, PAIR_EXCHANGE)
                if rule is not None:
                    rules.append(rule)
    return rules


def sum_difference_rules(g: GroupTable) -> List[ImplicationRule]:
    """f_{g,gh} forces f_{g,g^-1} or f_{g,h}, from {e,g,gh}, {e,g^-1,h}, x = gh"""
    e = g.identity
    rules = []
    for s in range(g.order):
        for h in range(g.order):
            sh = g.mul[s][h]
            a, b = mask_of((e, s, sh)), mask_of((e, g.inv[s], h))
            if not is_exchange_instance(3, a, b, sh):
                continue
            rule = exchange_rule(g, 3, a, b, sh, SUM_DIFFERENCE)
            if rule is not None:
                rules.append(rule)
    return rules


def square_chain_rules(g: GroupTable) -> List[ImplicationRule]:
    """
    f_{g,g^k} forces f_{g,g^2} for 3 <= k <= ord(g) - 2, chained through the
    sum-difference instances with h = g^(j-1), j = k..3.
    """
    e = g.identity
    rules = []
    for s in range(g.order):
        if s == e:
            continue
        o = g.element_order(s)
        if o < 5:
            continue
        target = orbit_label(g, mask_of((e, s, g.mul[s][s])), 3)
        for k in range(3, o - 1):
            steps = []
            for j in range(k, 2, -1):
                sj, sj1 = g.power(s, j), g.power(s, j - 1)
                steps.append(ExchangeInstance(mask_of((e, s, sj)), mask_of((e, g.inv[s], sj1)), sj))
                if orbit_label(g, mask_of((e, s, sj1)), 3) == target:
                    break
            premise = orbit_label(g, mask_of((e, s, g.power(s, k))), 3)
            rule = _chain_rule(premise, target, steps, SQUARE_CHAIN)
            if rule is not None:
                rules.append(rule)
    return rules


def half_order_rules(g: GroupTable) -> List[ImplicationRule]:
    """
    Cyclic groups of order 2k, k > 2: f_{u,ku} and f_{u,(k+1)u} force each
    other. Forward from {0,u,ku}, {0,-u,(k-1)u}, x = u; backward with -u.
    """
    powers = cyclic_powers(g)
    n = g.order
    if powers is None or n % 2 or n // 2 <= 2:
        return []
    k = n // 2
    rules = []
    for u in range(1, n):
        if powers[u] == g.identity or g.element_order(powers[u]) != n:
            continue
        for sign in (1, -1):
            v = (sign * u) % n
            a = mask_of((powers[0], powers[v], powers[(k * v) % n]))
            b = mask_of((powers[0], powers[(-v) % n], powers[((k - 1) * v) % n]))
            rule = exchange_rule(g, 3, a, b, powers[v], HALF_ORDER)
            if rule is not None:
                rules.append(rule)
    return rules


def dim3_implication_rules(g: GroupTable) -> List[ImplicationRule]:
    rules = pair_exchange_rules(g) + sum_difference_rules(g) + square_chain_rules(g) + half_order_rules(g)
    rules = deduplicate(rules)
    LOGGER.debug("%s: %d dimension-3 rules", g.name, len(rules))
    return rules


def implication_rules(g: GroupTable, d: int) -> List[ImplicationRule]:
    """Rules for dimensions 2 and 3; none otherwise"""
    if d == 2:
        return dim2_implication_rules(g)
    if d == 3:
        return dim3_implication_rules(g)
    return []
