"""
Helpers specific to cyclic groups in dimension 3: the orbits f_{u,2u} every
matroidal union must contain, and the all-orbits-but-one families.
"""

import logging
from typing import Dict, List, Optional, Tuple

from groups.constructors import build_cyclic
from groups.subgroups import cyclic_generator, units
from matroid.kernel import is_basis_family
from models.group import GroupTable
from models.orbit import OrbitLabel, mask_of, members_of
from models.search import CodimOneResult
from orbits.engine import label_index, orbit_partition, triple_label, union_of_orbits

LOGGER = logging.getLogger(__name__)

MIN_CYCLIC_ORDER = 4


def unit_elements(g: GroupTable) -> List[int]:
    """Generators of a cyclic group (a^u for units u), in unit order; empty if g is not cyclic"""
    generator = cyclic_generator(g)
    if generator is None:
        return []
    return [g.power(generator, u) for u in units(g.order)]


def mandatory_orbits(g: GroupTable) -> List[OrbitLabel]:
    """Labels of f_{a,a^2} over the generators a of a cyclic group of order >= 4"""
    if g.order < MIN_CYCLIC_ORDER:
        return []
    labels = {triple_label(g, mask_of((g.identity, a, g.mul[a][a]))) for a in unit_elements(g)}
    return sorted(labels)


def mandatory_orbits_dim3_cyclic(n: int) -> List[OrbitLabel]:
    """Labels of f_{u,2u}, u in Z_n^x"""
    if n < MIN_CYCLIC_ORDER:
        raise ValueError(f"Mandatory orbits are defined for n >= {MIN_CYCLIC_ORDER}, got {n}")
    return mandatory_orbits(build_cyclic(n))


def predicted_codim_one(n: int, k: int) -> bool:
    """Whether all orbits but f_{u,ku} should be matroidal (k taken mod n)"""
    k %= n
    excluded = {n - 1, 2}
    if n % 2:
        excluded.add((n + 1) // 2)
    else:
        excluded.update({n // 2, n // 2 + 1})
    return k not in excluded


def codim_range(n: int) -> Tuple[int, int]:
    """Inclusive k range swept by codim_one_families_cyclic"""
    return 3, n - 2


def codim_one_families_cyclic(n: int) -> List[CodimOneResult]:
    """
    For every unit u and k in 3..n-2, test C([n],3) - f_{u,ku} with the kernel
    and pair the verdict with the predicted one.

    Distinct (u, k) often name the same orbit; the kernel runs once per orbit.
    """
    if n < MIN_CYCLIC_ORDER:
        raise ValueError(f"Codimension-one sweep needs n >= {MIN_CYCLIC_ORDER}, got {n}")
    g = build_cyclic(n)
    orbits = orbit_partition(g, 3)
    index = label_index(orbits)
    verdicts: Dict[OrbitLabel, Tuple[bool, Optional[dict]]] = {}
    low, high = codim_range(n)
    results = []
    for u in units(n):
        for k in range(low, high + 1):
            label = triple_label(g, mask_of((0, u, (k * u) % n)))
            if label not in verdicts:
                keep = [i for i in range(len(orbits)) if i != index[label]]
                verdict = is_basis_family(union_of_orbits(g, orbits, keep))
                witness = verdict.witness.to_dict() if verdict.witness else None
                verdicts[label] = (verdict.is_matroid, witness)
            is_matroid, witness = verdicts[label]
            results.append(CodimOneResult(
                n=n, u=u, k=k, label=label,
                predicted=predicted_codim_one(n, k),
                verdict=is_matroid,
                witness=witness,
            ))
    LOGGER.info("Z_%d: %d codimension-one cases over %d orbits", n, len(results), len(verdicts))
    return results


def smallest_index(n: int, u: int, orbit_members) -> int:
    """
    min { k : f_{ku,lu} is the orbit, 0 < k < l < n } for an orbit of Z_n
    given by its members.
    """
    inverse = pow(u, -1, n)
    indices = set()
    for mask in orbit_members:
        if not mask & 1:
            continue
        a, b = (m for m in members_of(mask) if m != 0)
        indices.add(min(a * inverse % n, b * inverse % n))
    return min(indices)
