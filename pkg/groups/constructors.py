"""
Constructors for the built-in group families and for groups given by a raw
Cayley table.
"""

import logging
from itertools import permutations
from typing import List, Optional, Sequence

import numpy as np

from models.errors import GroupValidationError, OrderCapExceeded
from models.group import GroupTable, find_identity, find_inverses, validate_table
from storage.settings import get_group_order_cap

LOGGER = logging.getLogger(__name__)

MAX_SYMMETRIC_DEGREE = 6

# Quaternion units 1, i, j, k as (sign, unit) products: _QUATERNION_UNITS[a][b] = (sign, unit)
_QUATERNION_UNITS = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)
QUATERNION_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def _check_order(order: int, what: str, cap: Optional[int] = None) -> None:
    limit = get_group_order_cap() if cap is None else cap
    if order > limit:
        raise OrderCapExceeded(f"{what} would have order {order}, above the cap of {limit}")


def _from_table(mul: Sequence[Sequence[int]], names: Sequence[str], name: str) -> GroupTable:
    table = validate_table(mul)
    identity = find_identity(table)
    return GroupTable(
        mul=mul,
        inv=find_inverses(table, identity),
        identity=identity,
        element_names=names,
        name=name,
    )


def build_cyclic(n: int) -> GroupTable:
    """Z_n with mul[a][b] = (a + b) mod n, identity 0, residues as names"""
    if n < 1:
        raise GroupValidationError(f"Cyclic group order must be positive, got {n}")
    _check_order(n, f"Z_{n}")
    residues = np.arange(n)
    mul = (residues[:, None] + residues[None, :]) % n
    return _from_table(mul.tolist(), [str(a) for a in range(n)], f"Z:{n}")


def _rotation_name(i: int) -> str:
    if i == 0:
        return ""
    return "ρ" if i == 1 else f"ρ^{i}"


def build_dihedral(n: int) -> GroupTable:
    """
    D_n = <ρ, σ | ρ^n = σ^2 = e, σρσ = ρ^-1> of order 2n.

    Index i < n is ρ^i and index n + i is σρ^i.
    """
    if n < 1:
        raise GroupValidationError(f"Dihedral group parameter must be positive, got {n}")
    _check_order(2 * n, f"D_{n}")
    mul: List[List[int]] = []
    for left in range(2 * n):
        row = []
        for right in range(2 * n):
            a, left_flip = left % n, left >= n
            b, right_flip = right % n, right >= n
            if not left_flip and not right_flip:
                row.append((a + b) % n)
            elif not left_flip:
                # ρ^a σρ^b = σρ^(b-a)
                row.append(n + (b - a) % n)
            elif not right_flip:
                row.append(n + (a + b) % n)
            else:
                # σρ^a σρ^b = ρ^(b-a)
                row.append((b - a) % n)
        mul.append(row)
    names = [_rotation_name(i) or "e" for i in range(n)] + ["σ" + _rotation_name(i) for i in range(n)]
    return _from_table(mul, names, f"D:{n}")


def build_quaternion() -> GroupTable:
    """Q_8 indexed 1, -1, i, -i, j, -j, k, -k"""
    mul = []
    for left in range(8):
        left_unit, left_sign = divmod(left, 2)
        row = []
        for right in range(8):
            right_unit, right_sign = divmod(right, 2)
            sign, unit = _QUATERNION_UNITS[left_unit][right_unit]
            negative = (sign < 0) ^ bool(left_sign) ^ bool(right_sign)
            row.append(2 * unit + int(negative))
        mul.append(row)
    return _from_table(mul, QUATERNION_NAMES, "Q8")


def build_symmetric(n: int) -> GroupTable:
    """
    S_n on the letters 1..n, elements in lexicographic one-line order.

    Composition is (στ)(x) = σ(τ(x)). The symmetric family has its own
    degree limit instead of the order cap, so S_5 and S_6 can be built and
    inspected even though they are too large for orbit work.
    """
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise GroupValidationError(f"Symmetric group degree must be in 1..{MAX_SYMMETRIC_DEGREE}, got {n}")
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    arrays = np.asarray(perms, dtype=np.int32).reshape(len(perms), n)
    mul = []
    for sigma in arrays:
        # row[t] = sigma o tau_t
        composed = sigma[arrays]
        mul.append([index[tuple(int(v) for v in c)] for c in composed])
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return _from_table(mul, names, f"S:{n}")


def build_from_cayley(raw: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None,
                      name: str = "cayley") -> GroupTable:
    """
    Validate a raw table and infer identity and inverses.

    Raises:
        GroupValidationError: table is empty, not square or out of range
        NotLatinSquare / NoIdentity / NotAssociative / NoInverse
        OrderCapExceeded: table is larger than the order cap
    """
    _check_order(len(raw), "Cayley table")
    if names is None:
        names = [str(a) for a in range(len(raw))]
    group = _from_table(raw, names, name)
    LOGGER.info("Loaded %s of order %d from a Cayley table", name, group.order)
    return group


def direct_product(g: GroupTable, h: GroupTable, cap: Optional[int] = None) -> GroupTable:
    """
    Componentwise product; element (a, b) has index a * |h| + b.

    Raises:
        OrderCapExceeded: |g| * |h| is above cap (default: the configured order cap)
    """
    order = g.order * h.order
    _check_order(order, f"{g.name} x {h.name}", cap)
    m = h.order
    # product[(a,b),(c,d)] = (ac)*m + (bd)
    blocks = g.table[:, None, :, None] * m + h.table[None, :, None, :]
    mul = blocks.reshape(order, order)
    names = [f"({x},{y})" for x in g.element_names for y in h.element_names]
    return _from_table(mul.tolist(), names, f"{g.name}x{h.name}")
