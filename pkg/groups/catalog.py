"""
Group spec strings and the default catalog.

Spec grammar: "Z:n", "D:n", "S:n", "Q8", products joined by "x"
("Z:2xZ:4"), or "file:<path>" for a Cayley-table file.
"""

import functools
import logging
import re
from typing import List, Sequence

from models.errors import GroupSpecError, GroupValidationError
from models.group import GroupTable

from groups.constructors import (
    build_cyclic,
    build_dihedral,
    build_quaternion,
    build_symmetric,
    direct_product,
)

LOGGER = logging.getLogger(__name__)

FILE_PREFIX = "file:"

_FACTOR = re.compile(r"^([ZDS]):(-?\d+)$")

_BUILDERS = {
    "Z": build_cyclic,
    "D": build_dihedral,
    "S": build_symmetric,
}

DEFAULT_CATALOG_SPECS = (
    "Z:4", "Z:5", "Z:6", "Z:7", "Z:8", "Z:9", "Z:10", "Z:11", "Z:12", "Z:13",
    "D:3", "D:4", "D:5", "D:6",
    "Q8",
    "S:3", "S:4",
    "Z:2xZ:2", "Z:2xZ:4",
)


def _parse_factor(text: str) -> GroupTable:
    token = text.strip()
    if token.upper() == "Q8":
        return build_quaternion()
    match = _FACTOR.match(token)
    if not match:
        raise GroupSpecError(f"Cannot parse group factor {token!r}; expected Z:n, D:n, S:n or Q8")
    letter, degree = match.group(1), int(match.group(2))
    if degree < 1:
        raise GroupSpecError(f"Group parameter must be positive in {token!r}")
    try:
        return _BUILDERS[letter](degree)
    except GroupValidationError as e:
        raise GroupSpecError(f"{token!r}: {e}") from None


def parse_group_spec(spec: str) -> GroupTable:
    """
    Build the group a spec string describes.

    Raises:
        GroupSpecError: the group spec string is malformed (e.g. "Z:0", "Q9")
        OrderCapExceeded: a product is larger than the order cap
        DocumentError: a file: spec points at a malformed Cayley-table file
    """
    spec = (spec or "").strip()
    if not spec:
        raise GroupSpecError("Empty group spec")
    if spec.startswith(FILE_PREFIX):
        from storage.documents import read_cayley_file
        return read_cayley_file(spec[len(FILE_PREFIX):], name=spec)
    factors = [_parse_factor(part) for part in spec.split("x")]
    group = functools.reduce(direct_product, factors)
    LOGGER.debug("Parsed %s as a group of order %d", spec, group.order)
    return group


def parse_catalog(specs: Sequence[str]) -> List[GroupTable]:
    """Groups for a list of specs; entries may themselves be comma-separated"""
    groups = []
    for entry in specs:
        for spec in entry.split(","):
            if spec.strip():
                groups.append(parse_group_spec(spec))
    return groups


def default_catalog() -> List[GroupTable]:
    """Z_4..Z_13, D_3..D_6, Q_8, S_3, S_4, Z_2 x Z_2, Z_2 x Z_4"""
    return [parse_group_spec(spec) for spec in DEFAULT_CATALOG_SPECS]
