"""
Document I/O: JSON reports, family exchange documents and Cayley-table files.

JSON is written UTF-8 with sorted keys and two-space indentation so that
identical inputs always produce byte-identical files.
"""

import json
import logging
import os
from typing import List, Optional, Tuple

from models.errors import DocumentError, TropRepError
from models.family import BasisFamily
from models.group import GroupTable

LOGGER = logging.getLogger(__name__)

NAMES_PREFIX = "names:"


def dumps(data) -> str:
    """Canonical JSON text for a document"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(filepath: str, data) -> None:
    directory = os.path.dirname(os.path.abspath(filepath))
    os.makedirs(directory, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dumps(data))
    LOGGER.info("Wrote %s", filepath)


def read_json(filepath: str):
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise DocumentError(f"No such file: {filepath}") from None
    except json.JSONDecodeError as e:
        raise DocumentError(f"{filepath} is not valid JSON: {e}") from None


def read_family_document(filepath: str) -> BasisFamily:
    """
    Read a family exchange document.

    Format: {"ground_size": n, "d": d, "members": [[i, j, ...], ...]}

    Raises:
        DocumentError: missing keys, bad member lists or members of the wrong size
    """
    data = read_json(filepath)
    if not isinstance(data, dict):
        raise DocumentError(f"{filepath}: expected a JSON object")
    missing = [key for key in ("ground_size", "d", "members") if key not in data]
    if missing:
        raise DocumentError(f"{filepath}: missing keys {', '.join(missing)}")
    members = data["members"]
    if not isinstance(members, list) or not all(isinstance(m, list) for m in members):
        raise DocumentError(f"{filepath}: members must be a list of index lists")
    for m in members:
        if len(set(m)) != len(m):
            raise DocumentError(f"{filepath}: member {m} repeats an element")
        if any(not isinstance(a, int) or a < 0 for a in m):
            raise DocumentError(f"{filepath}: member {m} has a non-index entry")
    try:
        return BasisFamily.from_dict(data)
    except TropRepError:
        raise
    except (TypeError, ValueError) as e:
        raise DocumentError(f"{filepath}: {e}") from None


def write_family_document(filepath: str, family: BasisFamily) -> None:
    write_json(filepath, family.to_dict())


def parse_cayley_text(text: str, source: str = "<text>") -> Tuple[List[List[int]], Optional[List[str]]]:
    """
    Parse a Cayley-table file body.

    The first non-blank line holds n, then n lines of n whitespace-separated
    indices, then optionally a line "names: a b c ...".
    """
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]
    if not lines:
        raise DocumentError(f"{source}: empty Cayley-table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise DocumentError(f"{source}: first line must be the group order, got {lines[0]!r}") from None
    if n < 1:
        raise DocumentError(f"{source}: group order must be positive, got {n}")
    body = lines[1:1 + n]
    if len(body) != n:
        raise DocumentError(f"{source}: expected {n} table rows, found {len(body)}")
    rows = []
    for r, line in enumerate(body):
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise DocumentError(f"{source}: row {r} has a non-integer entry") from None

    names = None
    rest = lines[1 + n:]
    if rest:
        if len(rest) > 1 or not rest[0].startswith(NAMES_PREFIX):
            raise DocumentError(f"{source}: unexpected trailing content {rest[0]!r}")
        names = rest[0][len(NAMES_PREFIX):].split()
        if len(names) != n:
            raise DocumentError(f"{source}: expected {n} names, got {len(names)}")
    return rows, names


def read_cayley_file(filepath: str, name: Optional[str] = None) -> GroupTable:
    """Load and validate a group from a Cayley-table file"""
    from groups.constructors import build_from_cayley

    try:
        with open(filepath, "r", encoding="utf-8") as f:
            text = f.read()
    except FileNotFoundError:
        raise DocumentError(f"No such file: {filepath}") from None
    rows, names = parse_cayley_text(text, filepath)
    return build_from_cayley(rows, names=names, name=name or f"file:{filepath}")


def format_cayley_text(group: GroupTable) -> str:
    lines = [str(group.order)]
    lines.extend(" ".join(str(v) for v in row) for row in group.mul)
    lines.append(NAMES_PREFIX + " " + " ".join(group.element_names))
    return "\n".join(lines) + "\n"


def write_cayley_file(filepath: str, group: GroupTable) -> None:
    if any(" " in name for name in group.element_names):
        raise DocumentError("Element names containing spaces cannot be written to a Cayley-table file")
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(format_cayley_text(group))

