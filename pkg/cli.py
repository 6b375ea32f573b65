#!/usr/bin/env python3
"""
Command-line entry point.

    python cli.py orbits --group Z:6 --dim 3
    python cli.py check --family family.json
    python cli.py classify --group D:3 --dim 3 --out report.json
    python cli.py verify --check thm-main --check ex-Z6
    python cli.py subgroups --group Q8

Exit codes: 0 ok, 1 failing check or non-matroid family, 2 usage or input errors.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from groups.catalog import default_catalog, parse_catalog, parse_group_spec
from groups.subgroups import enumerate_subgroups, index, subgroup_name
from matroid.kernel import is_basis_family
from models.errors import TropRepError
from models.search import SearchOptions
from models.theorem_check import CheckScope
from orbits.engine import format_orbit_dump, orbit_dump_document, orbit_partition
from search.fixed_points import enumerate_fixed_plucker
from storage.documents import read_family_document, write_json
from storage.settings import get_log_level
from verification.checks import all_passed, check_ids, checks_document, render_checks_text, run_all

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code"""

    def error(self, message):
        raise TropRepError(f"{self.prog}: {message}")


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_log_level()
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def cmd_orbits(args) -> int:
    g = parse_group_spec(args.group)
    orbits = orbit_partition(g, args.dim)
    if args.json:
        write_json(args.json, orbit_dump_document(g, orbits))
    sys.stdout.write(format_orbit_dump(g, orbits))
    return EXIT_OK


def cmd_check(args) -> int:
    family = read_family_document(args.family)
    verdict = is_basis_family(family)
    if args.json:
        write_json(args.json, verdict.to_dict())
    if verdict:
        print(f"matroid: {len(family)} bases of size {family.d} on {family.ground_size} elements")
        return EXIT_OK
    print("not a matroid")
    witness = verdict.witness
    if witness.empty_family:
        print("  the family is empty")
    else:
        data = witness.to_dict()
        print(f"  A = {data['a']}, B = {data['b']}, x = {data['x']}")
        print(f"  missing: {data['failed_candidates']}")
    return EXIT_FAILED


def cmd_classify(args) -> int:
    g = parse_group_spec(args.group)
    opts = SearchOptions(
        use_pruning=False if args.no_prune else None,
        oracle_mode=args.oracle,
        parallel=args.parallel,
        workers=args.workers,
        include_timing=args.timings,
    )
    report = enumerate_fixed_plucker(g, args.dim, opts)
    if args.out:
        write_json(args.out, report.to_dict())
    sys.stdout.write(report.render_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    catalog = parse_catalog(args.catalog) if args.catalog else default_catalog()
    scope = CheckScope()
    checks = run_all(catalog, scope, ids=args.check or None, parallel=args.parallel, workers=args.workers)
    if args.json:
        write_json(args.json, checks_document(checks, scope))
    sys.stdout.write(render_checks_text(checks))
    return EXIT_OK if all_passed(checks) else EXIT_FAILED


def cmd_subgroups(args) -> int:
    g = parse_group_spec(args.group)
    subgroups = enumerate_subgroups(g)
    rows = [
        {
            "name": subgroup_name(g, h),
            "size": h.size,
            "index": index(g, h),
            "members": [g.display(a) for a in h.members()],
        }
        for h in subgroups
    ]
    if args.json:
        write_json(args.json, {"group": g.name, "order": g.order, "subgroups": rows})
    print(f"{g.name}: {len(rows)} subgroups")
    for row in rows:
        print(f"  {row['name']:<16} order {row['size']:<3} index {row['index']:<3} {{{', '.join(row['members'])}}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cli.py", description="Tropical subrepresentations of B[G]")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("orbits", help="Orbits of G on d-subsets")
    p.add_argument("--group", required=True, help="Group spec, e.g. Z:6, D:4, Q8, Z:2xZ:4, file:<path>")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--json", help="Also write the orbit dump as JSON")
    p.set_defaults(handler=cmd_orbits)

    p = sub.add_parser("check", help="Test a family document against the exchange axiom")
    p.add_argument("--family", required=True, help="JSON family document")
    p.add_argument("--json", help="Write the verdict as JSON")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("classify", help="Every matroidal orbit union")
    p.add_argument("--group", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--no-prune", action="store_true", help="Check every leaf without propagation")
    p.add_argument("--oracle", action="store_true", help="Hand every union to the exchange kernel")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--timings", action="store_true", help="Include wall-clock time in the report")
    p.add_argument("--out", help="Write the report as JSON")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify", help="Run the named checks")
    p.add_argument("--check", action="append", choices=check_ids(), metavar="ID",
                   help="Check id (repeatable); all checks when omitted")
    p.add_argument("--catalog", action="append", help="Comma-separated group specs")
    p.add_argument("--parallel", action="store_true", help="Run each search on a process pool")
    p.add_argument("--workers", type=int)
    p.add_argument("--json", help="Write the check list as JSON")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("subgroups", help="Subgroup lattice of G")
    p.add_argument("--group", required=True)
    p.add_argument("--json", help="Write the subgroup list as JSON")
    p.set_defaults(handler=cmd_subgroups)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        _configure_logging(args.verbose)
        return args.handler(args)
    except (TropRepError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
