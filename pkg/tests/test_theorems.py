"""
Test suite for the named checks and the worked-example data.
"""

import dataclasses

import pytest

from groups.catalog import parse_catalog
from groups.constructors import build_cyclic, build_dihedral
from models.errors import UnknownCheckId
from models.search import FamilyEntry
from models.theorem_check import FAIL, PASS, SKIP, CheckScope, TheoremCheck
from search.fixed_points import enumerate_fixed_plucker
from search.rules import implication_rules
from verification import checks as check_module
from verification.checks import (
    all_passed,
    check_ids,
    checks_document,
    render_checks_text,
    run_all,
    run_check,
)
from verification.golden import (
    EXAMPLES,
    Z6,
    GoldenExample,
    GoldenFamily,
    resolve_family,
    resolve_orbit,
    resolve_rule,
)

SMALL_CATALOG = ["Z:4,Z:5,Z:6,Z:7,Z:8", "D:3,D:4", "Q8", "Z:2xZ:2"]
SMALL_SCOPE = CheckScope(dim2_max_order=8, dim3_max_order=8, cyclic_range=(4, 8), lemma_max=12)
FAST_IDS = [check_id for check_id in check_ids() if check_id != "rem-Z13"]


@pytest.fixture(scope="module")
def small_results():
    checks = run_all(parse_catalog(SMALL_CATALOG), SMALL_SCOPE, ids=FAST_IDS)
    return {check.id: check for check in checks}


class TestRegistry:
    """Check ids and lookup"""

    def test_ids_in_order(self):
        ids = check_ids()
        assert len(ids) == 24
        assert ids[0] == "thm-main"
        assert ids[-1] == "rem-Z13"
        assert len(set(ids)) == 24

    def test_unknown_id(self):
        with pytest.raises(UnknownCheckId):
            run_check("thm-nope", [])
        with pytest.raises(UnknownCheckId):
            run_all([], ids=["thm-nope"])

    def test_unknown_id_is_key_error(self):
        with pytest.raises(KeyError):
            run_check("thm-nope", [])

    def test_run_all_keeps_registry_order(self):
        checks = run_all([], ids=["ex-Zn", "prop-orbit-1"])
        assert [c.id for c in checks] == ["prop-orbit-1", "ex-Zn"]


class TestSmallCatalog:
    """Every check over a small catalog"""

    @pytest.mark.parametrize("check_id", FAST_IDS)
    def test_check_passes(self, small_results, check_id):
        check = small_results[check_id]
        assert check.status == PASS, check.to_dict()
        assert check.counterexample is None
        assert check.statement

    def test_scopes_name_groups(self, small_results):
        assert "Z:6" in small_results["thm-main"].scope["groups"]
        assert small_results["thm-3d"].scope["groups"] == ["Z:4", "Z:5", "Z:6", "Z:7", "Z:8"]
        assert small_results["lem-dim3n2"].scope["groups"] == ["Z:6", "Z:8"]
        assert small_results["thm-3d2"].scope["k"] == "3..n-2"

    def test_all_passed(self, small_results):
        assert all_passed(small_results.values())

    def test_parallel_run_matches(self, small_results):
        ids = ["thm-main", "thm-dim3subgroups", "thm-3d", "ex-S3", "ex-Q8"]
        parallel = run_all(parse_catalog(SMALL_CATALOG), SMALL_SCOPE, ids=ids, parallel=True, workers=4)
        assert {check.id: check.to_dict() for check in parallel} == {i: small_results[i].to_dict() for i in ids}


class TestEmptyCatalog:
    """Group-quantified checks skip when nothing is in scope"""

    @pytest.mark.parametrize("check_id", [
        "thm-main", "cor-conj", "prop-orbit-1", "prop-orbitgh", "prop-fni", "cor-un",
        "prop-dim3orbit", "prop-dim3exchange", "cor-dim3sumdiff", "prop-gg2", "lem-dim3n2",
        "thm-dim3subgroups", "thm-3d",
    ])
    def test_skip(self, check_id):
        check = run_check(check_id, [])
        assert check.status == SKIP
        assert check.ok

    def test_examples_do_not_need_the_catalog(self):
        assert run_check("ex-Z6", []).status == PASS
        assert run_check("ex-Q8", []).status == PASS

    def test_no_even_cyclic_group_skips_half_order(self):
        check = run_check("lem-dim3n2", [build_cyclic(7), build_dihedral(3)])
        assert check.status == SKIP


class TestFailures:
    """Failing checks carry a counterexample"""

    def test_wrong_golden_data_fails(self, monkeypatch):
        truncated = GoldenExample(check_id="ex-Z6", group_spec="Z:6", dim=3, families=Z6.families[:2])
        monkeypatch.setitem(EXAMPLES, "ex-Z6", truncated)
        check = run_check("ex-Z6", [])
        assert check.status == FAIL
        assert not check.ok
        assert len(check.counterexample["found"]) == 3
        assert len(check.counterexample["expected"]) == 2

    def test_wrong_annotation_fails(self, monkeypatch):
        families = (GoldenFamily(Z6.families[0].orbits, "{0}"),) + Z6.families[1:]
        monkeypatch.setitem(EXAMPLES, "ex-Z6", GoldenExample("ex-Z6", "Z:6", 3, families))
        check = run_check("ex-Z6", [])
        assert check.status == FAIL
        assert check.counterexample["subgroups"] == ["⟨3⟩"]

    def test_non_matroidal_report_fails(self, monkeypatch):
        def with_bogus_family(g, d, opts=None):
            report = enumerate_fixed_plucker(g, d, opts)
            bogus = FamilyEntry(orbit_labels=((1, 3),), display="f_{1,3}", basis_count=2, uniform=False)
            return dataclasses.replace(report, families=report.families + [bogus])

        monkeypatch.setattr(check_module, "enumerate_fixed_plucker", with_bogus_family)
        check = run_check("thm-dim3subgroups", parse_catalog(["Z:6"]))
        assert check.status == FAIL
        assert check.counterexample["family"] == [[1, 3]]
        assert check.counterexample["witness"]["a"]

    def test_fail_needs_counterexample(self):
        with pytest.raises(ValueError):
            TheoremCheck(id="thm-main", statement="", status=FAIL)

    def test_bad_status(self):
        with pytest.raises(ValueError):
            TheoremCheck(id="thm-main", statement="", status="maybe")


class TestScope:
    """CheckScope validation and serialisation"""

    def test_defaults(self):
        scope = CheckScope()
        assert scope.cyclic_range == (4, 13)
        assert list(scope.cyclic_orders()) == list(range(4, 14))
        assert list(scope.cyclic_orders(low=6)) == list(range(6, 14))

    def test_round_trip(self):
        scope = CheckScope(dim2_max_order=10, cyclic_range=[5, 9])
        assert CheckScope.from_dict(scope.to_dict()) == scope
        assert scope.to_dict()["cyclic_range"] == [5, 9]

    @pytest.mark.parametrize("kwargs", [
        {"dim2_max_order": 0}, {"lemma_max": -1}, {"cyclic_range": (3, 8)}, {"cyclic_range": (9, 8)},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            CheckScope(**kwargs)


class TestRendering:
    """Text and JSON views of a check list"""

    def test_document(self):
        checks = run_all([], ids=["ex-Z7", "thm-main"])
        document = checks_document(checks)
        assert document["passed"] is True
        assert [c["id"] for c in document["checks"]] == ["thm-main", "ex-Z7"]
        assert document["checks"][0]["status"] == SKIP
        assert TheoremCheck.from_dict(document["checks"][1]) == checks[1]

    def test_text(self):
        text = render_checks_text(run_all([], ids=["ex-Z6"]))
        assert text.startswith("PASS  ex-Z6")
        assert text.endswith("1/1 checks passed\n")


class TestGolden:
    """Worked-example data resolves against the constructed groups"""

    def test_resolve_orbit(self):
        g = build_dihedral(3)
        assert resolve_orbit(g, ("ρ", "σ")) == (1, 3)
        assert resolve_orbit(build_cyclic(6), ("3",)) == (3,)

    def test_resolve_family(self):
        assert resolve_family(build_cyclic(6), Z6.families[0]) == frozenset({(1, 2), (2, 4)})
        assert Z6.families[0].display == "f_{1,2} ∪ f_{2,4}"

    def test_rules_are_generated(self):
        for example in EXAMPLES.values():
            if not example.rules:
                continue
            g = parse_catalog([example.group_spec])[0]
            keys = {rule.key() for rule in implication_rules(g, example.dim)}
            for rule in example.rules:
                assert resolve_rule(g, rule) in keys


@pytest.mark.slow
class TestDefaultCatalog:
    """The full suite over the default catalog"""

    def test_run_all(self):
        checks = run_all()
        assert len(checks) == 24
        failed = [c.to_dict() for c in checks if not c.ok]
        assert failed == []

    def test_z13_remark(self):
        assert run_check("rem-Z13", []).status == PASS
