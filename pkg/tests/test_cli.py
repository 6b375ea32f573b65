"""
Test suite for the command-line entry point.
"""

import json
import logging

import pytest

from cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from models.family import BasisFamily
from storage.documents import read_json, write_family_document


@pytest.fixture(autouse=True)
def restore_logging():
    """run() reconfigures the root logger against the captured stderr"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def family_file(tmp_path):
    def _write(ground_size, d, members):
        path = tmp_path / "family.json"
        write_family_document(str(path), BasisFamily.from_subsets(ground_size, d, members))
        return str(path)
    return _write


class TestOrbits:
    def test_z6_dimension_three(self, capsys):
        assert run(["orbits", "--group", "Z:6", "--dim", "3"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert len(lines) == 4
        assert lines[0].startswith("f_{1,2}\t6\t")

    def test_json(self, tmp_path, capsys):
        out = tmp_path / "orbits.json"
        assert run(["orbits", "--group", "D:3", "--dim", "2", "--json", str(out)]) == EXIT_OK
        document = read_json(str(out))
        assert document["group"] == "D:3"
        assert sum(o["size"] for o in document["orbits"]) == 15


class TestCheck:
    def test_non_matroid(self, family_file, capsys):
        path = family_file(4, 2, [[0, 1], [2, 3]])
        assert run(["check", "--family", path]) == EXIT_FAILED
        out = capsys.readouterr().out
        assert "not a matroid" in out
        assert "A = [0, 1], B = [2, 3], x = 0" in out

    def test_matroid(self, family_file, tmp_path, capsys):
        path = family_file(4, 2, [[0, 2], [0, 3], [1, 2], [1, 3]])
        verdict = tmp_path / "verdict.json"
        assert run(["check", "--family", path, "--json", str(verdict)]) == EXIT_OK
        assert capsys.readouterr().out.startswith("matroid: 4 bases")
        assert read_json(str(verdict)) == {"matroid": True, "witness": None}

    def test_empty_family(self, family_file, capsys):
        path = family_file(4, 2, [])
        assert run(["check", "--family", path]) == EXIT_FAILED
        assert "the family is empty" in capsys.readouterr().out

    def test_missing_file(self, tmp_path, capsys):
        assert run(["check", "--family", str(tmp_path / "nope.json")]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err


class TestClassify:
    def test_z7_report(self, tmp_path, capsys):
        out = tmp_path / "z7.json"
        assert run(["classify", "--group", "Z:7", "--dim", "3", "--out", str(out)]) == EXIT_OK
        report = read_json(str(out))
        assert report["group"] == "Z:7"
        assert report["mode"] == "pruned"
        assert len(report["families"]) == 3
        assert "matroidal unions: 3" in capsys.readouterr().out

    def test_oracle_mode(self, capsys):
        assert run(["classify", "--group", "Q8", "--dim", "2", "--oracle"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "mode oracle" in out
        assert "matroidal unions: 5" in out

    def test_parallel_report_is_byte_identical(self, tmp_path, capsys):
        serial, parallel = tmp_path / "serial.json", tmp_path / "parallel.json"
        assert run(["classify", "--group", "D:6", "--dim", "3", "--out", str(serial)]) == EXIT_OK
        argv = ["classify", "--group", "D:6", "--dim", "3", "--parallel", "--workers", "4", "--out", str(parallel)]
        assert run(argv) == EXIT_OK
        assert serial.read_bytes() == parallel.read_bytes()

    def test_contradictory_flags(self, capsys):
        assert run(["classify", "--group", "Z:6", "--dim", "3", "--oracle", "--parallel"]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err


class TestVerify:
    def test_single_check(self, tmp_path, capsys):
        out = tmp_path / "checks.json"
        assert run(["verify", "--check", "ex-Z6", "--json", str(out)]) == EXIT_OK
        document = read_json(str(out))
        assert document["passed"] is True
        assert [c["id"] for c in document["checks"]] == ["ex-Z6"]
        assert "1/1 checks passed" in capsys.readouterr().out

    def test_catalog_option(self, capsys):
        argv = ["verify", "--check", "prop-orbit-1", "--check", "cor-un", "--catalog", "Z:5,Z:6", "--catalog", "D:3"]
        assert run(argv) == EXIT_OK
        assert "2/2 checks passed" in capsys.readouterr().out

    def test_unknown_check(self, capsys):
        assert run(["verify", "--check", "thm-nope"]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_parallel_json_is_byte_identical(self, tmp_path, capsys):
        base = ["verify", "--check", "thm-main", "--check", "thm-dim3subgroups", "--check", "thm-3d",
                "--catalog", "Z:6,D:3,Q8,Z:12"]
        serial, parallel = tmp_path / "serial.json", tmp_path / "parallel.json"
        assert run(base + ["--json", str(serial)]) == EXIT_OK
        assert run(base + ["--parallel", "--workers", "4", "--json", str(parallel)]) == EXIT_OK
        assert serial.read_bytes() == parallel.read_bytes()
        assert read_json(str(serial))["passed"] is True


class TestSubgroups:
    def test_quaternion(self, tmp_path, capsys):
        out = tmp_path / "q8.json"
        assert run(["subgroups", "--group", "Q8", "--json", str(out)]) == EXIT_OK
        assert "Q8: 6 subgroups" in capsys.readouterr().out
        document = read_json(str(out))
        assert [row["size"] for row in document["subgroups"]] == [1, 2, 4, 4, 4, 8]


class TestUsage:
    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["orbits", "--group", "Z:6"],
        ["orbits", "--group", "Z:0", "--dim", "2"],
        ["orbits", "--group", "Z:6", "--dim", "9"],
        ["subgroups", "--group", "Q9"],
    ])
    def test_errors_exit_two(self, argv, capsys):
        assert run(argv) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_verbose(self, capsys):
        assert run(["--verbose", "subgroups", "--group", "Z:4"]) == EXIT_OK
        assert "Z:4: 3 subgroups" in capsys.readouterr().out

    def test_bad_log_level(self, monkeypatch, capsys):
        monkeypatch.setenv("TROPREP_LOG_LEVEL", "LOUD")
        assert run(["subgroups", "--group", "Z:4"]) == EXIT_USAGE
        assert "TROPREP_LOG_LEVEL" in capsys.readouterr().err

    def test_report_is_json(self, tmp_path):
        out = tmp_path / "nested" / "d3.json"
        assert run(["classify", "--group", "D:3", "--dim", "2", "--out", str(out)]) == EXIT_OK
        with open(out, encoding="utf-8") as f:
            assert json.load(f)["dim"] == 2
