import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from fpgroup.certify import report_schema
from fpgroup.cli import EXIT_INPUT, EXIT_OK, EXIT_UNKNOWN, CliConfig, main
from fpgroup.syntax import parse_presentation

from fixtures import POOL

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_config_defaults():
    cfg = CliConfig()
    assert (cfg.max_cosets, cfg.max_index, cfg.format, cfg.cyclic_shortcut) == (100000, 8, "text", False)
    assert cfg.budget.as_dict() == {"max_cosets": 100000, "max_index": 8}


class TestTransform:
    def test_d8(self, capsys):
        code, out, err = run(capsys, "transform", FIXTURES / "d8.fp")
        assert code == EXIT_OK
        q = parse_presentation(out)
        assert (len(q.generators), len(q.relators)) == (5, 6)
        assert "relator 0 (s^4) -> generator b, relators 0 and 1" in err

    def test_no_relators(self, capsys):
        code, out, _ = run(capsys, "transform", FIXTURES / "free_cyclic.fp")
        assert code == EXIT_OK and out.strip() == "< x | >"

    def test_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.fp"
        bad.write_text("< x | y >")
        code, out, err = run(capsys, "transform", bad)
        assert code == EXIT_INPUT and out == ""
        assert "bad.fp:1:7: error: undeclared generator 'y'" in err
        assert "^" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "transform", tmp_path / "nope.fp")
        assert code == EXIT_INPUT and "nope.fp" in err

    def test_json(self, capsys):
        code, out, _ = run(capsys, "transform", "--format", "json", FIXTURES / "d8.fp")
        data = json.loads(out)
        assert code == EXIT_OK and len(data["pairs"]) == 3
        assert data["pairs"][2]["output_indices"] == [4, 5]

    def test_cyclic_shortcut(self, capsys, tmp_path):
        f = tmp_path / "z6.fp"
        f.write_text("< a, b | a^2, b^3, a^-1*b^-1*a*b >")
        code, out, _ = run(capsys, "transform", "--cyclic-shortcut", f)
        assert code == EXIT_OK and out.strip() == "< x | x^6 >"
        code, out, _ = run(capsys, "transform", f)
        assert len(parse_presentation(out).generators) == 5


class TestOrder:
    def test_metacyclic(self, capsys):
        code, out, _ = run(capsys, "order", FIXTURES / "metacyclic_k4.fp")
        assert code == EXIT_OK and out.strip() == "60"

    def test_overflow(self, capsys):
        code, out, _ = run(capsys, "order", "--max-cosets", "500", FIXTURES / "free_cyclic.fp")
        assert code == EXIT_UNKNOWN and "overflow" in out

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("< x | x^7 >"))
        code, out, _ = run(capsys, "order", "-")
        assert code == EXIT_OK and out.strip() == "7"

    def test_bad_budget(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["order", "--max-cosets", "0", str(FIXTURES / "d8.fp")])
        assert exc.value.code == EXIT_INPUT


def test_abelian(capsys):
    code, out, _ = run(capsys, "abelian", FIXTURES / "d8.fp")
    assert code == EXIT_OK and out.strip() == "Z_2 x Z_2"
    code, out, _ = run(capsys, "abelian", "--format", "json", FIXTURES / "free_cyclic.fp")
    assert json.loads(out) == {"torsion": [], "free_rank": 1}


def test_low_index(capsys):
    code, out, _ = run(capsys, "low-index", "--max-index", "2", "--format", "json",
                       FIXTURES / "d8_second.fp")
    data = json.loads(out)
    assert code == EXIT_OK
    assert [s["index"] for s in data["subgroups"]] == [1, 2, 2, 2]


def test_certify_infinite(capsys, tmp_path):
    f = tmp_path / "dinf.fp"
    f.write_text("< s, t | t^2, t^-1*s*t*s >")
    code, out, _ = run(capsys, "certify-infinite", "--format", "json", f)
    data = json.loads(out)
    assert code == EXIT_OK and data["certificate_kind"] == "infinite-subgroup"
    assert data["witness"]["index"] == 2
    code, out, _ = run(capsys, "certify-infinite", FIXTURES / "d8.fp")
    assert code == EXIT_OK and out.startswith("finite")
    f.write_text("< a, b | a^2, b^3, (a*b)^7 >")
    code, _, _ = run(capsys, "certify-infinite", "--max-cosets", "100", "--max-index", "2", f)
    assert code == EXIT_UNKNOWN


class TestVerifySame:
    def test_round_trip(self, capsys, tmp_path):
        code, out, _ = run(capsys, "transform", FIXTURES / "d8.fp")
        q = tmp_path / "q.fp"
        q.write_text(out)
        code, out, _ = run(capsys, "verify-same", FIXTURES / "d8.fp", q)
        assert code == EXIT_OK and out.strip() == "true"

    def test_alphabet_error(self, capsys):
        code, _, err = run(capsys, "verify-same", FIXTURES / "d8.fp", FIXTURES / "neumann.fp")
        assert code == EXIT_INPUT and "generator" in err

    def test_unknown(self, capsys):
        f = FIXTURES / "free_cyclic.fp"
        code, out, _ = run(capsys, "verify-same", "--max-cosets", "100", f, f)
        assert code == EXIT_UNKNOWN and out.strip() == "unknown"


class TestReport:
    SCHEMA = report_schema()

    def test_transformed(self, capsys):
        code, out, _ = run(capsys, "report", FIXTURES / "d8_transformed.fp")
        assert code == EXIT_OK and "summary: just-finite" in out

    def test_not_just_finite(self, capsys):
        code, out, _ = run(capsys, "report", "--format", "json", FIXTURES / "d8.fp")
        data = json.loads(out)
        jsonschema.validate(data, self.SCHEMA)
        assert code == EXIT_OK and data["summary"] == "not-just-finite"

    def test_inconclusive(self, capsys, tmp_path):
        f = tmp_path / "t237.fp"
        f.write_text("< a, b | a^2, b^3, (a*b)^7 >")
        code, out, _ = run(capsys, "report", "--format", "json", "--max-cosets", "100",
                           "--max-index", "2", f)
        jsonschema.validate(json.loads(out), self.SCHEMA)
        assert code == EXIT_UNKNOWN

    @pytest.mark.parametrize("name", sorted(f.stem for f in FIXTURES.glob("*.fp")
                                            if f.stem != "free_cyclic"))
    def test_json_validates_for_fixture_files(self, capsys, name):
        code, out, _ = run(capsys, "report", "--format", "json", FIXTURES / f"{name}.fp")
        jsonschema.validate(json.loads(out), self.SCHEMA)
        assert code in (EXIT_OK, EXIT_UNKNOWN)


@pytest.mark.parametrize("name", sorted(POOL))
def test_transform_then_verify_pool(capsys, tmp_path, name):
    src = tmp_path / "p.fp"
    src.write_text(POOL[name][0])
    _, out, _ = run(capsys, "transform", src)
    dst = tmp_path / "q.fp"
    dst.write_text(out)
    code, out, _ = run(capsys, "verify-same", src, dst)
    assert code == EXIT_OK and out.strip() == "true"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fpgroup", "order", "-"], input="< x | x^3 >",
                         capture_output=True, text=True)
    assert res.returncode == EXIT_OK and res.stdout.strip() == "3"
