import json

import pytest

from app.cli.command_interface import CommandInterface, parse_object
from app.core.diagram import LpmDiagram, parse_diagram, uniform
from app.main import run
from app.snakes.multifan import MultiFan
from app.snakes.snake import SnakeComposition
from app.utils.errors import ParseError


def invoke(capsys, *argv):
    code = run([*argv, "--no-log-file", "--log-level", "WARNING"])
    out, err = capsys.readouterr()
    return code, out, err


class TestParseObject:
    def test_kinds(self):
        assert isinstance(parse_object("S(2,3)"), SnakeComposition)
        assert isinstance(parse_object("F(c=2,1;d=2)"), MultiFan)
        assert isinstance(parse_object("P:EEN;Q:NEE"), LpmDiagram)
        assert parse_object("uniform:2,2") == uniform(2, 2)
        assert parse_object("catalan:2") == parse_diagram("P:EENN;Q:NENE")

    def test_bad_family(self):
        with pytest.raises(ParseError):
            parse_object("uniform:2")
        with pytest.raises(ParseError):
            parse_object("")


class TestCommands:
    def test_eval_snake(self, capsys):
        code, out, _ = invoke(capsys, "eval", "S(2,3)")
        assert code == 0
        assert "bases=7" in out
        assert "t20=14" in out
        assert "t02=6" in out
        assert "mw ratio 84/49" in out

    def test_eval_family(self, capsys):
        code, out, _ = invoke(capsys, "eval", "catalan:2")
        assert code == 0
        assert "bases=5" in out

    def test_eval_json(self, capsys):
        code, out, _ = invoke(capsys, "eval", "S(2,3)", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["schema"] == 1
        assert payload["command"] == "eval"
        assert payload["result"]["bases"] == "7"
        assert payload["result"]["mw_ratio_reduced"] == ["12", "7"]

    def test_tutte(self, capsys):
        code, out, _ = invoke(capsys, "tutte", "P:EEN;Q:NEE")
        assert code == 0
        assert out.strip() == "x + y + y^2"

    def test_verify(self, capsys):
        code, out, _ = invoke(capsys, "verify", "--n", "3")
        assert code == 0
        assert out.strip() == "3 diagrams, 0 violations, equality: S(1)"

    def test_sweep_writes_report(self, capsys, tmp_path):
        target = tmp_path / "sweep.tsv"
        code, out, _ = invoke(capsys, "sweep", "--n", "4", "--out", str(target))
        assert code == 0
        assert target.exists()
        assert "# summary" in out

    def test_enumerate_round_trips(self, capsys):
        code, out, _ = invoke(capsys, "enumerate", "--n", "3", "--filter", "lc_connected")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines == ["P:ENN;Q:NNE", "P:EEN;Q:NEE"]
        assert all(parse_diagram(line).canonical() == line for line in lines)

    def test_snake(self, capsys):
        code, out, _ = invoke(capsys, "snake", "S(2,3)")
        assert code == 0
        assert "bases_recursive=7" in out
        assert "bases_fib_sum=7" in out
        assert "fan=F(c=2,1;d=2)" in out
        assert "dual=S(1,2,3)" in out

    def test_fan(self, capsys):
        code, out, _ = invoke(capsys, "fan", "F(c=2,1;d=2)")
        assert code == 0
        for expected in ("spanning_trees=7", "acyclic_formula=14", "acyclic_bruteforce=14",
                         "totally_cyclic_bruteforce=6"):
            assert expected in out

    def test_json_counts_are_decimal_strings(self, capsys):
        _, out, _ = invoke(capsys, "fan", "F(c=2,1;d=2)", "--format", "json")
        result = json.loads(out)["result"]
        assert (result["vertices"], result["edges"]) == ("4", "5")
        assert result["graph"]["vertex_count"] == "4"
        _, out, _ = invoke(capsys, "snake", "S(2,3)", "--format", "json")
        assert json.loads(out)["result"]["elements"] == "5"
        _, out, _ = invoke(capsys, "enumerate", "--n", "3", "--filter", "lc_connected", "--format", "json")
        result = json.loads(out)["result"]
        assert (result["n"], result["count"]) == ("3", "2")
        _, out, _ = invoke(capsys, "verify", "--n", "3", "--format", "json")
        assert json.loads(out)["result"]["total"] == "3"

    def test_draw(self, capsys):
        code, out, _ = invoke(capsys, "draw", "S(1)")
        assert code == 0
        assert out == "+---+\n|   |\n+---+\n"

    def test_draw_svg(self, capsys):
        code, out, _ = invoke(capsys, "draw", "uniform:2,2", "--format", "svg")
        assert code == 0
        assert out.startswith("<?xml")
        assert out.rstrip().endswith("</svg>")

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "tutte.txt"
        code, out, _ = invoke(capsys, "tutte", "S(1)", "--out", str(target))
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8") == "x + y\n"


class TestExitCodes:
    def test_domain_error(self, capsys):
        code, _, err = invoke(capsys, "eval", "P:NNEE;Q:EENN")
        assert code == 1
        assert "错误" in err

    def test_domain_error_json(self, capsys):
        code, out, _ = invoke(capsys, "tutte", "P:EXN;Q:NEE", "--format", "json")
        assert code == 1
        error = json.loads(out)["error"]
        assert error == {"code": "parse_error", "position": 4, "message": error["message"]}

    def test_cap_exceeded(self, capsys):
        code, _, _ = invoke(capsys, "tutte", "uniform:11,11")
        assert code == 2

    def test_usage_error(self, capsys):
        code, _, err = invoke(capsys, "frobnicate")
        assert code == 1
        assert "usage" in err

    def test_non_positive_cap(self, capsys):
        code, _, _ = invoke(capsys, "eval", "S(1)", "--cap", "0")
        assert code == 1


def test_interface_can_be_used_directly():
    result = CommandInterface(cap=12).tutte("S(1)")
    assert result.result["terms"] == [[0, 1, "1"], [1, 0, "1"]]
    assert result.exit_code == 0
