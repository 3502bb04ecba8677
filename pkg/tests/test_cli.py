import json
import subprocess
import sys

import pytest

from fqhyper import cli
from fqhyper import verify as verify_mod
from fqhyper.cli import RunConfig, build_parser, config_from_namespace, main, parse_field_spec


def run_cli(argv):
    lines = []
    code = main(argv, out=lines.append)
    return code, "\n".join(lines)


def run_json(argv):
    code, text = run_cli(argv)
    return code, json.loads(text)


class TestFieldSpec:
    def test_forms(self):
        assert parse_field_spec("5") == (5, 1)
        assert parse_field_spec("2^4") == (2, 4)

    def test_bad(self):
        with pytest.raises(cli.InputError):
            parse_field_spec("four")


class TestCount:
    def test_hermitian_count(self):
        code, rep = run_json(["count", "--field", "2^2", "--construct", "hermitian", "--ambient", "3"])
        assert code == 0
        assert rep["count"] == 45
        assert rep["bounds"]["achieves_theta"] is True

    def test_gamma_by_poly(self):
        gamma = "x0^4+x1^4+x2^4+x0^2*x1^2+x1^2*x2^2+x0^2*x2^2+x0^2*x1*x2+x0*x1^2*x2+x0*x1*x2^2"
        code, rep = run_json(["count", "--field", "2^2", "--poly", gamma, "--ambient", "2"])
        assert code == 0 and rep["count"] == 14
        assert rep["bounds"]["sziklai"] == 14

    def test_extension_counts(self):
        code, rep = run_json(
            ["count", "--field", "2", "--construct", "hyperbolic-quadric", "--ext", "2"]
        )
        assert code == 0 and rep["count_ext"] == {"1": 9, "2": 25}

    def test_nonprime_field_exits_2(self, capsys):
        assert main(["count", "--field", "6", "--poly", "x0^2"]) == 2
        assert "not prime" in capsys.readouterr().err

    def test_poly_and_construct_conflict(self):
        parser = build_parser()
        with pytest.raises(SystemExit):
            parser.parse_args(["count", "--field", "2", "--poly", "x0", "--construct", "gamma"])

    def test_missing_surface_exits_2(self):
        assert main(["count", "--field", "2"]) == 2

    def test_jobs_do_not_change_output(self):
        _, rep1 = run_json(["count", "--field", "3", "--construct", "space-filling", "--jobs", "1"])
        _, rep4 = run_json(["count", "--field", "3", "--construct", "space-filling", "--jobs", "4"])
        rep1.pop("command"), rep4.pop("command")
        assert rep1 == rep4 and rep1["count"] == 40

    def test_csv_format(self):
        code, text = run_cli(["count", "--field", "2", "--construct", "hyperbolic-quadric", "--format", "csv"])
        assert code == 0
        assert any(line.startswith("count,9") for line in text.splitlines())

    def test_constructor_flags(self):
        code, rep = run_json(
            ["count", "--field", "3", "--construct", "quadric-pencil", "--a", "0,0,0,1", "--b", "0,0,2,0"]
        )
        assert code == 0 and rep["count"] == 16
        code, rep = run_json(
            ["count", "--field", "3", "--construct", "pencil-union", "--forms", "1,0,0,0;0,1,0,0"]
        )
        assert code == 0 and rep["count"] == 22
        code, rep = run_json(
            ["count", "--field", "2^2", "--construct", "hermitian-cone", "--dim", "3"]
        )
        assert code == 0 and rep["count"] == 181


class TestClassify:
    def test_quadric_case(self):
        code, rep = run_json(["classify", "--field", "5", "--construct", "hyperbolic-quadric"])
        assert code == 0
        assert rep["classification"]["status"] == "quadric"

    def test_hermitian_cone_case(self):
        code, rep = run_json(["classify", "--field", "2^2", "--construct", "hermitian-cone", "--dim", "3"])
        assert code == 0
        c = rep["classification"]
        assert c["status"] == "hermitian_cone" and c["evidence"]["vertex_dim"] == 0

    def test_below_bound_cubic(self):
        code, rep = run_json(
            ["classify", "--field", "2^2", "--poly", "x0^3+x1^3+x2^3+x3^3+x0*x1*x2", "--ambient", "3"]
        )
        assert code == 0 and rep["classification"]["status"] == "below_bound"

    def test_unclassified_attainer_exits_3(self, monkeypatch):
        import fqhyper.classify as classify_mod

        monkeypatch.setattr(classify_mod, "is_space_filling", lambda _: False)
        code, rep = run_json(["classify", "--field", "3", "--construct", "space-filling"])
        assert code == 3
        assert rep["classification"]["status"] == "unclassified"


class TestVerify:
    def test_small_grid_passes(self):
        code, text = run_cli(["verify", "--grid", "small"])
        assert code == 0
        assert text.count("[PASS]") == len(verify_mod.CHECKS)

    def test_injected_fault_exits_1_naming_check(self, monkeypatch, capsys):
        # a deliberately wrong bound value must fail the battery loudly
        monkeypatch.setattr(verify_mod.bounds, "theta", lambda n, d, q: 0)
        lines = []
        code = main(["verify", "--grid", "small"], out=lines.append)
        assert code == 1
        joined = "\n".join(lines)
        assert "[FAIL] theta-milestones" in joined
        assert "theta" in capsys.readouterr().err


class TestScan:
    def test_quadric_scan_deterministic(self):
        argv = ["scan", "--field", "2", "--degree", "2", "--ambient", "3", "--samples", "60", "--seed", "7"]
        code1, rep1 = run_json(argv)
        code2, rep2 = run_json(argv)
        assert code1 == code2 == 0
        assert rep1 == rep2
        res = rep1["result"]
        assert res["kept"] == 60
        for text, verdict in [(a["poly"], a["classification"]) for a in res["achievers"]]:
            assert verdict["status"] == "quadric"

    def test_csv_histogram(self):
        code, text = run_cli(
            ["scan", "--field", "2", "--degree", "2", "--ambient", "3", "--samples", "30", "--format", "csv"]
        )
        assert code == 0
        assert text.splitlines()[0] == "count,frequency"

    def test_antisymmetric_family_all_fill(self):
        code, rep = run_json(
            ["scan", "--field", "2", "--ambient", "3", "--samples", "20", "--family", "antisymmetric"]
        )
        assert code == 0
        res = rep["result"]
        # space filling and component-free samples all sit at |P^3| = 15
        assert set(dict(res["histogram"])) == {15}


class TestRunConfig:
    @pytest.mark.parametrize(
        "argv",
        [
            ["count", "--field", "2^2", "--construct", "hermitian", "--ambient", "3"],
            ["count", "--field", "5", "--poly", "x0*x1-x2*x3", "--ext", "2", "--jobs", "2"],
            ["classify", "--field", "3", "--construct", "space-filling", "--seed", "9"],
            ["scan", "--field", "2", "--degree", "3", "--samples", "11", "--family", "dense"],
            ["verify", "--grid", "medium"],
        ],
    )
    def test_round_trip(self, argv):
        parser = build_parser()
        cfg = config_from_namespace(parser.parse_args(argv))
        again = config_from_namespace(parser.parse_args(cfg.to_args()))
        assert cfg == again


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "fqhyper", "count", "--field", "2", "--construct", "hyperbolic-quadric"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["count"] == 9
