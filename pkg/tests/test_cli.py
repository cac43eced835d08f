"""End-to-end command line coverage through main(argv)."""

import json
import math

import pytest

from sztlab.cli import main
from sztlab.energies import energy_fractional
from sztlab.sets import load_set_file, make_set, save_set_file


@pytest.fixture
def interval(tmp_path):
    path = tmp_path / "interval.txt"
    save_set_file(path, make_set([0, 1, 2]))
    return str(path)


class TestGen:
    def test_frozen_and_deterministic(self, capsys):
        argv = ["gen", "--kind", "convex-squares", "--n", "4"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert first == "1\n4\n9\n16\n"
        assert main(argv) == 0
        assert capsys.readouterr().out == first

    def test_params_and_out_roundtrip(self, tmp_path):
        out = tmp_path / "ap.txt"
        argv = [
            "gen",
            "--kind",
            "arithmetic-progression",
            "--n",
            "3",
            "--param",
            "start=3",
            "--param",
            "step=2",
            "--out",
            str(out),
        ]
        assert main(argv) == 0
        assert list(load_set_file(out)) == [3, 5, 7]

    def test_fraction_and_string_params(self, capsys):
        argv = [
            "gen",
            "--kind",
            "geometric-progression",
            "--n",
            "3",
            "--param",
            "ratio=3/2",
        ]
        assert main(argv) == 0
        assert capsys.readouterr().out == "1\n3/2\n9/4\n"
        argv = ["gen", "--kind", "convex-image", "--n", "3", "--param", "map=cube"]
        assert main(argv) == 0
        assert capsys.readouterr().out == "1\n8\n27\n"

    def test_bad_param_exits_2(self, capsys):
        argv = ["gen", "--kind", "convex-squares", "--n", "4", "--param", "oops"]
        assert main(argv) == 2
        assert "key=value" in capsys.readouterr().err


class TestCompute:
    def test_sumset_ops(self, interval, capsys):
        assert main(["compute", "sumset", "--a", interval, "--b", interval]) == 0
        assert capsys.readouterr().out == "0\n1\n2\n3\n4\n"
        argv = ["compute", "sumset", "--a", interval, "--b", interval, "--op", "diff"]
        assert main(argv) == 0
        assert capsys.readouterr().out == "-2\n-1\n0\n1\n2\n"

    def test_conv_counts(self, interval, capsys):
        assert main(["compute", "conv", "--a", interval, "--b", interval]) == 0
        assert capsys.readouterr().out == "0,1\n1,2\n2,3\n3,2\n4,1\n"
        argv = ["compute", "conv", "--a", interval, "--b", interval, "--op", "minus"]
        assert main(argv) == 0
        assert capsys.readouterr().out == "-2,1\n-1,2\n0,3\n1,2\n2,1\n"

    def test_energy(self, interval, capsys):
        assert main(["compute", "energy", "--set", interval]) == 0
        assert capsys.readouterr().out == "19\n"
        assert main(["compute", "energy", "--set", interval, "--k", "3"]) == 0
        assert capsys.readouterr().out == "45\n"

    def test_energy_fractional(self, interval, capsys):
        argv = ["compute", "energy", "--set", interval, "--fractional", "1.5"]
        assert main(argv) == 0
        got = float(capsys.readouterr().out)
        expected = energy_fractional(make_set([0, 1, 2]), 1.5)
        assert got == expected

    def test_energy_arity_error(self, interval, capsys):
        argv = ["compute", "energy", "--set", interval, "--set", interval, "--k", "5"]
        assert main(argv) == 2
        assert "does not match" in capsys.readouterr().err

    def test_spectrum_closed_form(self, interval, capsys):
        assert main(["compute", "spectrum", "--set", interval]) == 0
        values = [float(line) for line in capsys.readouterr().out.split()]
        root = math.sqrt(33.0)
        assert values == pytest.approx(
            [(7.0 + root) / 2.0, 2.0, (7.0 - root) / 2.0], rel=1e-9
        )

    def test_spectrum_sum_indicator_and_dump(self, interval, tmp_path, capsys):
        dump = tmp_path / "matrix.csv"
        argv = [
            "compute",
            "spectrum",
            "--set",
            interval,
            "--g",
            "sum-indicator",
            "--dump-matrix",
            str(dump),
        ]
        assert main(argv) == 0
        top = float(capsys.readouterr().out.split()[0])
        assert top == pytest.approx(3.0, rel=1e-9)
        assert dump.read_text(encoding="utf-8").splitlines()[0] == "sum,0,1,2"

    def test_spectrum_gfile_asymmetric_uses_singular(self, interval, tmp_path, capsys):
        gset = tmp_path / "g.txt"
        save_set_file(gset, make_set([1]))
        argv = [
            "compute",
            "spectrum",
            "--set",
            interval,
            "--g-file",
            str(gset),
            "--kind",
            "difference",
        ]
        assert main(argv) == 0
        values = [float(line) for line in capsys.readouterr().out.split()]
        assert all(v >= -1e-12 for v in values)

    def test_tail(self, interval, capsys):
        assert main(["compute", "tail", "--a", interval, "--b", interval]) == 0
        assert capsys.readouterr().out == "1,5\n2,3\n3,1\n"

    def test_q_exact(self, interval, capsys):
        argv = ["compute", "q", "--set", interval, "--candidate", interval]
        assert main(argv) == 0
        assert capsys.readouterr().out == "25/3\n"

    def test_q_prime(self, interval, tmp_path, capsys):
        cand = tmp_path / "cand.txt"
        save_set_file(cand, make_set([1, 2]))
        argv = [
            "compute",
            "q",
            "--set",
            interval,
            "--candidate",
            str(cand),
            "--shift",
            "1",
        ]
        assert main(argv) == 0
        # (A+1) = {1,2,3}; products with {1,2} are {1,2,3,4,6}: 25/2.
        assert capsys.readouterr().out == "25/2\n"

    def test_estimate_c_text_and_json(self, interval, capsys):
        assert main(["compute", "estimate-c", "--set", interval]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "3"
        assert "witness:" in out
        argv = ["compute", "estimate-c", "--set", interval, "--json"]
        assert main(argv) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["value"] == "3" and payload["alpha"] == 2.0

    def test_missing_file_exits_2(self, capsys):
        assert main(["compute", "energy", "--set", "/does/not/exist.txt"]) == 2
        assert "error:" in capsys.readouterr().err


class TestVerify:
    def test_small_sweep_json(self, tmp_path, capsys):
        out = tmp_path / "suite.json"
        argv = [
            "verify",
            "--family",
            "convex-squares",
            "--size",
            "8",
            "--quiet",
            "--out",
            str(out),
        ]
        assert main(argv) == 0
        err = capsys.readouterr().err
        assert "asserted checks passed" in err
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["summary"]["asserted_failures"] == 0
        first = out.read_bytes()
        assert main(argv) == 0
        assert out.read_bytes() == first

    def test_only_filter_csv(self, tmp_path):
        out = tmp_path / "suite.csv"
        argv = [
            "verify",
            "--family",
            "convex-squares",
            "--size",
            "8",
            "--only",
            "thm-main",
            "--format",
            "csv",
            "--quiet",
            "--out",
            str(out),
        ]
        assert main(argv) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0].startswith("statement_id,")
        assert "runtime_ms" not in lines[0]
        body = lines[1:]
        assert body and all(row.startswith("thm-main,") for row in body)

    def test_timings_flag_adds_runtimes(self, tmp_path):
        out = tmp_path / "suite.json"
        argv = [
            "verify",
            "--family",
            "convex-squares",
            "--size",
            "8",
            "--only",
            "thm-main",
            "--timings",
            "--quiet",
            "--out",
            str(out),
        ]
        assert main(argv) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert all("runtime_ms" in r for r in payload["reports"])

    def test_forced_failure_exits_1(self, tmp_path, capsys):
        argv = [
            "verify",
            "--family",
            "convex-squares",
            "--size",
            "8",
            "--only",
            "thm-main",
            "--assert-constant",
            "1e9",
            "--quiet",
            "--out",
            str(tmp_path / "fail.json"),
        ]
        assert main(argv) == 1
        assert "0/1 asserted checks passed" in capsys.readouterr().err

    def test_config_file(self, tmp_path):
        config = tmp_path / "sweep.toml"
        config.write_text(
            'families = ["convex-squares"]\nsizes = [8]\n'
            'statements = ["dyadic-partition"]\n',
            encoding="utf-8",
        )
        out = tmp_path / "suite.json"
        argv = ["verify", "--config", str(config), "--quiet", "--out", str(out)]
        assert main(argv) == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert {r["statement_id"] for r in payload["reports"]} == {"dyadic-partition"}

    def test_bad_config_exits_2(self, tmp_path, capsys):
        config = tmp_path / "bad.toml"
        config.write_text("log_base = 10\n", encoding="utf-8")
        assert main(["verify", "--config", str(config), "--quiet"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_figures(self, tmp_path, capsys):
        figdir = tmp_path / "figs"
        argv = [
            "verify",
            "--family",
            "convex-squares",
            "--size",
            "8",
            "--quiet",
            "--out",
            str(tmp_path / "suite.json"),
            "--figures",
            str(figdir),
        ]
        assert main(argv) == 0
        pngs = sorted(p.name for p in figdir.glob("*.png"))
        assert pngs == ["effective_constants.png", "pass_rates.png"]
        assert all((figdir / name).stat().st_size > 0 for name in pngs)


class TestReport:
    def test_rerender_from_json(self, tmp_path, capsys):
        suite_path = tmp_path / "suite.json"
        assert (
            main(
                [
                    "verify",
                    "--family",
                    "convex-squares",
                    "--size",
                    "8",
                    "--quiet",
                    "--out",
                    str(suite_path),
                ]
            )
            == 0
        )
        capsys.readouterr()
        out_dir = tmp_path / "rendered"
        argv = ["report", "--input", str(suite_path), "--out-dir", str(out_dir)]
        assert main(argv) == 0
        out = capsys.readouterr().out
        assert out.count("wrote ") == 3
        assert (out_dir / "report.csv").exists()
        assert (out_dir / "effective_constants.png").stat().st_size > 0
        assert (out_dir / "pass_rates.png").stat().st_size > 0

    def test_missing_input_exits_2(self, tmp_path, capsys):
        argv = ["report", "--input", str(tmp_path / "nope.json"), "--out-dir", "x"]
        assert main(argv) == 2
        assert "error:" in capsys.readouterr().err
