import json

import pytest

from crmaps.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestExitCodes:
    def test_verify_pass(self, capsys):
        code, out = run(capsys, "verify", "--catalog", "H4")
        assert code == 0
        rep = json.loads(out)
        assert rep["schema"] == "report_v1"
        assert rep["result"]["passed"] is True
        assert rep["result"]["Q0"] == "1"

    def test_verify_fail_exit_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.crmap"
        bad.write_text("f1 = z1\nf2 = z2\nphi = 0\ng = w + z1^2\n")
        code, _ = run(capsys, "verify", "--map", str(bad))
        assert code == 1

    def test_usage_error_exit_2(self, capsys):
        assert main(["verify", "--mode", "nonsense"]) == 2

    def test_series_mode(self, capsys):
        code, out = run(capsys, "verify", "--catalog", "I", "--mode", "series",
                        "--degree", "6")
        assert code == 0
        assert json.loads(out)["result"]["degree_checked"] == 6


class TestCommands:
    def test_classify(self, capsys):
        code, out = run(capsys, "classify", "--catalog", "I_n", "--n", "4")
        assert code == 0
        assert json.loads(out)["label"] == "IRRATIONAL"

    def test_rank(self, capsys):
        code, out = run(capsys, "rank", "--catalog", "H4")
        assert code == 0
        assert json.loads(out)["rank"] == 2

    def test_ahlfors(self, capsys):
        code, out = run(capsys, "ahlfors", "--catalog", "H_A",
                        "--alpha", "2", "--beta", "0")
        assert code == 0
        rep = json.loads(out)
        assert rep["result"]["rank"] == 2
        assert rep["result"]["matrix"][0][0] == "-2"

    def test_compose(self, capsys):
        code, out = run(capsys, "compose", "Omega", "H1", "Upsilon1")
        assert code == 0
        assert json.loads(out)["result"]["passed"] is True

    def test_metric(self, capsys):
        code, out = run(capsys, "metric", "--check", "einstein")
        assert code == 0
        assert json.loads(out)["results"]["einstein"]["factor"] == 4

    def test_metric_isometry(self, capsys):
        code, out = run(capsys, "metric", "--check", "isometry",
                        "--catalog", "R0")
        assert code == 0
        assert json.loads(out)["results"]["isometry"]["defect_zero"] is True

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = run(capsys, "verify", "--catalog", "H2",
                        "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["result"]["passed"] is True


class TestDeterminism:
    def test_same_seed_same_json(self, capsys):
        _, out1 = run(capsys, "verify", "--catalog", "H4", "--mode", "numeric",
                      "--samples", "20", "--seed", "9")
        _, out2 = run(capsys, "verify", "--catalog", "H4", "--mode", "numeric",
                      "--samples", "20", "--seed", "9")
        assert out1 == out2

    def test_different_seed_differs(self, capsys):
        _, out1 = run(capsys, "verify", "--catalog", "H4", "--mode", "numeric",
                      "--samples", "20", "--seed", "9")
        _, out2 = run(capsys, "verify", "--catalog", "H4", "--mode", "numeric",
                      "--samples", "20", "--seed", "10")
        assert json.loads(out1)["result"]["residual_max"] != \
            json.loads(out2)["result"]["residual_max"]


CATALOG_MODES = [
    ("H1", "exact"), ("H2", "exact"), ("H3", "exact"), ("H4", "exact"),
    ("H5", "exact"), ("I", "series"), ("ell_n", "exact"), ("I_n", "series"),
    ("R0", "exact"), ("R1", "exact"), ("R2", "exact"), ("P1", "exact"),
    ("P2", "exact"), ("R0_n", "exact"), ("I_n_ball", "numeric"),
    ("Upsilon1", "exact"), ("Upsilon2", "exact"), ("Upsilon3", "exact"),
    ("Upsilon4", "exact"), ("Upsilon5", "exact"), ("Omega", "exact"),
    ("Omega_inv", "numeric"), ("Xdil", "exact"), ("cayley", "exact"),
    ("cayley_to_ball", "exact"), ("t2m", "numeric"), ("Psi_embed", "exact"),
]


@pytest.mark.parametrize("nm,mode", CATALOG_MODES)
def test_every_catalog_name_verifies(capsys, nm, mode):
    argv = ["verify", "--catalog", nm, "--mode", mode,
            "--degree", "6", "--samples", "25"]
    if nm == "Psi_embed":
        argv += ["--n", "4", "--l", "1"]
    code, out = run(capsys, *argv)
    assert code == 0, out


def test_suite_smoke(capsys):
    # reduced battery: exit 0 and one PASS line per check
    code = main(["suite", "--samples", "10", "--degree", "4", "--seed", "7"])
    out = capsys.readouterr().out
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert lines and all(ln.startswith("PASS") for ln in lines)
