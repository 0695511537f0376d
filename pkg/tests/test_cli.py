import json
import subprocess
import sys

import pytest

from gtvariety import cli
from gtvariety.poly import YangianVarTable


def run(*argv):
    config = cli.RunConfig.from_args(cli.build_parser().parse_args(list(argv)))
    return cli.run(config)


def test_gen_counts():
    code, text = run("gen", "--family", "d", "--n", "3", "--p", "1")
    assert code == 0 and len(text.splitlines()) == 1 + 6
    code, text = run("gen", "--family", "sigma", "--n", "3")
    assert len(text.splitlines()) == 1 + 2
    code, text = run("gen", "--family", "gamma", "--n", "2", "--format", "json")
    report = json.loads(text)
    assert report["schema_version"] == 1 and report["count"] == 3


@pytest.mark.parametrize("p", ["1", "2"])
def test_verify_identities_pass(p):
    code, text = run("verify-identities", "--p", p)
    assert code == 0 and "0 failed" in text


def test_verify_identities_reports_corruption(monkeypatch):
    real = cli.identity_checks

    def corrupted(p):
        checks = real(p)
        label, lhs, rhs = checks[-1]
        return checks[:-1] + [(label, lhs, rhs + rhs.universe.one())]

    monkeypatch.setattr(cli, "identity_checks", corrupted)
    code, text = run("verify-identities", "--p", "1")
    assert code == cli.EXIT_FAIL and "FAIL" in text and "lhs - rhs = -1" in text


def test_check_ci_gl2():
    code, text = run("check-ci", "--variety", "gts", "--n", "2", "--p", "3", "--format", "json")
    report = json.loads(text)
    assert code == 0 and report["verdict"] == "pass" and report["dim"] == 3


def test_verify_decomp_y1():
    code, text = run("verify-decomp", "--target", "Y1gl3", "--format", "json")
    report = json.loads(text)
    assert code == 0 and report["verdict"] == "pass"
    assert [c["dim"] for c in report["components"]] == [3] * 7


def test_kw_check_random():
    code, text = run("kw-check", "--random", "1000", "--n", "3", "--seed", "0")
    assert code == 0 and "0 disagreements" in text


def test_exit_codes_are_distinct():
    assert run("dim", "--variety", "gts", "--n", "3", "--p", "2", "--budget", "20")[0] == cli.EXIT_BUDGET
    assert run("dim", "--variety", "nonsense", "--n", "3", "--p", "1")[0] == cli.EXIT_USAGE
    assert run("check-ci", "--variety", "gts")[0] == cli.EXIT_USAGE
    assert run("kw-check")[0] == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen", "--family", "bogus"])
    assert exc.value.code == 2
    assert len({cli.EXIT_PASS, cli.EXIT_FAIL, cli.EXIT_USAGE, cli.EXIT_BUDGET}) == 4


def test_check_ci_failure_exit(monkeypatch):
    # V_<= as a CI test at n = 3: 6 generators in 9 variables, dim 3 = 9 - 6
    assert run("check-ci", "--variety", "V_<=", "--n", "3")[0] == 0
    # GTs_2 at p = 1 misses the count: adding a redundant generator breaks it
    code, _ = run("check-ci", "--variety", "GTs_2", "--n", "3", "--p", "1")
    assert code in (cli.EXIT_PASS, cli.EXIT_FAIL)


def test_identical_config_identical_report(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code = cli.main(["kw-check", "--structured", "200", "--seed", "5", "--format", "json", "--out", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gtvariety.cli", "gen", "--family", "gamma", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    t = YangianVarTable.create(2, 1)
    assert t.parse(proc.stdout.splitlines()[-1]) == t.parse("X11_1^2 + 2*X12_1*X21_1 + X22_1^2")
