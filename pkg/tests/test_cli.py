import json

import pytest

from hermrank.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main, parse_gaussian
from hermrank.fixtures import load_fixtures
from hermrank.gaussian import GaussianRational


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_skt_special_regime(capsys):
    code, out, _ = run(capsys, "rank", "--kind", "skt", "--family", "I", "--rho", "0", "--lambda", "0", "--D", "-1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["rank"] == {"lower": 2, "upper": 2, "status": "exact"}
    assert data["kind"] == "skt"


def test_inadmissible_parameters_exit_1(capsys):
    code, out, err = run(capsys, "rank", "--kind", "kahler", "--family", "II", "--rho", "0", "--B", "0", "--c", "0")
    assert code == EXIT_INPUT and out == ""
    assert "(rho, B, c) != (0, 0, 0)" in err


@pytest.mark.parametrize("argv", [
    ["rank", "--kind", "kahler", "--family", "I", "--lambda", "1/0"],
    ["rank", "--kind", "kahler", "--family", "P", "--D", "1"],
    ["rank", "--kind", "kahler"],
    ["rank", "--kind", "kahler", "--family", "P", "--salamon", "(0,0)"],
    ["rank", "--kind", "bogus", "--family", "P"],
    ["rank", "--kind", "hlck", "--family", "P", "--sweep", "0"],
    ["parse", "(0,0,0,12,34)"],
    ["nosuch"],
    [],
])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_rank_formats(capsys):
    base = ["rank", "--kind", "kahler", "--family", "P", "--rho", "1"]
    code, md, _ = run(capsys, *base, "--format", "md")
    assert code == EXIT_OK and md.startswith("| algebra | kind | rank | status |")
    code, text, _ = run(capsys, *base, "--format", "text")
    assert "rank: 2" in text


def test_algebra_json_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "rank", "--kind", "kahler", "--family", "I", "--rho", "1", "--lambda", "1/2",
                    "--D", "1/3+2i")
    first = json.loads(out)
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(first["algebra"]))
    _, again, _ = run(capsys, "rank", "--kind", "kahler", "--algebra", f"@{path}")
    assert again == out


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "suspension", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["ok"] is True


def test_verify_subcommand_ok_and_mismatch(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-paper", "--format", "text")
    assert code == EXIT_OK and "all match" in out
    fixtures = load_fixtures()
    label = next(iter(fixtures["sixth_omega_cubed"]))
    fixtures["sixth_omega_cubed"][label] = "0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(fixtures))
    code, out, _ = run(capsys, "verify-paper", "--fixtures", str(bad), "--format", "text")
    assert code == EXIT_MISMATCH
    assert [line for line in out.splitlines() if line.startswith("  ")] == [
        line for line in out.splitlines() if "1/6 omega^3 " + label in line]


def test_check_identities_small(capsys):
    code, out, _ = run(capsys, "check-identities", "--instances", "3", "--seed", "9")
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_parse_salamon(capsys):
    code, out, _ = run(capsys, "parse", "(0,0,0,12,13,23)")
    data = json.loads(out)
    assert code == EXIT_OK and data["n"] == 3
    assert data["real_differentials"][3] == "de^4 = e^1^e^2"


def test_parse_non_integrable_structure_is_reported(capsys):
    code, out, _ = run(capsys, "parse", "(0,0,12,13)", "--format", "text")
    assert code == EXIT_OK and "not integrable" in out


def test_rank_is_byte_deterministic(capsys):
    argv = ["rank", "--kind", "hlck", "--family", "I", "--rho", "1", "--lambda", "0", "--D", "i", "--sweep", "60",
            "--seed", "5"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize("text,value", [
    ("1+2i", GaussianRational(1, 2)), ("-i", GaussianRational(0, -1)), ("1/2", GaussianRational("1/2")),
    ("0.25-3/4i", GaussianRational("1/4", "-3/4")), ("2*i", GaussianRational(0, 2)),
])
def test_parse_gaussian(text, value):
    assert parse_gaussian(text) == value
