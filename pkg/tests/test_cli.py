import json
import pathlib

import pytest

from constellations.affine import named_system
from constellations.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_named_system_json_pinned():
    for name, N, fname in (("ap3", None, "ap3"), ("intro4", None, "intro4"),
                           ("threeprimes", 101, "threeprimes_101")):
        frozen = json.loads((GOLDEN / f"system_{fname}.json").read_text())
        assert named_system(name, N).to_json() == frozen


def test_delta_subcommand(capsys):
    code, out = run(capsys, "delta", "2", "0", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "1"
    assert payload["coefficient"] == "1"
    assert payload["artin"] == {"2": 1}


def test_delta_with_series(capsys):
    code, out = run(capsys, "delta", "5", "0", "1", "--series-cutoff", "2000")
    payload = json.loads(out)
    assert payload["coefficient"] == "20/19"
    assert abs(payload["series"]["value"] - (20 / 19) * 0.3739558) < 5e-3


def test_sigma_subcommand(capsys):
    code, out = run(capsys, "sigma", "--bases", "2,2,2", "--system", "ap3", "--q", "8")
    assert code == 0
    assert json.loads(out)["value"] == "2"


def test_beta_and_tau(capsys):
    code, out = run(capsys, "beta", "--system", "ap3", "--q", "5")
    assert json.loads(out)["value"] == "15/16"
    code, out = run(capsys, "tau", "--system", "ap3", "--q", "5",
                    "--spec", "quad:-1:+", "--spec", "quad:-1:+", "--spec", "quad:-1:+")
    assert json.loads(out)["value"] == "15/16"


def test_tables_subcommand(capsys):
    code, out = run(capsys, "tables", "1")
    payload = json.loads(out)
    rows = {tuple(r["bases"]): r["coefficient"] for r in payload["rows"]}
    assert rows[(2, 2, 3)] == "42/25"
    assert rows[(2, 3, 6)] == "0"
    code, out = run(capsys, "tables", "2a", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "bases,coefficient"
    by_bases = dict(line.split(",", 1) for line in lines[1:])
    assert by_bases["7 7 7 7"] == "914838624/353220125"


def test_output_byte_stable(capsys):
    _, first = run(capsys, "tables", "1")
    _, second = run(capsys, "tables", "1")
    assert first == second
    _, a = run(capsys, "sigma", "--bases", "2,2,2", "--system", "ap3", "--q", "8")
    _, b = run(capsys, "sigma", "--bases", "2,2,2", "--system", "ap3", "--q", "8")
    assert a == b


def test_series_subcommand(capsys):
    code, out = run(capsys, "series", "--system", "intro4", "--bases", "7,7,7,7",
                    "--euler-cutoff", "100", "--grouping", "table")
    payload = json.loads(out)
    assert payload["head_rational"] == "914838624/353220125"
    assert payload["artin_monomial"] == {"7": 4}
    assert payload["folded_primes"] == [3]


def test_verify_subcommand(tmp_path, capsys):
    csv_path = tmp_path / "wit.csv"
    code, out = run(capsys, "verify", "--system", "intro4", "--predicate", "pr:7",
                    "--box", "1:200,1:200", "--witness-csv", str(csv_path))
    payload = json.loads(out)
    assert code == 0
    assert [41, 67] in payload["witnesses"]
    text = csv_path.read_text().splitlines()
    assert text[0] == "n1,n2"
    assert "41,67" in text


def test_cheb_progression_subcommand(capsys):
    code, out = run(capsys, "cheb-progression", "--spec", "quad:-1:+",
                    "--b", "1", "--q", "4", "--N", "100000")
    payload = json.loads(out)
    assert code == 0
    assert abs(payload["ratio"] - 1) < 0.05


def test_appendix_subcommand(capsys):
    code, out = run(capsys, "appendix", "--n", "3", "--bound", "1000", "--limit", "2")
    payload = json.loads(out)
    assert code == 0
    assert payload["D"] == 6
    assert len(payload["pairs"]) == 2


def test_hooley_subcommand(capsys):
    code, out = run(capsys, "hooley-check", "2", "1000")
    payload = json.loads(out)
    assert code == 0 and payload["ok"] is True


def test_validation_exit_codes(capsys):
    code, out = run(capsys, "delta", "4", "0", "1")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "InvalidBase"
    code, out = run(capsys, "tau", "--system", "ap3", "--q", "6", "--spec", "quad:-1:+",
                    "--spec", "quad:-1:+", "--spec", "quad:-1:+")
    assert code == 3
    assert json.loads(out)["error"]["type"] == "NotRefinable"
    code, out = run(capsys, "sigma", "--bases", "2,2", "--system", "ap3", "--q", "8")
    assert code == 2  # wrong number of bases
    code, out = run(capsys, "verify", "--system", "ap3", "--predicate", "pr:2",
                    "--box", "1:10")
    assert code == 2  # box dimension mismatch


def test_inline_system_json(capsys):
    inline = json.dumps({"constants": [0], "coefficients": [[1]]})
    code, out = run(capsys, "beta", "--system", inline, "--q", "4")
    assert code == 0
    assert json.loads(out)["value"] == "1"  # |A(4)| / phi(4) = 2/2
