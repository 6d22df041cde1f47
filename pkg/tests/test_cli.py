import json
import subprocess
import sys

import pytest

from wittsym import suites
from wittsym.cli import main
from wittsym.suites import CATALOG

W10 = json.dumps({"p": 2, "n": 2, "ring": {"kind": "prime-field", "p": 2}, "coords": [1, 0]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_witt_add_fixture(capsys):
    code, out, _ = run(capsys, "witt", "add", "--a", W10, "--b", W10)
    assert code == 0
    assert json.loads(out)["coords"] == [{}, {"0": [1]}]


def test_witt_output_round_trips(capsys):
    code, out, _ = run(capsys, "witt", "mul", "--a", W10, "--b", W10)
    code2, out2, _ = run(capsys, "witt", "neg", "--a", out)
    assert code == code2 == 0 and json.loads(out2)["n"] == 2


def test_witt_ghost_and_versch(capsys):
    code, out, _ = run(capsys, "--ring", "integers", "witt", "ghost", "--a", '{"coords": [3, 5]}')
    assert code == 0 and json.loads(out)["ghost"] == [{"0": [3]}, {"0": [19]}]
    code, _, err = run(capsys, "witt", "versch", "--a", W10)
    assert code == 2 and "--target" in err
    code, out, _ = run(capsys, "witt", "versch", "--a", W10, "--target", "ext")
    assert json.loads(out)["n"] == 3


def test_symbol_anchor(capsys):
    a = json.dumps({"coords": [{"0": [1]}, {}, {}]})
    code, out, _ = run(capsys, "symbol", "asw", "--p", "3", "--a", a, "--b", '{"1": [1]}')
    obj = json.loads(out)
    assert code == 0 and obj["value"] == 1 and obj["modulus"] == 27
    assert obj["provenance"]["method"] == "ghost-residue"


def test_symbol_covector_and_pairings(capsys):
    x = json.dumps({"window": [{"0": [1]}, {}]})
    code, out, _ = run(capsys, "symbol", "asw-inf", "--x", x, "--b", '{"1": [1]}')
    assert code == 0 and json.loads(out)["value"] == 1
    a = json.dumps({"coords": [{"-1": [1]}, {}]})
    b = json.dumps({"coords": [{"1": [1]}, {}]})
    code, out, _ = run(capsys, "pairing", "n", "--a", a, "--b", b)
    assert code == 0 and json.loads(out)["value"] == 1
    code, out, _ = run(capsys, "pairing", "mn", "--a", a, "--b", json.dumps({"coords": [{"1": [1]}]}))
    assert code == 0 and json.loads(out)["provenance"]["routes"] == ["common-level", "direct-sum"]


def test_forms_commands(capsys):
    tensor = json.dumps({"terms": [{"c": 1, "left": {"coords": [{"0": [1]}, {}]},
                                    "right": {"coords": [{"1": [1]}, {}]}}]})
    code, out, _ = run(capsys, "forms", "eval", "--tensor", tensor)
    assert code == 0 and json.loads(out) == {"modulus": 4, "provenance": {"method": "alpha", "terms": 1}, "value": 0}
    code, out, _ = run(capsys, "forms", "check", "--relation", "N_n", "--samples", "6")
    assert code == 0 and json.loads(out)["failures"] == []
    code, _, _ = run(capsys, "forms", "check", "--relation", "bogus")
    assert code == 2


def test_usage_errors(capsys):
    assert run(capsys, "symbol", "asw", "--a", "{bad", "--b", "1")[0] == 2
    code, _, err = run(capsys, "witt", "neg", "--a", '{"coords": [1, 0]')
    assert code == 2 and "line 1 column" in err
    assert run(capsys, "suite", "run", "nonexistent")[0] == 2
    assert run(capsys, "--p", "7", "witt", "neg", "--a", '{"coords": [1]}')[0] == 2
    assert run(capsys, "witt", "frobnicate")[0] == 2


def test_suite_commands(capsys):
    code, out, _ = run(capsys, "suite", "list", "--json")
    assert code == 0 and {r["id"] for r in json.loads(out)} == set(CATALOG)
    code, out, _ = run(capsys, "suite", "run", "--name", "fv-adjoint", "--samples", "20", "--seed", "7", "--json")
    assert code == 0 and json.loads(out)["failures"] == []
    code, out, _ = run(capsys, "suite", "run", "anchor-normalization", "--p", "3", "--n", "2", "--samples", "1")
    assert code == 0 and '"value": 1' in out


def test_suite_violation_exit_code(capsys, monkeypatch):
    def broken(c):
        yield suites._case(False, "always", a=c.S.witt(c.n))

    monkeypatch.setitem(CATALOG, "broken", suites.Suite("broken", "witt", "always fails", broken))
    code, out, _ = run(capsys, "suite", "run", "broken", "--samples", "1", "--json")
    assert code == 1 and json.loads(out)["failures"][0]["witness"]["a"]["n"] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wittsym", "witt", "add", "--a", W10, "--b", W10],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["coords"][1] == {"0": [1]}
