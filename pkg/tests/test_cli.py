import io
import json
import subprocess
import sys

import pytest

from adrkit.cli import VERBS, load_schema, run, validate_payload
from adrkit.corpus import builtin_text

JSON_CASES = {
    "build": ["--algebra", "ex36"],
    "module": ["--algebra", "ex54", "--module", "quot_soc(P(1),6)"],
    "adr": ["--algebra", "kx2"],
    "standard": ["--algebra", "kx2"],
    "filtration": ["--algebra", "a5", "--module", "homG(rad^1(P(3)))"],
    "approx": ["--algebra", "ex54", "--module", "quot_soc(P(1),6)"],
    "resolve": ["--algebra", "kx2", "--module", "LR(1,1)"],
    "ext-table": ["--algebra", "ex54"],
    "dll-check": ["--algebra", "ex36", "--module", "P(3)"],
    "counterexample": ["--n", "3"],
    "corpus-dump": ["--seed", "4"],
}


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_every_verb_has_a_json_case():
    assert set(JSON_CASES) == set(VERBS)


@pytest.mark.parametrize("verb", sorted(JSON_CASES))
def test_json_reports_validate_against_shipped_schema(verb):
    code, text = invoke(verb, *JSON_CASES[verb], "--json")
    assert code == 0
    payload = json.loads(text)
    validate_payload(verb, payload)
    assert load_schema(verb)["type"] == "object"


@pytest.mark.parametrize("verb", sorted(JSON_CASES))
def test_text_reports_are_deterministic(verb):
    first = invoke(verb, *JSON_CASES[verb])
    assert first[0] == 0 and first[1].strip()
    assert invoke(verb, *JSON_CASES[verb]) == first


def test_filtration_layers():
    payload = json.loads(invoke("filtration", *JSON_CASES["filtration"], "--json")[1])
    layers = [[(d["label"], d["multiplicity"]) for d in layer] for layer in payload["layers"]]
    assert layers == [[([3, 1], 1)], [([2, 2], 1)]]
    assert payload["chain_dims"] == [0, 3, 5]


def test_approx_summands():
    payload = json.loads(invoke("approx", *JSON_CASES["approx"], "--json")[1])
    assert payload["summands"] == [{"label": [1, 3], "multiplicity": 1},
                                   {"label": [4, 1], "multiplicity": 1}]


def test_counterexample_pair_for_n5():
    payload = json.loads(invoke("counterexample", "--n", "5", "--json")[1])
    assert payload["ll_pair"] == [5, 6]
    assert payload["dll_ok"] is False


def test_algebra_file_path(tmp_path):
    path = tmp_path / "local.alg"
    path.write_text(builtin_text("kx2"))
    assert invoke("build", "--algebra", str(path))[0] == 0


@pytest.mark.parametrize("argv", [
    ["module", "--algebra", "ex54"],                          # missing --module
    ["build"],                                                # missing --algebra
    ["module", "--algebra", "ex54", "--module", "P(9)"],      # bad vertex
    ["module", "--algebra", "ex54", "--module", "P(1"],       # syntax error
    ["build", "--algebra", "/no/such/file.alg"],
    ["adr", "--algebra", "a5", "--field", "Fp:7"],            # p <= dim R
    ["build", "--algebra", "kx2", "--field", "Fp:4"],
    ["resolve", "--algebra", "kx2", "--module", "LR(1,1)", "--max-steps", "0"],
])
def test_input_errors_exit_one(argv, capsys):
    code, text = invoke(*argv)
    assert code == 1
    assert text == ""
    assert "error:" in capsys.readouterr().err


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "adrkit.cli", "build", "--algebra", "kx2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip()
