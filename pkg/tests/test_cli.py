import io
import re
import json
import subprocess
import sys

import pytest

from soclevec.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--json")
    return code, json.loads(out)


def test_minh_and_maxsocle():
    assert call("minh", "0", "0", "1", "0", "2", "4", "2", "5") == (EXIT_OK, "1 4 7 9 11 10 7 5\n", "")
    assert call("maxsocle", "1", "4", "7", "9", "11", "10", "7", "5")[1] == "0 0 1 0 2 4 2 5\n"
    assert call("mincodim", "0", "0", "1", "0", "2", "4", "2", "5")[1] == "4\n"


def test_forced():
    code, out, _ = call("forced", "1", "4", "8", "9", "12", "13", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "alpha = 2"
    code, data = call_json("forced", "1", "4", "8", "9", "12", "13", "3")
    assert data["alpha"] == 2 and data["weaker_criterion"] is None


def test_expand_and_bound():
    code, data = call_json("expand", "9", "3")
    assert data["terms"] == [[4, 3], [3, 2], [2, 1]]
    assert data["shifts"] == {"-1": 6, "0": 9, "+1": 12}
    assert call("bound", "9", "3")[1] == "12\n"


def test_unique_example_json():
    code, data = call_json("unique", "1", "3", "6", "10", "12", "14")
    assert code == EXIT_OK
    assert data["status"] == "non-unique"
    (witness,) = data["witnesses"]
    assert witness["s"] == [0, 0, 0, 0, 0, 14]
    assert witness["ideal"]["pieces"]["4"] == ["x^4", "x^3 y", "x^2 y^2"]


def test_unique_reports_conditions_in_high_codimension():
    code, data = call_json("unique", "1", "4", "5", "6", "5", "2")
    assert data["status"] == "non-unique"
    assert {c["kind"] for c in data["conditions"]} == {"jump", "penultimate"}


def test_betti_and_cancellations():
    code, data = call_json("betti", "1", "3", "6", "10", "12", "14")
    assert data["identity_holds"]
    assert [3, 6, 1] in data["betti"]["beta"]
    code, data = call_json("cancellations", "1", "3", "6", "10", "12", "14")
    assert data["shifts"] == [6] and data["socle_degrees"] == [3]
    assert "socle degree 3" in call("cancellations", "1", "3", "6", "10", "12", "14")[1]


def test_lexideal_top():
    code, data = call_json("lexideal", "1", "2", "1", "1", "--top", "5")
    assert data["ideal"]["bound"] == 5
    assert data["ideal"]["pieces"]["2"] == ["x^2", "x y"]


def test_catalog_and_budget_exit_code():
    code, data = call_json("catalog", "1", "2", "1")
    assert code == EXIT_OK
    assert sorted(e["s"] for e in data["socle_vectors"]) == [[0, 0, 1], [0, 1, 1]]
    code, out, _ = call("catalog", "1", "3", "6", "10", "12", "14", "--budget", "5")
    assert code == EXIT_BUDGET
    assert "partial" in out


def test_compressed():
    assert call("compressed", "3", "4", "3")[1] == "1 3 3 3 1\n"
    code, data = call_json("compressed", "3", "4", "3", "--check", "--seed", "9")
    assert data["h"] == [1, 3, 3, 3, 1] and data["checked_seed"].startswith("9/")


@pytest.mark.parametrize(
    "argv",
    [
        ("maxsocle", "1", "3", "7"),
        ("minh", "1", "0", "1"),
        ("minh", "0", "1", "0"),
        ("forced", "1", "3"),
        ("forced", "1", "4", "8", "9", "12", "13", "9"),
        ("expand", "x", "3"),
        ("nosuch",),
    ],
)
def test_invalid_input_exit_code(argv):
    code, out, err = call(*argv)
    assert code == EXIT_INVALID
    assert out == ""
    assert err


def test_invalid_vector_names_degree():
    code, _, err = call("maxsocle", "1", "3", "7")
    assert "degree 1" in err


def test_verify_witness_round_trip(tmp_path):
    code, data = call_json("unique", "1", "3", "3", "1")
    path = tmp_path / "verdict.json"
    path.write_text(json.dumps(data))
    code, out, _ = call("verify-witness", str(path))
    assert code == EXIT_OK
    assert out.count(": ok") == len(data["witnesses"])
    tampered = data["witnesses"][0]
    tampered["s"] = [0, 1, 2, 1]
    path.write_text(json.dumps(tampered))
    assert call("verify-witness", str(path))[0] == EXIT_INVALID
    assert call("verify-witness", str(tmp_path / "missing.json"))[0] == EXIT_INVALID


def test_fromfile_arguments(tmp_path):
    args = tmp_path / "h.txt"
    args.write_text("maxsocle\n1\n4\n7\n9\n11\n10\n7\n5\n")
    assert call(f"@{args}")[1] == "0 0 1 0 2 4 2 5\n"


TEXT_JSON_CASES = [
    ("minh", "0", "0", "1", "0", "2", "4", "2", "5"),
    ("maxsocle", "1", "3", "6", "10", "12", "14"),
    ("mincodim", "0", "0", "2"),
    ("bound", "6", "2"),
    ("expand", "100", "4"),
    ("forced", "1", "4", "8", "9", "12", "13", "3"),
    ("cancellations", "1", "4", "7", "9", "11", "10", "7", "5"),
    ("compressed", "5", "6", "3"),
]


def numbers_in(value):
    if isinstance(value, bool) or value is None:
        return []
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        return []
    if isinstance(value, dict):
        return [n for v in value.values() for n in numbers_in(v)]
    return [n for v in value for n in numbers_in(v)]


@pytest.mark.parametrize("argv", TEXT_JSON_CASES)
def test_text_and_json_carry_the_same_numbers(argv):
    # Every output number in the JSON appears in the text (inputs are echoed only in JSON).
    _, text, _ = call(*argv)
    _, data = call_json(*argv)
    inputs = [int(a) for a in argv[1:] if a.lstrip("-").isdigit()]
    text_numbers = [int(tok) for tok in re.findall(r"\d+", text)]
    for n in map(abs, numbers_in(data)):
        assert n in text_numbers or n in inputs, (n, text)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "soclevec.cli", "minh", "0", "0", "1", "0", "2", "4", "2", "5"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "1 4 7 9 11 10 7 5\n"
