from __future__ import annotations

import json

import numpy as np
import pytest

from coverable.cli import KINDS, build_picture, format_grid, main, parse_grid, GridParseError
from coverable.core import Block, Window, evaluate, power

Q3 = ["bba", "bbb", "abb"]

SPECS = {
    "periodic": {"kind": "periodic", "q": Q3},
    "nu": {"kind": "nu", "source": {"kind": "random", "letters": "ab", "seed": 4}},
    "mu_aperiodic": {"kind": "mu_aperiodic", "q": Q3},
    "non_ur": {"kind": "non_ur", "q": Q3},
    "non_freq": {"kind": "non_freq", "q": ["ab", "bb"]},
    "msc_line": {"kind": "msc_line"},
    "random_coverable": {"kind": "random_coverable", "q": Q3, "seed": 2},
    "random": {"kind": "random", "letters": "abc", "seed": 9},
    "constant": {"kind": "constant", "letter": "z"},
}


def _write(tmp_path, name, content):
    p = tmp_path / name
    p.write_text(content if isinstance(content, str) else json.dumps(content))
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_every_kind_has_a_spec():
    assert set(SPECS) == set(KINDS)


def test_parse_grid_round_trip():
    text = "alphabet: ab\nbba\nbbb\nabb\n"
    alpha, b = parse_grid(text)
    assert b == Block.from_rows(Q3)
    assert format_grid(b, alpha) == text


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", 1, 1),
        ("bba\n", 1, 1),
        ("alphabet: ab\n", 2, 1),
        ("alphabet: ab\nab\na\n", 3, 2),
        ("alphabet: ab\nab\nac\n", 3, 2),
    ],
)
def test_parse_grid_errors(text, line, col):
    with pytest.raises(GridParseError) as ei:
        parse_grid(text)
    assert (ei.value.line, ei.value.column) == (line, col)


def test_analyze_q3(tmp_path, capsys):
    path = _write(tmp_path, "q3.txt", "alphabet: ab\n" + "\n".join(Q3) + "\n")
    code, out, _ = _run(capsys, "analyze", path, "--oracle")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"tool_version", "input", "window", "results"}
    res = doc["results"]
    assert res["covers"] == []
    assert res["primitive_root"] == Q3
    assert res["admits_aperiodic"] is True
    assert {"border": ["a"], "width": 1, "height": 1, "class": "diagonal", "corner_pair": "BL-TR"} in res["borders"]
    assert res["border_free_corner"]["free_pairs"] == []
    assert res["oracle"] == {"covers_agree": True, "root_agrees": True}


def test_analyze_nu_word(tmp_path, capsys):
    path = _write(tmp_path, "w.txt", "alphabet: ab\nababaaba\n")
    code, out, _ = _run(capsys, "analyze", path)
    assert code == 0
    assert ["aba"] in json.loads(out)["results"]["covers"]


def test_analyze_ragged_file(tmp_path, capsys):
    path = _write(tmp_path, "bad.txt", "alphabet: ab\nab\nabb\n")
    code, _, err = _run(capsys, "analyze", path)
    assert code == 2 and "line 3" in err


def test_analyze_missing_file(tmp_path, capsys):
    code, _, _ = _run(capsys, "analyze", str(tmp_path / "nope.txt"))
    assert code == 2


def test_generate_periodic(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, out, _ = _run(capsys, "generate", spec, "--window", "0,0,9,9")
    assert code == 0
    assert parse_grid(out)[1] == power(Block.from_rows(Q3), 3, 3)


def test_generate_is_deterministic(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["mu_aperiodic"])
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.txt"
        assert main(["generate", spec, "--window", "-20,7,50,40", "--out", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_generate_pixmap(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, out, _ = _run(capsys, "generate", spec, "--window", "0,0,3,3", "--format", "pixmap")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["P3", "3 3", "255"]
    # top row "bba": b is the second letter of the alphabet (black), a is white
    assert lines[3] == "0 0 0 0 0 0 255 255 255"


def test_generate_precondition(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", {"kind": "non_ur", "q": ["aa", "aa"]})
    code, _, err = _run(capsys, "generate", spec, "--window", "0,0,5,5")
    assert code == 3 and "admits_aperiodic_2d" in err


@pytest.mark.parametrize(
    "spec",
    [{"kind": "unknown"}, {"kind": "periodic"}, {"kind": "random"}, {"kind": "periodic", "q": ["ab", "a"]}, {"q": Q3}],
)
def test_generate_bad_spec(tmp_path, capsys, spec):
    path = _write(tmp_path, "s.json", spec)
    code, _, _ = _run(capsys, "generate", path, "--window", "0,0,5,5")
    assert code == 2


def test_generate_bad_window(tmp_path, capsys):
    path = _write(tmp_path, "s.json", SPECS["periodic"])
    assert _run(capsys, "generate", path, "--window", "0,0,5")[0] == 2
    assert _run(capsys, "generate", path, "--window", "0,0,0,5")[0] == 2


def test_grid_round_trip_all_kinds(tmp_path, capsys):
    rng = np.random.default_rng(0)
    for kind, spec in SPECS.items():
        path = _write(tmp_path, f"{kind}.json", spec)
        p = build_picture(spec)
        for _ in range(50 // len(SPECS) + 1):
            win = Window(int(rng.integers(-200, 200)), int(rng.integers(-200, 200)), int(rng.integers(1, 30)), int(rng.integers(1, 30)))
            code, out, _ = _run(capsys, "generate", path, "--window", ",".join(map(str, win.as_list())))
            assert code == 0
            assert parse_grid(out)[1] == evaluate(p, win)


def test_measure_entropy(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, out, _ = _run(capsys, "measure", spec, "--which", "entropy", "--window", "0,0,80,80", "--n-max", "8")
    assert code == 0
    doc = json.loads(out)
    assert doc["window"] == [0, 0, 80, 80]
    assert doc["results"]["entropy"][-1] <= 0.05


def test_measure_frequency(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, out, _ = _run(capsys, "measure", spec, "--which", "frequency", "--u", "a", "--n-list", "10,20,40,60")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["results"]["frequency"][-1] - 2 / 9) <= 0.02
    assert doc["window"] == [-60, -60, 121, 121]


def test_measure_msc_line(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["msc_line"])
    code, out, _ = _run(capsys, "measure", spec, "--which", "msc", "--window", "-50,-5,100,10", "--n-max", "9")
    assert code == 0
    entries = json.loads(out)["results"]["entries"]
    assert sorted({e["size"][0] for e in entries}) == [3, 5, 7, 9]


def test_measure_complexity_with_oracle(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["mu_aperiodic"])
    code, out, _ = _run(capsys, "measure", spec, "--which", "complexity", "--window", "0,0,40,40", "--n", "3", "--oracle")
    assert code == 0
    assert json.loads(out)["results"]["oracle_agrees"] is True


@pytest.mark.parametrize(
    "which,extra",
    [("recurrence", ["--k", "3"]), ("strong-msc", ["--n-max", "4", "--block-size-max", "2"]), ("bound-check", ["--q", "/".join(Q3), "--n", "3"])],
)
def test_measure_other_kinds(tmp_path, capsys, which, extra):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, out, _ = _run(capsys, "measure", spec, "--which", which, "--window", "0,0,60,60", *extra)
    assert code == 0
    assert set(json.loads(out)) == {"tool_version", "input", "window", "results"}


def test_measure_insufficient_window(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, _, _ = _run(capsys, "measure", spec, "--which", "entropy", "--window", "0,0,4,4", "--n-max", "8")
    assert code == 4


def test_measure_bound_check_on_non_cover(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, _, _ = _run(capsys, "measure", spec, "--which", "bound-check", "--window", "0,0,20,20", "--q", "a")
    assert code == 5


def test_certify_and_verify(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["mu_aperiodic"])
    cert = tmp_path / "cert.json"
    assert main(["certify", spec, "--window", "-10,-10,30,30", "--out", str(cert)]) == 0
    capsys.readouterr()
    code, out, _ = _run(capsys, "verify", str(cert))
    assert code == 0 and json.loads(out)["results"]["valid"] is True

    doc = json.loads(cert.read_text())
    ax, ay = doc["anchors"][0]
    doc["anchors"][0] = [ax + 1, ay]
    tampered = _write(tmp_path, "bad.json", doc)
    code, out, _ = _run(capsys, "verify", tampered)
    assert code == 5
    assert json.loads(out)["results"]["first_failure"] == [ax + 1, ay]


def test_verify_unknown_kind(tmp_path, capsys):
    doc = {"type": "cover", "spec": {"kind": "mystery"}, "q": ["a"], "region": [0, 0, 1, 1], "anchors": [[0, 0]]}
    assert _run(capsys, "verify", _write(tmp_path, "c.json", doc))[0] == 2


def test_certify_uncovered(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["periodic"])
    code, _, err = _run(capsys, "certify", spec, "--window", "0,0,9,9", "--q", "a")
    assert code == 5 and "uncovered" in err


def test_frontier_walk_certificate(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", {"kind": "random_coverable", "q": ["ab", "bb"], "seed": 3})
    walk = tmp_path / "walk.json"
    assert main(["certify", spec, "--window", "4,-6,10,10", "--walk", "--out", str(walk)]) == 0
    capsys.readouterr()
    assert _run(capsys, "verify", str(walk))[0] == 0
    doc = json.loads(walk.read_text())
    doc["origin"] = [5, -6]
    assert _run(capsys, "verify", _write(tmp_path, "w2.json", doc))[0] in (0, 5)
    doc = json.loads(walk.read_text())
    doc["walk"]["u"][1][0] += 1
    assert _run(capsys, "verify", _write(tmp_path, "w3.json", doc))[0] == 5


def test_reports_are_stable(tmp_path, capsys):
    spec = _write(tmp_path, "s.json", SPECS["non_ur"])
    args = ["measure", spec, "--which", "complexity", "--window", "-20,-20,40,40", "--n", "4"]
    a = _run(capsys, *args)[1]
    b = _run(capsys, *args)[1]
    assert a == b
    assert list(json.loads(a)) == ["input", "results", "tool_version", "window"]


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "coverable", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "0.1.0"
