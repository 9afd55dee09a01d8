import json
import subprocess
import sys

import pytest

from ifsnet.cli import INCONCLUSIVE, INPUT_ERROR, OK, main
from ifsnet.exact import Scalar
from ifsnet.specfile import SpecError, corpus_names, corpus_text, load_corpus, parse_spec, parse_specfile, render_specfile

FOUR = """\
# four maps, two of them overlapping
name four_maps
map 1/3 0
map 1/4 1/4
map 1/4 1/2
map 1/4 3/4
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_four_maps():
    ifs = parse_spec(FOUR)
    assert ifs.k == 4 and ifs.r_min == Scalar(1, 0, 0) / 4


def test_parse_golden():
    spec = parse_specfile(
        "radicand 5\nmap (-1/2)+(1/2)*sqrt(5) 0/1\nmap (-1/2)+(1/2)*sqrt(5) (3/2)+(-1/2)*sqrt(5)\n"
    )
    rho = spec.maps[0][0]
    assert spec.radicand == 5 and rho * rho == 1 - rho
    assert spec.maps[1][1] == 1 - rho


@pytest.mark.parametrize(
    "text, line, col, fragment",
    [
        ("map 1/2 0\n", 0, 0, "at least two maps"),
        ("map 1/2 0\nmap 3/2 1/2\n", 2, 5, "|L| must be < 1"),
        ("map 1/2 0\n  map 1/2 x\n", 2, 11, ""),
        ("radicand 4\n", 1, 10, "square-free"),
        ("map 1/2 0\nradicand 5\nmap 1/3 1\n", 2, 1, "before the maps"),
        ("radicand 5\nmap (0/1)+(1/2)*sqrt(3) 0\n", 2, 5, "radicand"),
        ("map 1/2 0\nmap 1/2 1/2\nfrob 1\n", 3, 1, "unknown directive"),
        ("map 1/2\n", 1, 1, "takes 2 arguments"),
        ("map 0 0\nmap 1/2 0\n", 1, 5, "zero"),
        ("max-states -3\n", 1, 12, "positive"),
    ],
)
def test_parse_errors_locate_the_problem(text, line, col, fragment):
    with pytest.raises(SpecError) as info:
        parse_specfile(text, "t.ifs")
    err = info.value
    assert (err.line, err.column) == (line, col)
    assert fragment in str(err)
    if line:
        assert str(err).startswith(f"t.ifs:{line}:{col}: ")


def test_k_equals_one_is_rejected():
    with pytest.raises(SpecError, match="two maps"):
        parse_spec("map 1/2 0\n")


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_round_trip(name):
    spec = load_corpus(name)
    again = parse_specfile(render_specfile(spec))
    assert again == spec
    assert render_specfile(again) == render_specfile(spec)
    assert parse_spec(corpus_text(name)).maps == parse_spec(render_specfile(spec)).maps


def test_corpus_contents():
    assert set(corpus_names()) == {"cantor", "four_maps", "golden", "halves", "lau_ngai", "negative", "sqrt2_stress"}


def test_check_fnc_four_maps(capsys):
    code, out, _ = run(capsys, "check-fnc", "corpus:four_maps")
    rep = json.loads(out)
    assert code == OK and rep["fnc"]["verdict"] == "closed" and rep["fnc"]["states"] == 5
    keys = {s["neighbours"] for s in rep["states"]}
    assert "{4/1*x + -3/1; 3/1*x + 0/1}" in keys and len(keys) == 5


def test_check_fnc_cantor(capsys):
    code, out, _ = run(capsys, "check-fnc", "corpus:cantor")
    assert code == OK and json.loads(out)["fnc"]["states"] == 1


def test_net_intervals_at_one(capsys):
    code, out, _ = run(capsys, "net-intervals", "corpus:four_maps", "--alpha", "1")
    lines = out.splitlines()
    assert code == OK and len(lines) == 5
    assert lines[1].startswith("[1/4, 1/3]") and lines[1].endswith("generators (1) (2)")


def test_neighbours_at_one(capsys):
    code, out, _ = run(capsys, "neighbours", "corpus:four_maps", "--alpha", "1")
    assert code == OK and out.splitlines()[3].endswith("{1/1*x + 0/1}")


def test_normalize_echoes_conjugated_system(capsys, tmp_path):
    src = tmp_path / "raw.ifs"
    src.write_text("map 1/2 1\nmap 1/4 2\n")
    code, out, _ = run(capsys, "normalize", str(src))
    assert code == OK
    assert [f.L for f in parse_spec(out).maps] == [Scalar(1, 0, 0) / 2, Scalar(1, 0, 0) / 4]
    assert "map 1/4 3/4" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "check-fnc", "corpus:sqrt2_stress", "--max-states", "30")[0] == INCONCLUSIVE
    assert run(capsys, "constants", "corpus:sqrt2_stress", "--max-states", "30")[0] == INCONCLUSIVE
    assert run(capsys, "check-fnc", str(tmp_path / "missing.ifs"))[0] == INPUT_ERROR
    bad = tmp_path / "bad.ifs"
    bad.write_text("map 1/2 0\nmap 2 0\n")
    code, _, err = run(capsys, "check-fnc", str(bad))
    assert code == INPUT_ERROR and f"{bad}:2:5:" in err
    assert run(capsys, "check-fnc", "corpus:nope")[0] == INPUT_ERROR
    assert run(capsys, "net-intervals", "corpus:cantor", "--alpha", "3/2")[0] == INPUT_ERROR
    assert run(capsys, "check-fnc", "corpus:cantor", "--max-states", "0")[0] == INPUT_ERROR
    assert run(capsys, "bogus")[0] == INPUT_ERROR


def test_check_wsc_and_constants(capsys):
    code, out, _ = run(capsys, "check-wsc", "corpus:four_maps", "--depth", "3")
    wsc = json.loads(out)["wsc"]
    assert code == OK and wsc["verdict"] == "proved-via-fnc" and wsc["max_count"] <= wsc["bound_N"] == 32
    code, out, _ = run(capsys, "constants", "corpus:four_maps")
    k = json.loads(out)["constants"]
    assert code == OK and k["delta"]["exact"] == "1/16" and k["c"]["exact"] == "1/144"


def test_verify_is_deterministic_across_workers(capsys, tmp_path):
    outs = []
    for workers in ("1", "1", "4"):
        path = tmp_path / f"r{len(outs)}.json"
        code, _, _ = run(capsys, "verify", "corpus:halves", "--workers", workers, "-o", str(path))
        assert code == OK
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_graph_dot(capsys, tmp_path):
    dots = []
    for workers in ("1", "3"):
        path = tmp_path / f"g{workers}.dot"
        assert run(capsys, "graph", "corpus:four_maps", "--dot", str(path), "--workers", workers)[0] == OK
        dots.append(path.read_text())
    assert dots[0] == dots[1] and dots[0].startswith("digraph") and dots[0].count("[label=") >= 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ifsnet", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ifsnet ")
