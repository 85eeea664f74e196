import json
import math

import pytest

from hlindex.cli import main
from hlindex.graph import format_graph_text, parse_graph_text

from conftest import cycle, path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write_graph(tmp_path, G, volts=None, name="g.txt"):
    p = tmp_path / name
    p.write_text(format_graph_text(G, volts))
    return str(p)


def test_pp_then_hl(tmp_path, capsys):
    out = str(tmp_path / "heawood.txt")
    code, rep, _ = run(capsys, "pp", "--q", "2", "--output", out)
    assert code == 0
    assert (rep["vertices"], rep["edges"], rep["degree"], rep["girth"]) == (14, 21, 3, 6)
    assert rep["regular"] and rep["spectrum_ok"]
    G, _ = parse_graph_text(open(out).read())
    assert G.n == 14
    code, rep, _ = run(capsys, "hl", "--input", out)
    assert code == 0
    assert rep["R"] == pytest.approx(math.sqrt(2), abs=1e-6)
    assert rep["mainres"] == "extremal-projective-plane"
    assert rep["deltamed"] == "bound-holds"
    for key in ("n", "spectrum", "median_indices", "median_values", "R", "mainres", "deltamed"):
        assert key in rep
    assert rep["median_indices"] == [7, 8]


def test_hl_cycle_and_odd(tmp_path, capsys):
    code, rep, _ = run(capsys, "hl", "--input", write_graph(tmp_path, cycle(6)))
    assert code == 0 and rep["R"] == pytest.approx(1, abs=1e-9)
    assert rep["mainres"] == "skipped: Δ < 3"
    code, rep, _ = run(capsys, "hl", "--input", write_graph(tmp_path, path(5)))
    assert rep["R"] == 0.0
    code, rep, _ = run(capsys, "hl", "--input", write_graph(tmp_path, cycle(5)))
    assert rep["mainres"] == "skipped: not bipartite"
    assert rep["deltamed"] == "skipped: not bipartite"


def test_hl_parse_error_has_line_number(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("v 3\ne 0 1\ne 2 2\n")
    code, rep, err = run(capsys, "hl", "--input", str(p))
    assert code == 2 and rep is None
    assert "line 3" in err


def test_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "hl", "--input", str(tmp_path / "nope.txt"))
    assert code == 2 and "rejected" in err


def test_lift_c4_verify(tmp_path, capsys):
    f = write_graph(tmp_path, cycle(4), [1, 0, 0, 0])
    code, rep, _ = run(capsys, "lift", "--input", f, "--t", "2", "--verify")
    assert code == 0
    assert rep["lift_order"] == 8
    assert rep["verified"] is True and rep["max_discrepancy"] <= 1e-6
    assert rep["spectrum"]["max"] == pytest.approx(2)
    assert rep["spectrum"]["min"] == pytest.approx(-2)


def test_lift_t1_is_base(tmp_path, capsys):
    f = write_graph(tmp_path, cycle(6), [1, 0, 0, 0, 0, 0])
    code, rep, _ = run(capsys, "lift", "--input", f, "--t", "1")
    assert code == 0 and rep["spectrum"]["R"] == pytest.approx(1, abs=1e-9)
    code, _, err = run(capsys, "lift", "--input", f, "--t", "0")
    assert code == 2


def test_lift_pg2_even_stable(tmp_path, capsys):
    out = str(tmp_path / "pg.txt")
    run(capsys, "pp", "--q", "2", "--output", out)
    G, _ = parse_graph_text(open(out).read())
    volts = [0] * G.m
    volts[G.oriented(G.neighbours(7)[0], 7).edge] = 1
    f = write_graph(tmp_path, G, volts, "pgv.txt")
    _, r2, _ = run(capsys, "lift", "--input", f, "--t", "2")
    _, r6, _ = run(capsys, "lift", "--input", f, "--t", "6")
    assert abs(r2["spectrum"]["R"] - r6["spectrum"]["R"]) <= 1e-6


def test_lift_warns_on_large_voltage(tmp_path, capsys, caplog):
    f = write_graph(tmp_path, cycle(4), [7, 0, 0, 0])
    code, rep, _ = run(capsys, "lift", "--input", f, "--t", "3", "--verify")
    assert code == 0 and rep["verified"]
    assert "reduced mod t" in caplog.text


def test_pp_rejects_non_prime_power(tmp_path, capsys):
    code, rep, err = run(capsys, "pp", "--q", "6", "--output", str(tmp_path / "x.txt"))
    assert code == 2 and rep is None and "6 = 2 * 3" in err


def test_infinit_and_refined(capsys):
    code, rep, _ = run(capsys, "infinit", "--q", "2", "--tmax", "6")
    assert code == 0 and 0 < rep["R"] < math.sqrt(2) - 1
    code, rep, _ = run(capsys, "refined", "--t", "10", "--h", "3")
    assert code == 0 and rep["sign"] == -1


def test_sweep_stable_json(capsys):
    code, a, _ = run(capsys, "sweep", "--n", "8", "--trials", "40", "--seed", "3")
    code2, b, _ = run(capsys, "sweep", "--n", "8", "--trials", "40", "--seed", "3")
    assert code == code2 == 0
    a.pop("duration_s"), b.pop("duration_s")
    assert a == b


def test_check_failure_exit_code(capsys, monkeypatch):
    import hlindex.experiments as ex
    from hlindex.hl import CheckFailure

    def boom(*args):
        raise CheckFailure("forced")

    monkeypatch.setattr(ex, "refined_margin", boom)
    code, rep, err = run(capsys, "refined", "--t", "2", "--h", "2")
    assert code == 1 and rep is None and "forced" in err


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "hlindex", "refined", "--t", "2", "--h", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["sign"] == 1
