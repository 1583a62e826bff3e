"""Configuration round trips and the command-line surface."""

import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffeisen.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main, render_lnq
from ffeisen.config import Config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _floats_absent(x):
    if isinstance(x, float):
        return False
    if isinstance(x, dict):
        return all(_floats_absent(v) for v in x.values())
    if isinstance(x, list):
        return all(_floats_absent(v) for v in x)
    return True


# config ----------------------------------------------------------------------


@pytest.mark.parametrize("raw", [
    dict(q=3, D="t^3+2t+2"),
    dict(q=3, D="t", alpha="t + 1", twist_c="1/t^3"),
    dict(q=9, D="t^3+t+a", modulus="a^2+1"),
    dict(q=5, D="t", alpha="2", epsilon_inf="2"),
])
def test_config_text_roundtrip(raw):
    cfg = Config.make(**raw)
    text = cfg.to_text()
    again = Config.from_text(text)
    assert again == cfg and again.to_text() == text


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=5).filter(lambda c: c[-1] != 0))
def test_config_canonicalizes_alpha(coeffs):
    loose = " + ".join(f"{c}*t^{i}" for i, c in enumerate(coeffs) if c)
    cfg = Config.make(3, "t", loose)
    assert Config.from_text(cfg.to_text()).to_text() == cfg.to_text()


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        Config.from_text("q=3\nD=t\ncolour=blue\n")


# subcommands -------------------------------------------------------------------


def test_lfunc_rational(capsys):
    code, out, _ = run(capsys, "lfunc", "--q", "3", "--D", "t", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["L"] == ["1"]


def test_classgroup_formula(capsys):
    code, out, _ = run(capsys, "classgroup", "--q", "3", "--D", "t^3+2t+2", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["class_number_formula"] and str(data["h"]) == data["f_inf*L(0)"]


def test_places_csv(capsys):
    code, out, _ = run(capsys, "places", "--q", "3", "--D", "t", "--bound", "1", "--format", "csv")
    assert code == EXIT_OK
    assert out.splitlines() == ["place,degree,splitting", "(t),1,ramified", "(t+1),1,inert", "(t+2),1,split",
                                "inf,1,ramified"]


def test_eta_json_is_exact(capsys):
    code, out, _ = run(capsys, "eta", "--q", "3", "--D", "t", "--y", "(t)=t", "--beta", "1", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"]
    assert data["paths"]["closed"]["total"] == {"lnq_coeff": "2/3"}
    assert _floats_absent(data)


def test_eta_constant_term(capsys):
    code, out, _ = run(capsys, "eta", "--q", "3", "--D", "t", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["paths"]["series"]["total"] == {"lnq_coeff": "0"}


def test_whittaker_debug_table(capsys):
    code, out, _ = run(capsys, "whittaker", "--q", "3", "--D", "t", "--y", "(t)=t", "--beta", "1",
                       "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and {r["oracle"] for r in rows} == {"agree"}


def test_verify_sweep_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--q", "3", "--D", "t", "--alpha", "1", "--sweep", "degbeta=2",
                       "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["summary"]["mismatch"] == 0 and data["summary"]["ok"] > 0
    keys = [r["instance"] for r in data["rows"]]
    assert keys == sorted(keys)


def test_verify_parallel_matches_serial(capsys):
    args = ["verify", "--q", "3", "--D", "2*t^2+1", "--sweep", "degbeta=2", "--format", "json"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert json.loads(serial) == json.loads(parallel)


def test_table_rows(capsys):
    code, out, _ = run(capsys, "table", "--q", "3", "--D", "t", "--y", "(t)=t", "--degbeta", "1", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and len(rows) == 8
    assert rows[0] == {"beta": "1", "diff": ["inf"], "eta": {"lnq_coeff": "2/3"}}


def test_config_file(tmp_path, capsys):
    path = tmp_path / "field.cfg"
    path.write_text("# a genus one field\nq=3\nD=t^3-t-1\n")
    code, out, _ = run(capsys, "lfunc", "--config", str(path), "--format", "json")
    assert code == EXIT_OK and json.loads(out)["genus"] == 1


@pytest.mark.parametrize("argv", [
    ["lfunc", "--q", "3", "--D", "t^2"],          # not squarefree
    ["lfunc", "--q", "4", "--D", "t"],            # even q
    ["lfunc", "--D", "t"],                        # no q
    ["eta", "--q", "3", "--D", "t", "--alpha", "t+1", "--twist-c", "1/t^2", "--beta", "1"],  # parity
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse exits on its own errors
        code = exc.code
    assert code == EXIT_USAGE


def test_mismatch_exit_code(monkeypatch, capsys):
    import ffeisen.cycles as cycles
    from ffeisen.eisenstein import EtaValue
    from ffeisen.lfunc import LnQValue

    monkeypatch.setattr(cycles, "eta_from_cycle", lambda req: EtaValue(1, LnQValue(99)))
    code, out, _ = run(capsys, "eta", "--q", "3", "--D", "t", "--y", "(t)=t", "--beta", "1")
    assert code == EXIT_MISMATCH and json.loads(out)["status"] == "mismatch"


def test_human_rendering():
    assert render_lnq("2/3", 3).startswith("2/3 · ln q  (≈ 0.732")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ffeisen", "lfunc", "--q", "3", "--D", "t", "--format", "json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["L"] == ["1"]
