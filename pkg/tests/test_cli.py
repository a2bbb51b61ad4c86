import csv
import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuclab import __version__
from opuclab.cli import main, write_atomic
from opuclab.config import ConfigError, ExperimentConfig, emit_config, parse_config

VERIFY_THM21 = """\
# Theorem check on a PF sequence
family.name = gaussian-pf
family.r = 0.5
n = 4
perturb.k = 2
perturb.kind = exponential-scale
perturb.rate = 1.0
theorem = thm2.1
"""


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# manifest: ")
    manifest = json.loads(lines[0][len("# manifest: "):])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    return manifest, rows


@pytest.fixture
def cfg_file(tmp_path):
    def write(text, name="run.cfg"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


# ---------------------------------------------------------------- config

def test_minimal_config_defaults():
    cfg = parse_config("command = opuc\nfamily.name = lebesgue\n")
    assert cfg.n == 4
    assert (cfg.grid_start, cfg.grid_stop, cfg.grid_count) == (-0.05, 0.05, 41)
    assert cfg.tol_quadrature == 1e-8
    assert cfg.resolved_format == "csv"


@pytest.mark.parametrize("text, field, line", [
    ("command = opuc\nfamily.name = rogers-szego\nfamily.q = 1.5\n", "family.q", 3),
    ("command = opuc\nfamily.name = lebesgue\nbogus = 1\n", "bogus", 3),
    ("command = opuc\nfamily.name = lebesgue\nn = four\n", "n", 3),
    ("command = det-sweep\nfamily.name = lebesgue\nperturb.k = 0\ngrid.count = 2\n", "grid.count", 4),
    ("command = opuc\nfamily.name = lebesgue\nn = 2\nn = 3\n", "n", 4),
    ("command = opuc\nfamily.name = lebesgue\ntol.quadrature = -1\n", "tol.quadrature", 3),
])
def test_config_errors_name_field_and_line(text, field, line):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    msg = str(exc.value)
    assert field in msg
    assert f"line {line}" in msg


@pytest.mark.parametrize("text, field", [
    ("command = verify\nfamily.name = lebesgue\nperturb.k = 0\n", "theorem"),
    ("command = det-sweep\nfamily.name = lebesgue\n", "perturb.k"),
    ("command = verify\ntheorem = thm2.1\nfamily.name = lebesgue\nperturb.k = 0\nout.format = csv\n",
     "out.format"),
])
def test_config_cross_field_errors(text, field):
    with pytest.raises(ConfigError, match=field.replace(".", r"\.")):
        parse_config(text)


def test_config_missing_equals():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("command opuc\n")


finite = st.floats(-10, 10, allow_nan=False).map(lambda x: float(np.float64(x)))
pos = st.floats(1e-12, 10, allow_nan=False)


@st.composite
def configs(draw):
    name = draw(st.sampled_from(["lebesgue", "rogers-szego", "gaussian-pf", "point-masses", "table"]))
    kw = {}
    if name == "rogers-szego":
        kw["family_q"] = draw(st.floats(0.01, 0.99))
    elif name == "gaussian-pf":
        kw["family_r"] = draw(st.floats(0.01, 0.99))
    elif name == "point-masses":
        m = draw(st.integers(1, 5))
        ang = draw(st.lists(st.floats(0, 6.28), min_size=m, max_size=m))
        kw["family_nodes"] = tuple(complex(np.exp(1j * a)) for a in ang)
        kw["family_weights"] = tuple(draw(st.lists(st.floats(0.1, 3), min_size=m, max_size=m)))
    elif name == "table":
        rest = draw(st.lists(st.complex_numbers(max_magnitude=0.4, allow_nan=False,
                                                allow_infinity=False), max_size=4))
        kw["family_values"] = (complex(1.0),) + tuple(rest)
    command = draw(st.sampled_from(["opuc", "popuc-zeros", "det-sweep", "zeros-sweep", "verify",
                                    "quadrature"]))
    if command in ("det-sweep", "zeros-sweep", "verify"):
        kw["perturb_k"] = draw(st.integers(0, 3))
    if command == "verify":
        kw["theorem"] = draw(st.sampled_from(["thm2.1", "thm2.3-pair", "cor2.6"]))
    start = draw(finite)
    b_kind = draw(st.sampled_from(["constant", "linear-phase"]))
    return ExperimentConfig(
        command=command, family_name=name, n=draw(st.integers(0, 8)),
        perturb_kind=draw(st.sampled_from(["linear", "exponential-scale"])),
        perturb_rate=draw(finite), b_kind=b_kind,
        b_beta0=draw(finite), b_beta1=draw(finite) if b_kind == "linear-phase" else 0.0,
        grid_start=start,
        grid_stop=start + draw(pos), grid_count=draw(st.integers(3, 200)),
        tol_noise_factor=draw(pos), tol_fd_step=draw(pos), tol_quadrature=draw(pos),
        out_path=draw(st.sampled_from(["-", "out.csv", "dir/run 1.json"])), **kw)


@settings(max_examples=100, deadline=None)
@given(configs())
def test_config_round_trip(cfg):
    text = emit_config(cfg)
    back = parse_config(text)
    assert back == cfg
    assert emit_config(back) == text


# ---------------------------------------------------------------- commands

def test_verify_thm21(capsys, cfg_file):
    code, out, _ = run_cli(capsys, "verify", "--config", cfg_file(VERIFY_THM21))
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["verdict"] == "confirmed"
    assert doc["manifest"]["version"] == __version__
    assert doc["manifest"]["config"]["theorem"] == "thm2.1"
    assert all(h["margin"] is not None for h in doc["result"]["hypotheses"].values())


def test_verify_hypothesis_not_met_exit_2(capsys, cfg_file):
    # the linear rate-1 variant leaves the PF window
    code, out, _ = run_cli(capsys, "verify", "--config", cfg_file(VERIFY_THM21),
                           "--perturb.kind", "linear")
    assert code == 2
    assert json.loads(out)["result"]["verdict"] == "hypothesis-not-met"


def test_verify_cor26_odd_n(capsys, cfg_file):
    code, out, err = run_cli(capsys, "verify", "--config", cfg_file(VERIFY_THM21),
                             "--theorem", "cor2.6", "--n", "3")
    assert code == 1
    assert "cor2.6 requires n even" in err
    assert out == ""


def test_det_sweep_c0(capsys):
    code, out, _ = run_cli(capsys, "det-sweep", "--family.name", "lebesgue", "--n", "0",
                           "--perturb.k", "0", "--grid.start", "-0.1", "--grid.stop", "0.1",
                           "--grid.count", "3")
    assert code == 0
    manifest, rows = read_csv(out)
    assert list(rows[0]) == ["t", "det", "d_jacobi", "d_fd", "pd_ok"]
    for r in rows:
        assert float(r["det"]) == pytest.approx(1 + float(r["t"]), abs=1e-15)
        assert float(r["d_jacobi"]) == 1
        assert r["pd_ok"] == "1"
    assert manifest["config"]["n"] == 0
    assert "residual" in manifest["tolerances"]


def test_zeros_sweep_schema(capsys):
    code, out, _ = run_cli(capsys, "zeros-sweep", "--family.name", "rogers-szego",
                           "--family.q", "0.5", "--perturb.k", "1", "--perturb.rate", "0.1",
                           "--b.beta0", "3.141592653589793")
    assert code == 0
    _, rows = read_csv(out)
    assert list(rows[0]) == ["t", "zero_index", "re", "im", "phi_unwrapped", "residual"]
    assert len(rows) == 41 * 5
    for r in rows:
        z = complex(float(r["re"]), float(r["im"]))
        assert abs(abs(z) - 1) < 1e-9
        assert np.isfinite(float(r["residual"]))


@pytest.mark.parametrize("command, header", [
    ("opuc", ["kind", "index", "re", "im"]),
    ("popuc-zeros", ["zero_index", "re", "im", "phi", "residual", "unimodularity"]),
    ("quadrature", ["node_index", "re", "im", "weight"]),
])
def test_static_commands(capsys, command, header):
    code, out, _ = run_cli(capsys, command, "--family.name", "gaussian-pf", "--family.r", "0.5")
    assert code == 0
    _, rows = read_csv(out)
    assert list(rows[0]) == header
    if command == "quadrature":
        assert sum(float(r["weight"]) for r in rows) == pytest.approx(1.0)


def test_conjecture_command(capsys):
    code, out, _ = run_cli(capsys, "conjecture", "--family.name", "rogers-szego",
                           "--family.q", "0.25", "--n", "6", "--perturb.k", "2",
                           "--perturb.kind", "exponential-scale", "--perturb.rate", "0.1")
    assert code == 0
    _, rows = read_csv(out)
    assert len(rows) == 3


def test_pd_loss_is_an_error_for_static_commands(capsys):
    code, _, err = run_cli(capsys, "popuc-zeros", "--family.name", "table",
                           "--family.values", "1, 1.5", "--n", "1")
    assert code == 1
    assert err.startswith("error:")


def test_numbers_are_finite_with_17_digits(capsys):
    code, out, _ = run_cli(capsys, "popuc-zeros", "--family.name", "rogers-szego", "--family.q", "0.3")
    _, rows = read_csv(out)
    for r in rows:
        for key in ("re", "im", "phi"):
            assert np.isfinite(float(r[key]))
            assert float(repr(float(r[key]))) == float(r[key])


def test_flags_win_over_file(capsys, cfg_file):
    code, out, _ = run_cli(capsys, "verify", "--config", cfg_file(VERIFY_THM21), "--n", "2")
    assert json.loads(out)["manifest"]["config"]["n"] == 2


def test_flag_error_has_field(capsys):
    code, _, err = run_cli(capsys, "opuc", "--family.name", "rogers-szego", "--family.q", "1.5")
    assert code == 1
    assert "family.q" in err


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "opuc", "--config", str(tmp_path / "nope.cfg"))
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------- outputs

@pytest.mark.parametrize("command", ["det-sweep", "verify"])
def test_outputs_are_deterministic(tmp_path, cfg_file, command):
    out = tmp_path / "result.out"
    args = [command, "--config", cfg_file(VERIFY_THM21), "--out.path", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert main(args) == 0
    assert out.read_bytes() == first


def test_atomic_write_leaves_no_temp_files(tmp_path):
    p = tmp_path / "x.csv"
    write_atomic(str(p), "a,b\n")
    write_atomic(str(p), "c,d\n")
    assert p.read_text() == "c,d\n"
    assert os.listdir(tmp_path) == ["x.csv"]


def test_atomic_write_failure_keeps_old_file(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("old")

    class Boom:
        def __str__(self):
            raise RuntimeError

    with pytest.raises(TypeError):
        write_atomic(str(p), Boom())
    assert p.read_text() == "old"
    assert os.listdir(tmp_path) == ["x.csv"]


def test_console_script_exit_code(tmp_path, cfg_file):
    path = cfg_file(VERIFY_THM21)
    proc = subprocess.run([sys.executable, "-m", "opuclab.cli", "verify", "--config", path,
                           "--out.path", str(tmp_path / "r.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads((tmp_path / "r.json").read_text())["result"]["verdict"] == "confirmed"
    proc = subprocess.run([sys.executable, "-m", "opuclab.cli", "--version"],
                          capture_output=True, text=True)
    assert __version__ in proc.stdout
