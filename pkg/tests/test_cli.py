import csv
import io
import math

import pytest

from wqed import __version__
from wqed.cli import main

LORENTZ = """
schema = 1
model = "continuum"

[params]
gamma_right = 1.0
gamma_left = 1.0
gamma_loss = {loss}

[sweep]
half_width = 10.0
n = 1001
"""

SWITCH = """
schema = 1
model = "continuum"

[params]
gamma_right = 1.0
gamma_left = 1.0

[packet]
center = 0.0
sigma = {sigma}

[switch.on]
omega_e = 0.0

[switch.off]
omega_e = {shift}
"""


def run(tmp_path, text, *args, env=None, monkeypatch=None):
    cfg = tmp_path / "scenario.toml"
    cfg.write_text(text)
    out = tmp_path / "out.csv"
    code = main([*args, "--config", str(cfg), "--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def parse(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_spectrum_resonance(tmp_path):
    code, text = run(tmp_path, LORENTZ.format(loss=0.0), "spectrum")
    assert code == 0
    rows = parse(text)
    assert len(rows) == 1001
    mid = rows[500]
    assert float(mid["omega_or_delta"]) == 0.0 and mid["frame"] == "detuning-from-emitter"
    assert float(mid["T"]) == 0.0 and float(mid["R"]) == 1.0


def test_spectrum_lossy(tmp_path):
    code, text = run(tmp_path, LORENTZ.format(loss=2 / 9), "spectrum")
    mid = parse(text)[500]
    assert abs(float(mid["T"]) - 0.01) < 1e-12
    assert abs(float(mid["R"]) - 0.81) < 1e-12
    assert abs(float(mid["loss"]) - 0.18) < 1e-12


def test_csv_closure_and_header(tmp_path):
    _, text = run(tmp_path, LORENTZ.format(loss=0.3), "spectrum")
    lines = text.split("\n")
    assert lines[0] == f"# wqed {__version__}"
    assert lines[2].startswith("# scenario-sha256 ")
    assert lines[3] == "omega_or_delta,frame,t_re,t_im,r_re,r_im,T,R,loss"
    assert "\r" not in text and text.endswith("\n")
    for row in parse(text):
        assert abs(float(row["T"]) + float(row["R"]) + float(row["loss"]) - 1) <= 1e-9


def test_spectrum_deterministic(tmp_path):
    a = run(tmp_path, LORENTZ.format(loss=0.1), "spectrum")[1]
    b = run(tmp_path, LORENTZ.format(loss=0.1), "spectrum")[1]
    assert a == b


def test_empty_grid(tmp_path, capsys):
    text = LORENTZ.format(loss=0.0).replace("half_width = 10.0\nn = 1001", "points = []")
    assert run(tmp_path, text, "spectrum")[0] == 2
    assert "points" in capsys.readouterr().err


def test_validation_field_message(tmp_path, capsys):
    text = LORENTZ.format(loss=0.0).replace("gamma_right = 1.0", "gamma_right = -1.0")
    assert run(tmp_path, text, "spectrum")[0] == 2
    err = capsys.readouterr().err
    assert "[gamma_right]" in err and "gamma_right negative" in err


def test_bad_toml_and_schema(tmp_path):
    assert run(tmp_path, "schema = ", "spectrum")[0] == 2
    assert run(tmp_path, LORENTZ.format(loss=0.0).replace("schema = 1", "schema = 2"), "spectrum")[0] == 2
    assert run(tmp_path, LORENTZ.format(loss=0.0).replace('"continuum"', '"laser"'), "spectrum")[0] == 2


def test_missing_config(capsys):
    assert main(["spectrum"]) == 2
    assert main(["spectrum", "--config", "/nonexistent/file.toml"]) == 2


def test_flagged_points_exit_3(tmp_path, capsys):
    text = """
schema = 1
model = "cascade"
[params]
gamma_right = 1.0
gamma_left = 1.0
[cascade]
backend = "continuum"
separations = [1.0]
v_g = 100.0
k0 = 1.5707963267948966
sites = [{}, {}]
[sweep]
points = [-1.0, 0.0, 1.0]
"""
    code, out = run(tmp_path, text, "spectrum")
    assert code == 3
    assert parse(out)[1]["R"] == "1.0"
    assert "total reflection" in capsys.readouterr().err


def test_figure_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["figure", "crw-scatter", "--out", str(a)]) == 0
    assert main(["figure", "crw-scatter", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["figure", "lorentzian"]) == 0
    assert "delta,T,R" in capsys.readouterr().out


def test_figure_unknown():
    assert main(["figure", "nope"]) == 2


def test_metrics_narrow_packet(tmp_path):
    code, text = run(tmp_path, SWITCH.format(sigma=0.01, shift=10.0), "metrics")
    assert code == 0
    (row,) = parse(text)
    assert list(row) == ["e_t", "e_r", "f_t", "f_r", "p_t", "p_r", "contrast", "extinction_db"]
    assert float(row["e_r"]) >= 0.999
    assert abs(float(row["contrast"]) - (1 - 1 / 101)) < 1e-3


def test_metrics_same_state(tmp_path):
    (row,) = parse(run(tmp_path, SWITCH.format(sigma=1.0, shift=0.0), "metrics")[1])
    assert float(row["contrast"]) == 0.0 and float(row["extinction_db"]) == 0.0


def test_metrics_probe(tmp_path):
    text = SWITCH.format(sigma=1.0, shift=2.0).replace("[packet]\ncenter = 0.0\nsigma = 1.0", "[probe]\nomega = 0.0")
    (row,) = parse(run(tmp_path, text, "metrics")[1])
    assert abs(float(row["contrast"]) - 0.8) < 1e-12


def test_metrics_packet_too_wide_for_sweep(tmp_path):
    text = SWITCH.format(sigma=1.0, shift=2.0) + "\n[sweep]\nhalf_width = 3.0\nn = 101\n"
    assert run(tmp_path, text, "metrics")[0] == 2


def test_optimize_shift_hits_bound(tmp_path):
    text = SWITCH.format(sigma=1.0, shift=0.0).replace(
        "[packet]\ncenter = 0.0\nsigma = 1.0", "[probe]\nomega = 0.0"
    ) + '\n[optimize]\nobjective = "contrast"\nfree = { "switch.off.omega_e" = [0.0, 10.0] }\n'
    code, out = run(tmp_path, text, "optimize")
    assert code == 0
    rows = parse(out)
    assert rows[0].keys() == {"phase", "step", "switch.off.omega_e", "contrast"}
    best = rows[-1]
    assert best["phase"] == "best" and float(best["switch.off.omega_e"]) == 10.0
    assert abs(float(best["contrast"]) - 100 / 101) < 1e-12


def test_optimize_packet_center(tmp_path):
    text = SWITCH.format(sigma=0.5, shift=0.0) + (
        '\n[optimize]\nobjective = "e_r"\nfree = { "packet.center" = [-3.0, 3.0] }\n'
    )
    code, out = run(tmp_path, text, "optimize")
    best = parse(out)[-1]
    assert abs(float(best["packet.center"])) < 1e-3


def test_optimize_unbounded(tmp_path):
    text = SWITCH.format(sigma=1.0, shift=0.0) + (
        '\n[optimize]\nobjective = "f_t"\nfree = { "packet.center" = [-3.0, inf] }\n'
    )
    assert run(tmp_path, text, "optimize")[0] == 2
    text = SWITCH.format(sigma=1.0, shift=0.0) + '\n[optimize]\nobjective = "speed"\nfree = { "packet.center" = [0, 1] }\n'
    assert run(tmp_path, text, "optimize")[0] == 2


def test_optimize_threads_env(tmp_path, monkeypatch):
    text = SWITCH.format(sigma=1.0, shift=0.0).replace(
        "[packet]\ncenter = 0.0\nsigma = 1.0", "[probe]\nomega = 0.0"
    ) + '\n[optimize]\nfree = { "switch.off.omega_e" = [0.0, 10.0] }\npoints = 9\n'
    serial = run(tmp_path, text, "optimize")[1]
    monkeypatch.setenv("WQED_THREADS", "4")
    assert run(tmp_path, text, "optimize")[1] == serial
    monkeypatch.setenv("WQED_THREADS", "four")
    assert run(tmp_path, text, "optimize")[0] == 2


CRW = """
schema = 1
model = "crw"

[params]
omega_c = 0.0
xi = 1.0
g = 0.5

[oracle]
{oracle}
"""


def test_oracle_chain(tmp_path):
    code, out = run(tmp_path, CRW.format(oracle='kind = "chain"\nn_sites = 401\nn_k = 5'), "oracle")
    assert code == 0
    rows = parse(out)
    assert len(rows) == 20
    assert max(float(r["abs_diff"]) for r in rows) < 1e-8


def test_oracle_chain_two_emitters(tmp_path):
    code, out = run(tmp_path, CRW.format(oracle='kind = "chain"\nk = [0.4, 1.0, 2.5]\nemitter_sites = [0, 10]'), "oracle")
    assert code == 0


def test_oracle_tolerance_exceeded(tmp_path, capsys):
    code, _ = run(tmp_path, CRW.format(oracle='kind = "chain"\nn_k = 3\ntolerance = 1e-30'), "oracle")
    assert code == 3
    assert "tolerance" in capsys.readouterr().err


def test_oracle_time_half_width(tmp_path):
    oracle = 'kind = "time"\nlattice_length = 4001\npacket_width = 80.0\ndetunings = [0.125]'
    code, out = run(tmp_path, CRW.format(oracle=oracle), "oracle")
    assert code == 0
    rows = {r["quantity"]: r for r in parse(out)}
    assert abs(float(rows["R"]["oracle"]) - 0.5) < 0.02


def test_oracle_time_trajectory(tmp_path):
    traj = tmp_path / "traj.csv"
    oracle = (
        f'kind = "time"\nlattice_length = 801\npacket_width = 20.0\ndetunings = [0.0]\n'
        f'trajectory = "{traj}"\nsample_every = 1000\n'
    )
    text = CRW.format(oracle=oracle).replace("g = 0.5", "g = 1.0")
    code, _ = run(tmp_path, text, "oracle")
    assert code == 0
    rows = parse(traj.read_text())
    assert rows and set(rows[0]) == {"time", "site", "density"}


def test_oracle_boundary_touch(tmp_path, capsys):
    oracle = 'kind = "time"\nlattice_length = 1201\npacket_width = 80.0'
    assert run(tmp_path, CRW.format(oracle=oracle), "oracle")[0] == 2
    assert "packet touched boundary" in capsys.readouterr().err


def test_oracle_needs_crw(tmp_path):
    assert run(tmp_path, LORENTZ.format(loss=0.0) + '\n[oracle]\nkind = "chain"\n', "oracle")[0] == 2


def test_cavity_and_crw_spectra(tmp_path):
    cav = """
schema = 1
model = "cavity"
[params]
g = 5.0
[sweep]
half_width = 10.0
n = 401
"""
    rows = parse(run(tmp_path, cav, "spectrum")[1])
    assert rows[200]["frame"] == "detuning-from-cavity" and float(rows[200]["R"]) == 0.0
    crw = CRW.format(oracle="").replace("[oracle]", "[sweep]\nhalf_width = 2.0\nn = 101")
    rows = parse(run(tmp_path, crw, "spectrum")[1])
    assert float(rows[50]["R"]) == 1.0 and abs(float(rows[0]["R"]) - 1) < 1e-6


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
