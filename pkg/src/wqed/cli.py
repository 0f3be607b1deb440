"""
Command-line front end.

    wqed spectrum|figure|metrics|optimize|oracle [--config FILE] [--out FILE] [--threads N]

Output is CSV (UTF-8, LF line endings) preceded by a ``#`` comment block with
the tool version and a SHA-256 of the scenario. Floats are written as the
shortest decimal that round-trips (Python ``repr``), so identical inputs give
byte-identical files. Exit codes: 0 success, 2 invalid input or infeasible
request, 3 numerical-quality threshold exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from typing import Iterable, Optional

import numpy as np

from . import __version__
from .core import (
    CrwParams,
    FrequencyGrid,
    OracleError,
    ValidationError,
    WqedError,
    absolute_frequencies,
    make_grid,
)
from . import cascade, crw, oracles
from .figures import FIGURES, figure_data
from .optimize import grid_then_golden
from .packets import gaussian_packet, monochromatic_report, switch_report
from .scenario import Scenario, digest, parse, set_path
from . import scenario as scenario_mod

EXIT_OK, EXIT_INPUT, EXIT_QUALITY = 0, 2, 3
FLAGGED_LIMIT = 0.10
SPECTRUM_HEADER = ["omega_or_delta", "frame", "t_re", "t_im", "r_re", "r_im", "T", "R", "loss"]
METRICS_HEADER = ["e_t", "e_r", "f_t", "f_r", "p_t", "p_r", "contrast", "extinction_db"]
OBJECTIVES = ("contrast", "e_r", "f_t")
PACKET_SPAN = 10.0
PACKET_POINTS_PER_SIGMA = 32


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    x = float(v)
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return repr(x)


def write_csv(header: list, rows: Iterable, provenance: list) -> str:
    buf = io.StringIO()
    for line in provenance:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _provenance(command: str, source: bytes) -> list:
    return [f"wqed {__version__}", f"command {command}", f"scenario-sha256 {digest(source)}"]


# -- spectrum ---------------------------------------------------------------

def spectrum_rows(sc: Scenario):
    if sc.grid is None:
        raise ValidationError("spectrum needs a [sweep] block", "sweep")
    resp = sc.response()
    T, R = resp.T, resp.R
    rows = []
    for i, x in enumerate(resp.grid.points):
        t, r = resp.t[i], resp.r[i]
        rows.append((x, resp.grid.frame, t.real, t.imag, r.real, r.imag, T[i], R[i], 1.0 - T[i] - R[i]))
    return rows, resp


# -- metrics ----------------------------------------------------------------

def _line_scale(params) -> float:
    """Narrowest spectral feature the response can have (a rate), or inf."""
    if isinstance(params, CrwParams):
        rates = [params.g**2 / (2 * params.xi), params.gamma_loss]
    else:
        rates = [params.gamma_right + params.gamma_left + params.gamma_loss]
        if hasattr(params, "kappa"):
            rates = [params.gamma_right + params.gamma_left + params.kappa, params.gamma_loss, params.g]
    rates = [0.5 * r for r in rates if r > 0]
    return min(rates) if rates else math.inf


def _metrics_grid(sc: Scenario, states=()):
    """Absolute-frame grid (and packet centre) shared by the on and off states."""
    pk = sc.packet
    if sc.grid is not None:
        frame_grid = sc.grid
    else:
        sites = [p for st in (sc, *states) for p in (st.sites or (st.params,))]
        step = min([pk["sigma"]] + [_line_scale(p) for p in sites]) / PACKET_POINTS_PER_SIGMA
        n = 2 * int(math.ceil(PACKET_SPAN * pk["sigma"] / step)) + 1
        frame = "detuning-from-cavity" if (sc.backend or sc.model) == "cavity" else "detuning-from-emitter"
        frame_grid = make_grid(pk["center"], PACKET_SPAN * pk["sigma"], n, frame)
    pts = absolute_frequencies(frame_grid, sc.params)
    offset = float(pts[0] - frame_grid.points[0])
    return FrequencyGrid(pts, "absolute"), offset


def switch_metrics(sc: Scenario):
    """SwitchReport for the scenario's packet (or monochromatic probe)."""
    on = sc.with_overrides(sc.switch_on)
    off = sc.with_overrides(sc.switch_off)
    if sc.packet is not None:
        grid, offset = _metrics_grid(sc, (on, off))
        packet = gaussian_packet(sc.packet["center"] + offset, sc.packet["sigma"], grid)
        return switch_report(on.response(grid), off.response(grid), packet)
    if sc.probe is not None:
        frame = sc.grid.frame if sc.grid is not None else (
            "detuning-from-cavity" if (sc.backend or sc.model) == "cavity" else "detuning-from-emitter"
        )
        probe = float(absolute_frequencies(FrequencyGrid([sc.probe, sc.probe + 1.0], frame), sc.params)[0])
        return monochromatic_report(on.amplitudes_at(probe), off.amplitudes_at(probe))
    raise ValidationError("metrics need a [packet] or [probe] block", "packet")


# -- optimize ---------------------------------------------------------------

def run_optimize(sc: Scenario, threads: int = 1):
    block = sc.optimize
    if not isinstance(block, dict):
        raise ValidationError("optimize needs an [optimize] block", "optimize")
    objective = block.get("objective", "contrast")
    if objective not in OBJECTIVES:
        raise ValidationError(f"objective must be one of {OBJECTIVES}", "objective")
    free = block.get("free")
    if not isinstance(free, dict) or not 1 <= len(free) <= 3:
        raise ValidationError("optimize.free must name 1 to 3 parameters", "free")
    names = list(free)
    bounds = []
    for name in names:
        b = free[name]
        if not isinstance(b, list) or len(b) != 2:
            raise ValidationError(f"{name}: bounds must be [lo, hi]", name)
        lo, hi = float(b[0]), float(b[1])
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError(f"{name}: unbounded parameter", name)
        bounds.append((lo, hi))
    base = {k: v for k, v in sc.raw.items() if k != "optimize"}

    def fn(x):
        raw = base
        for name, v in zip(names, x):
            raw = set_path(raw, name, float(v))
        report = switch_metrics(parse(raw))
        return getattr(report, objective)

    res = grid_then_golden(
        fn,
        bounds,
        points=int(block.get("points", 33)),
        tol=float(block.get("tol", 1e-6)),
        threads=threads,
    )
    return names, objective, res


# -- oracle -----------------------------------------------------------------

def _oracle_chain(sc: Scenario, block: dict, threads: int):
    p = sc.params
    n_sites = int(block.get("n_sites", 401))
    tol = float(block.get("tolerance", 1e-8))
    if "k" in block:
        ks = [float(k) for k in block["k"]]
    else:
        n_k = int(block.get("n_k", 5))
        ks = list(np.linspace(0.05 * np.pi, 0.95 * np.pi, n_k))
    sites = [int(s) for s in block.get("emitter_sites", [0])]
    if sites[0] != 0 or any(b <= a for a, b in zip(sites, sites[1:])):
        raise ValidationError("emitter_sites must start at 0 and increase", "emitter_sites")
    atts = tuple(oracles.Attachment(s, p.g, p.omega_e) for s in sites)
    separations = tuple(b - a for a, b in zip(sites, sites[1:]))
    length = float(sum(separations))

    def one(k):
        prob = oracles.FiniteChainProblem(n_sites, p, k, atts)
        t_o, r_o = oracles.finite_chain_solve(prob)
        if len(sites) == 1:
            t_c, r_c = crw.amplitudes(p, k)
        else:
            layout = cascade.CascadeLayout((p,) * len(sites), separations)
            w = crw.dispersion(p, k)
            resp = cascade.cascade_amplitudes(
                layout, FrequencyGrid([w, w + 1e-13 * (1 + abs(w))], "absolute"), lambda om: np.full_like(om, k)
            )
            # cascade t is referred to the last site; the chain refers it to site 0
            t_c, r_c = complex(resp.t[0]) * np.exp(-1j * k * length), complex(resp.r[0])
        label = f"k={fmt(k)}"
        out = []
        for q, c, o in (("t_re", t_c.real, t_o.real), ("t_im", t_c.imag, t_o.imag),
                        ("r_re", r_c.real, r_o.real), ("r_im", r_c.imag, r_o.imag)):
            out.append((label, q, c, o, abs(c - o), tol))
        return out

    rows = []
    for chunk in oracles_map(one, ks, threads):
        rows.extend(chunk)
    return rows


def _oracle_time(sc: Scenario, block: dict, threads: int):
    p = sc.params
    n = int(block.get("lattice_length", 4001))
    width = float(block.get("packet_width", 80.0))
    tol = float(block.get("tolerance", 0.02))
    drift_tol = float(block.get("norm_tolerance", 1e-8))
    emitter = int(block.get("emitter_site", n // 2))
    start = int(block.get("packet_center", round(emitter - 6 * width)))
    detunings = [float(d) for d in block.get("detunings", [0.0])]
    traj_path = block.get("trajectory")
    sample_every = int(block.get("sample_every", 0))

    def one(delta):
        k0 = oracles.detuning_to_carrier(delta, p)
        run = oracles.propagate_packet(
            n, p, start, width, k0, emitter_site=emitter,
            sample_every=sample_every if traj_path else 0,
        )
        t_c, r_c = crw.amplitudes(p, k0)
        label = f"delta={fmt(delta)}"
        return run, [
            (label, "R", abs(r_c) ** 2, run.R_est, abs(abs(r_c) ** 2 - run.R_est), tol),
            (label, "T", abs(t_c) ** 2, run.T_est, abs(abs(t_c) ** 2 - run.T_est), tol),
            (label, "norm_drift", 0.0, run.norm_drift, run.norm_drift, drift_tol),
        ]

    rows = []
    traj = []
    for run, chunk in oracles_map(one, detunings, threads):
        rows.extend(chunk)
        traj.extend(run.trajectory)
    if traj_path:
        text = write_csv(["time", "site", "density"], traj, [f"wqed {__version__}", "trajectory"])
        with open(traj_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return rows


def oracles_map(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def oracle_rows(sc: Scenario, threads: int = 1):
    block = sc.oracle
    if not isinstance(block, dict):
        raise ValidationError("oracle needs an [oracle] block", "oracle")
    if not isinstance(sc.params, CrwParams) or sc.model != "crw":
        raise ValidationError("oracle runs need model = \"crw\"", "model")
    kind = block.get("kind", "chain")
    if kind == "chain":
        return _oracle_chain(sc, block, threads)
    if kind == "time":
        return _oracle_time(sc, block, threads)
    raise ValidationError(f"unknown oracle kind {kind!r}", "kind")


# -- entry point ------------------------------------------------------------

def _threads(arg: Optional[int]) -> int:
    env = os.environ.get("WQED_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CliError(f"WQED_THREADS must be an integer, got {env!r}") from None
    return max(1, arg or 1)


def _load(path):
    if not path:
        raise CliError("--config FILE is required for this command")
    try:
        with open(path, "rb") as fh:
            source = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return scenario_mod.loads(source.decode("utf-8")), source


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wqed", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"wqed {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("spectrum", "sweep t(omega), r(omega) for a scenario"),
        ("figure", "regenerate one standard dataset"),
        ("metrics", "switch efficiency, fidelity and contrast"),
        ("optimize", "grid + golden-section search over scenario parameters"),
        ("oracle", "compare closed forms with brute-force lattice oracles"),
    ]:
        p = sub.add_parser(name, help=help_)
        if name == "figure":
            p.add_argument("figure_id", help=", ".join(sorted(FIGURES)))
        p.add_argument("--config", metavar="FILE")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--threads", type=int, metavar="N")
    return parser


def run(args) -> tuple:
    """Execute a parsed command; returns ``(csv_text, exit_code, out_path)``."""
    threads = _threads(args.threads)
    if args.command == "figure":
        names, rows = figure_data(args.figure_id)
        prov = _provenance(f"figure {args.figure_id}", args.figure_id.encode())
        return write_csv(names, rows, prov), EXIT_OK, args.out

    sc, source = _load(args.config)
    out = args.out or sc.output
    prov = _provenance(args.command, source)

    if args.command == "spectrum":
        rows, resp = spectrum_rows(sc)
        code = EXIT_OK
        if resp.n_flagged > FLAGGED_LIMIT * len(resp.grid):
            print(
                f"wqed: {resp.n_flagged} of {len(resp.grid)} points hit total reflection at a site",
                file=sys.stderr,
            )
            code = EXIT_QUALITY
        return write_csv(SPECTRUM_HEADER, rows, prov), code, out

    if args.command == "metrics":
        report = switch_metrics(sc)
        row = report.as_row()
        return write_csv(METRICS_HEADER, [[row[k] for k in METRICS_HEADER]], prov), EXIT_OK, out

    if args.command == "optimize":
        names, objective, res = run_optimize(sc, threads)
        rows = [(phase, step, *x, v) for phase, step, x, v in res.trace]
        rows.append(("best", len(res.trace), *res.x, res.value))
        prov.append(f"objective {objective}")
        prov.append("best " + " ".join(f"{n}={fmt(v)}" for n, v in zip(names, res.x)) + f" value={fmt(res.value)}")
        return write_csv(["phase", "step", *names, objective], rows, prov), EXIT_OK, out

    if args.command == "oracle":
        rows = oracle_rows(sc, threads)
        bad = [r for r in rows if not r[4] <= r[5]]
        code = EXIT_OK
        if bad:
            for r in bad:
                print(f"wqed: {r[0]} {r[1]} differs by {fmt(r[4])} (tolerance {fmt(r[5])})", file=sys.stderr)
            code = EXIT_QUALITY
        header = ["checkpoint", "quantity", "closed_form", "oracle", "abs_diff", "tolerance"]
        return write_csv(header, rows, prov), code, out

    raise CliError(f"unknown command {args.command!r}")


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code, out = run(args)
    except CliError as exc:
        print(f"wqed: {exc}", file=sys.stderr)
        return exc.code
    except (WqedError, ValueError) as exc:
        field = getattr(exc, "field", None)
        where = f" [{field}]" if field else ""
        print(f"wqed: error{where}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
