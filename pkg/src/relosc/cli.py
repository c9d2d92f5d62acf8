"""Command-line front end.

    relosc simulate --beta 0.5 --method trial --t-end 30 --samples 3000
    relosc energy   --beta 0.8 --method hbm
    relosc period   --beta 0.8
    relosc compare  --betas 0.1:0.9:0.1 --methods trial,hbm --format json
    relosc figure   --id 3

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
Output is comma-separated text with ``#`` metadata lines, or JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from relosc import __version__
from relosc.analytic import freq_ratio, period_ratio, trial_solution
from relosc.core import (
    Beta,
    InsufficientSpan,
    InvalidRequest,
    InvalidScale,
    OutOfRange,
    QuadratureFailure,
    RelOscError,
    StepSizeUnderflow,
    Superluminal,
    Trajectory,
    make_beta,
)
from relosc.diagnostics import (
    FREQ_MODES,
    energy_series,
    potential_frequency,
    resolve_method,
    sweep,
)
from relosc.dynamics import hook_force
from relosc.hbm import hbm_omega, hbm_solution
from relosc.oracle import IntegratorConfig, NumericSolution, exact_period, integrate, measure_period

COMMANDS = ("simulate", "energy", "period", "compare", "figure")
FIGURES = ("1", "2a", "2b", "3", "4a", "4b", "5")
FIG1_BETAS = (0.1, 0.3, 0.5, 0.7)
FIG3_BETAS = (0.05, 0.365, 0.68, 0.995)
FIG45_BETA = 0.8
FIG2_STEP = 0.005

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
_VALIDATION_ERRORS = (OutOfRange, InvalidRequest, InvalidScale)
_NUMERIC_ERRORS = (QuadratureFailure, StepSizeUnderflow, Superluminal, InsufficientSpan)

DEFAULTS = {
    "method": "trial",
    "methods": "trial,hbm",
    "t_end": None,
    "samples": None,
    "tol_rel": 1e-12,
    "tol_abs": 1e-12,
    "max_step": 0.1,
    "freq_override": "native",
    "format": "csv",
    "out": None,
    "beta": None,
    "betas": None,
    "id": None,
}


class UsageError(RelOscError, ValueError):
    pass


@dataclass(frozen=True)
class Table:
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (endpoints included within half a step) or a comma list."""
    text = str(text).strip()
    if ":" not in text:
        try:
            return [float(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"cannot parse beta list {text!r}")
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"beta grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse beta grid {text!r}")
    if not step > 0 or stop < start:
        raise UsageError(f"beta grid {text!r} needs step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 0.5))
    return [round(start + i * step, 12) for i in range(n + 1)]


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: Beta | None = None
    betas: tuple | None = None
    method: str = "trial"
    methods: tuple = ("trial", "hbm")
    t_end: float | None = None
    samples: int | None = None
    integrator: IntegratorConfig | None = None
    freq_mode: str = "native"
    fmt: str = "csv"
    out: str | None = None
    figure: str | None = None

    @classmethod
    def from_options(cls, command: str, opts: dict) -> "RunConfig":
        """Validate merged options; raises before anything is computed."""
        if command not in COMMANDS:
            raise UsageError(f"unknown command {command!r}")
        if opts["format"] not in ("csv", "json"):
            raise UsageError(f"unknown format {opts['format']!r}")
        if opts["freq_override"] not in FREQ_MODES:
            raise UsageError(f"--freq-override must be one of {', '.join(FREQ_MODES)}")
        t_end = opts["t_end"]
        if t_end is not None and not (float(t_end) > 0 and math.isfinite(float(t_end))):
            raise UsageError(f"--t-end must be positive, got {t_end!r}")
        samples = opts["samples"]
        if samples is not None and int(samples) < 2:
            raise UsageError(f"--samples must be at least 2, got {samples!r}")

        beta = betas = fig = None
        if command in ("simulate", "energy", "period"):
            if opts["beta"] is None:
                raise UsageError(f"{command} requires --beta")
            beta = make_beta(float(opts["beta"]))
        if opts["betas"] is not None and command != "compare":
            raise UsageError("--betas is only valid for compare")
        if command == "compare":
            if opts["betas"] is None:
                raise UsageError("compare requires --betas")
            betas = tuple(make_beta(b) for b in parse_grid(opts["betas"]))
            if not betas:
                raise UsageError("empty beta grid")
        if command == "figure":
            fig = str(opts["id"]) if opts["id"] is not None else None
            if fig not in FIGURES:
                raise UsageError(f"unknown figure id {opts['id']!r}; expected one of {', '.join(FIGURES)}")
        elif opts["id"] is not None:
            raise UsageError("--id is only valid for figure")

        methods = opts["methods"]
        if isinstance(methods, str):
            methods = [m for m in methods.split(",") if m.strip()]
        methods = tuple(resolve_method(m.strip()) for m in methods)
        if not methods:
            raise UsageError("--methods must not be empty")
        integrator = IntegratorConfig(
            t_end=float(t_end) if t_end is not None else 1.0,
            rel_tol=float(opts["tol_rel"]),
            abs_tol=float(opts["tol_abs"]),
            max_step=float(opts["max_step"]),
        )
        return cls(
            command=command,
            beta=beta,
            betas=betas,
            method=resolve_method(str(opts["method"])),
            methods=methods,
            t_end=float(t_end) if t_end is not None else None,
            samples=int(samples) if samples is not None else None,
            integrator=integrator,
            freq_mode=opts["freq_override"],
            fmt=opts["format"],
            out=opts["out"],
            figure=fig,
        )

    def integrator_for(self, t_end: float) -> IntegratorConfig:
        c = self.integrator
        return IntegratorConfig(t_end=t_end, rel_tol=c.rel_tol, abs_tol=c.abs_tol, max_step=c.max_step)


def _handle(cfg: RunConfig, method: str, beta: Beta, t_end: float | None):
    if method == "trial":
        return trial_solution(beta)
    if method == "hbm":
        return hbm_solution(beta)
    span = t_end if t_end is not None else 10.0 * exact_period(beta)
    conf = cfg.integrator_for(span)
    return NumericSolution(integrate(beta, conf), conf)


def cmd_simulate(cfg: RunConfig) -> Table:
    t_end = cfg.t_end if cfg.t_end is not None else 30.0
    n = cfg.samples if cfg.samples is not None else 3000
    handle = _handle(cfg, cfg.method, cfg.beta, t_end)
    traj = handle.sample(t_end, n)
    rows = list(zip(traj.t.tolist(), traj.x.tolist(), traj.xdot.tolist()))
    meta = {"beta": cfg.beta.value, "method": cfg.method, "t_end": t_end, "samples": n}
    if cfg.method == "numeric":
        meta.update(tol_rel=cfg.integrator.rel_tol, tol_abs=cfg.integrator.abs_tol)
    return Table(["t", "x", "xdot"], rows, meta)


def cmd_energy(cfg: RunConfig) -> Table:
    handle = _handle(cfg, cfg.method, cfg.beta, cfg.t_end)
    t_end = cfg.t_end if cfg.t_end is not None else 2.0 * handle.period_hint
    n = cfg.samples if cfg.samples is not None else 2000
    w = potential_frequency(handle, cfg.freq_mode)
    s = energy_series(handle, t_end, n, freq_override=w)
    rows = list(zip(s.t.tolist(), s.x.tolist(), s.kinetic.tolist(), s.potential.tolist(), s.total.tolist()))
    meta = {"beta": cfg.beta.value, "method": cfg.method, "t_end": t_end, "samples": n,
            "freq_mode": cfg.freq_mode, "freq_ratio_used": w}
    return Table(["t", "x", "kinetic", "potential", "total"], rows, meta)


def cmd_period(cfg: RunConfig) -> Table:
    b = cfg.beta
    exact = exact_period(b)
    values = {
        "period_trial": 2.0 * math.pi * period_ratio(b),
        "period_hbm": 2.0 * math.pi / hbm_omega(b),
        "period_exact": exact,
        "period_measured": measure_period(integrate(b, cfg.integrator_for(3.5 * exact))),
    }
    rows = list(values.items())
    names = list(values)
    for i, a in enumerate(names):
        for c in names[i + 1:]:
            rows.append((f"reldiff_{a[7:]}_{c[7:]}", (values[a] - values[c]) / values[c]))
    return Table(["quantity", "value"], rows, {"beta": b.value})


_REPORT_COLUMNS = (
    "beta", "method", "freq_ratio_used", "mean_total", "max_abs_deviation", "peak_to_peak",
    "period_estimate", "period_error_vs_oracle", "amplitude_estimate",
    "amplitude_error_vs_oracle", "initial_velocity_error", "error",
)


def cmd_compare(cfg: RunConfig) -> tuple[Table, int]:
    reports = sweep(cfg.betas, cfg.methods, freq_mode=cfg.freq_mode,
                    numeric_config=None)
    rows = [tuple(r.as_dict()[c] for c in _REPORT_COLUMNS) for r in reports]
    meta = {"betas": [b.value for b in cfg.betas], "methods": list(cfg.methods),
            "freq_mode": cfg.freq_mode}
    code = EXIT_OK if any(r.ok for r in reports) else EXIT_NUMERIC
    return Table(list(_REPORT_COLUMNS), rows, meta), code


def _fig2_betas() -> np.ndarray:
    n = int(round(1.0 / FIG2_STEP))
    return np.array([round(i * FIG2_STEP, 12) for i in range(1, n)])


def cmd_figure(cfg: RunConfig) -> Table:
    fig = cfg.figure
    meta = {"figure": fig}
    if fig == "1":
        t_end = cfg.t_end if cfg.t_end is not None else 40.0
        n = cfg.samples if cfg.samples is not None else 801
        rows = []
        for b in FIG1_BETAS:
            traj = trial_solution(b).sample(t_end, n)
            rows += [(b, t, x) for t, x in zip(traj.t.tolist(), traj.x.tolist())]
        meta.update(betas=list(FIG1_BETAS), method="trial", t_end=t_end, samples=n)
        return Table(["beta", "t", "x"], rows, meta)
    if fig in ("2a", "2b"):
        betas = _fig2_betas()
        fn, col = (freq_ratio, "freq_ratio") if fig == "2a" else (period_ratio, "period_ratio")
        meta.update(beta_step=FIG2_STEP)
        return Table(["beta", col], [(b, fn(b)) for b in betas.tolist()], meta)
    if fig == "3":
        n = cfg.samples if cfg.samples is not None else 401
        xs = np.linspace(-1.0, 1.0, n)
        rows = []
        for b in FIG3_BETAS:
            f = hook_force(b, xs)
            rows += [(b, x, v) for x, v in zip(xs.tolist(), f.tolist())]
        meta.update(betas=list(FIG3_BETAS), x_range=[-1.0, 1.0], samples=n)
        return Table(["beta", "x", "force"], rows, meta)

    handle = trial_solution(FIG45_BETA) if fig in ("4a", "4b") else hbm_solution(FIG45_BETA)
    w = potential_frequency(handle, cfg.freq_mode)
    n = cfg.samples if cfg.samples is not None else 2000
    periods = 1.0 if fig == "4b" else 2.0
    t_end = cfg.t_end if cfg.t_end is not None else periods * handle.period_hint
    s = energy_series(handle, t_end, n, freq_override=w)
    meta.update(beta=FIG45_BETA, method=handle.label, t_end=t_end, samples=n,
                freq_mode=cfg.freq_mode, freq_ratio_used=w)
    if fig == "4b":
        rows = list(zip(s.x.tolist(), s.kinetic.tolist(), s.potential.tolist(), s.total.tolist()))
        return Table(["x", "kinetic", "potential", "total"], rows, meta)
    rows = list(zip(s.t.tolist(), s.kinetic.tolist(), s.potential.tolist(), s.total.tolist()))
    return Table(["t", "kinetic", "potential", "total"], rows, meta)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(u) for u in v)
    return str(v)


def render(table: Table, command: str, fmt: str) -> str:
    if fmt == "json":
        doc = {"tool": "relosc", "version": __version__, "command": command,
               "parameters": table.meta, "columns": table.columns,
               "rows": [list(r) for r in table.rows]}
        return json.dumps(doc, sort_keys=True, allow_nan=True) + "\n"
    lines = [f"# tool: relosc {__version__}", f"# command: {command}"]
    lines += [f"# {k}: {_fmt(v)}" for k, v in table.meta.items()]
    lines.append(",".join(table.columns))
    lines += [",".join(_fmt(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def read_table(path: str) -> tuple[dict, list, np.ndarray]:
    """Read a numeric CSV written by this tool: ``(meta, columns, data)``."""
    meta, columns, rows = {}, None, []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                meta[key.strip()] = value.strip()
            elif columns is None:
                columns = line.split(",")
            elif line:
                rows.append([float(v) for v in line.split(",")])
    return meta, columns, np.array(rows)


def read_trajectory(path: str) -> Trajectory:
    """Trajectory from a ``simulate`` CSV file."""
    meta, columns, data = read_table(path)
    if columns != ["t", "x", "xdot"]:
        raise UsageError(f"{path} is not a trajectory file (columns {columns})")
    return Trajectory(data[:, 0], data[:, 1], data[:, 2], meta.get("method", "file"),
                      make_beta(float(meta["beta"])))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relosc", description="Relativistic harmonic oscillator toolkit")
    parser.add_argument("--version", action="version", version=f"relosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    S = argparse.SUPPRESS

    def common(p):
        p.add_argument("--config", default=S, help="JSON file with option values")
        p.add_argument("--format", choices=("csv", "json"), default=S)
        p.add_argument("--out", default=S, help="output path (default: stdout)")
        p.add_argument("--tol-rel", dest="tol_rel", type=float, default=S)
        p.add_argument("--tol-abs", dest="tol_abs", type=float, default=S)
        p.add_argument("--max-step", dest="max_step", type=float, default=S)
        p.add_argument("--freq-override", dest="freq_override", choices=FREQ_MODES, default=S,
                       help="frequency ratio used in the potential energy")
        p.add_argument("--t-end", dest="t_end", type=float, default=S)
        p.add_argument("--samples", type=int, default=S)

    for name in ("simulate", "energy", "period"):
        p = sub.add_parser(name)
        p.add_argument("--beta", type=float, default=S)
        if name != "period":
            p.add_argument("--method", default=S, help="trial | hbm | ode")
        common(p)
    p = sub.add_parser("compare")
    p.add_argument("--betas", default=S, help="start:stop:step or comma list")
    p.add_argument("--methods", default=S, help="comma list of trial, hbm, ode")
    common(p)
    p = sub.add_parser("figure")
    p.add_argument("--id", default=S, help=f"one of {', '.join(FIGURES)}")
    common(p)
    return parser


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}")
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    cli_opts = vars(ns)
    command = cli_opts.pop("command")
    try:
        opts = dict(DEFAULTS)
        if "config" in cli_opts:
            opts.update(load_config(cli_opts.pop("config")))
        opts.update(cli_opts)
        cfg = RunConfig.from_options(command, opts)
    except (UsageError, *_VALIDATION_ERRORS, TypeError, ValueError) as exc:
        print(f"relosc {command}: error: {exc}", file=stderr)
        return EXIT_USAGE

    code = EXIT_OK
    try:
        if command == "compare":
            table, code = cmd_compare(cfg)
        else:
            table = {"simulate": cmd_simulate, "energy": cmd_energy,
                     "period": cmd_period, "figure": cmd_figure}[command](cfg)
    except _NUMERIC_ERRORS as exc:
        print(f"relosc {command}: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    except _VALIDATION_ERRORS as exc:
        print(f"relosc {command}: error: {exc}", file=stderr)
        return EXIT_USAGE

    text = render(table, command, cfg.fmt)
    if cfg.out is None:
        stdout.write(text)
    else:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
