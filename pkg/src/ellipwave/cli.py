"""Command-line front end: ``solve``, ``verify`` and ``sweep``.

A run is described by a plain ``key = value`` file (an optional ``[run]``
header is allowed) plus ``--set key=value`` overrides.  Output is CSV with
``#`` header lines or a JSON object with ``meta`` and ``rows``.

Exit codes: 0 success, 1 input or schema error, 2 construction infeasible,
3 ``verify`` ran but at least one oracle missed its threshold.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from .constructor import (
    Construction,
    construct_dsw,
    construct_fl,
    construct_nls,
    dsw_pair_evaluator,
    evaluate_field_fl,
    evaluate_field_nls,
)
from .errors import ConstructionError, ParameterError, PoleError
from .reductions import (
    DswParams,
    FokasLenellsParams,
    NlsParams,
    fl_velocity_bracket,
    is_integrable_dsw,
)
from .verify import (
    GridSpec,
    ShootingRejected,
    conserved_c0_drift,
    dsw_coupling_residual,
    ode_residual_first_order,
    ode_residual_second_order,
    pde_residual_dsw,
    pde_residual_fl,
    pde_residual_nls,
    rk4_shooting_check,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_THRESHOLD = 3

SCHEMAS = {
    "fl": ("a1", "a2", "b", "sigma", "alpha", "lambda", "mu", "kappa", "omega", "c0"),
    "nls": ("sigma", "k1", "k2", "omega", "c0"),
    "dsw": ("p", "q", "r", "s", "omega", "c0", "c1", "c2"),
}
OPTIONAL = {"fl": ("theta0",), "nls": ("theta0", "ys"), "dsw": ()}
COMMON = ("equation", "eta0", "start", "stop", "n", "h_fd", "times")
DEFAULTS = {"eta0": 0.0, "start": -5.0, "stop": 5.0, "n": 1001, "h_fd": 1e-3, "theta0": 0.0}
LIST_KEYS = ("times", "ys")

# acceptance thresholds for each oracle
THRESHOLDS = {
    "fl_velocity_bracket": 1e-12,
    "nls_velocity": 0.0,
    "root_sum": 1e-10,
    "ode_first_order": 1e-9,
    "ode_second_order": 1e-6,
    "c0_drift_std": 1e-10,
    "rk4_shooting": 1e-6,
    "pde_fl": 1e-5,
    "pde_nls": 1e-5,
    "pde_dsw": 1e-4,
    "dsw_coupling": 1e-9,
}


class InputError(Exception):
    """Bad configuration: unknown or missing key, unparsable value."""


@dataclass
class RunConfig:
    equation: str
    values: dict[str, float] = field(default_factory=dict)
    lists: dict[str, tuple[float, ...]] = field(default_factory=dict)

    @property
    def grid(self) -> GridSpec:
        v = self.values
        try:
            return GridSpec(v["start"], v["stop"], int(v["n"]), v["h_fd"])
        except ValueError as exc:
            raise InputError(str(exc)) from None

    def with_value(self, key: str, value: float) -> "RunConfig":
        return replace(self, values={**self.values, key: value})


def allowed_keys(equation: str) -> tuple[str, ...]:
    return SCHEMAS[equation] + OPTIONAL[equation] + COMMON


def read_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc.strerror}") from None
    if not text.lstrip().startswith("["):
        text = "[run]\n" + text
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise InputError(f"malformed config {path!r}: {exc}") from None
    out: dict[str, str] = {}
    for section in parser.sections():
        out.update(parser[section])
    return out


def parse_overrides(items) -> dict[str, str]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _parse_float(key: str, text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise InputError(f"key {key!r}: cannot parse {text!r} as a number") from None
    if not math.isfinite(val):
        raise InputError(f"key {key!r}: value must be finite")
    return val


def build_config(raw: dict[str, str], equation: str | None) -> RunConfig:
    """Validate ``raw`` against the schema of ``equation`` and fill defaults."""
    equation = equation or raw.get("equation")
    if equation not in SCHEMAS:
        raise InputError(f"equation must be one of fl, nls, dsw (got {equation!r})")
    if "equation" in raw and raw["equation"] != equation:
        raise InputError(
            f"key 'equation': config says {raw['equation']!r} but --equation is {equation!r}"
        )
    allowed = allowed_keys(equation)
    for key in raw:
        if key not in allowed:
            raise InputError(f"unknown key {key!r} for equation {equation}")
    values: dict[str, float] = dict(DEFAULTS)
    lists: dict[str, tuple[float, ...]] = {}
    for key, text in raw.items():
        if key == "equation":
            continue
        if key in LIST_KEYS:
            parts = [p for p in text.replace(",", " ").split() if p]
            if not parts:
                raise InputError(f"key {key!r}: empty list")
            lists[key] = tuple(_parse_float(key, p) for p in parts)
        else:
            values[key] = _parse_float(key, text)
    for key in SCHEMAS[equation]:
        if key not in values:
            raise InputError(f"missing key {key!r} for equation {equation}")
    if values["n"] != int(values["n"]):
        raise InputError("key 'n' must be an integer")
    return RunConfig(equation, values, lists)


def load_config(path: str | None, overrides, equation: str | None) -> RunConfig:
    raw = read_config_file(path) if path else {}
    raw.update(parse_overrides(overrides))
    return build_config(raw, equation)


def params_of(cfg: RunConfig):
    v = cfg.values
    if cfg.equation == "fl":
        return FokasLenellsParams(
            v["a1"], v["a2"], v["b"], v["sigma"], v["alpha"], v["lambda"], v["mu"],
            v["kappa"], v["omega"], v["theta0"],
        )
    if cfg.equation == "nls":
        return NlsParams(v["sigma"], v["k1"], v["k2"], v["omega"], v["theta0"])
    return DswParams(v["p"], v["q"], v["r"], v["s"], v["omega"])


def construct(cfg: RunConfig) -> Construction:
    v = cfg.values
    params = params_of(cfg)
    if cfg.equation == "fl":
        return construct_fl(params, v["c0"], v["eta0"])
    if cfg.equation == "nls":
        return construct_nls(params, v["c0"], v["eta0"])
    return construct_dsw(params, v["c0"], v["c1"], v["c2"], v["eta0"])


def construction_meta(cfg: RunConfig, con: Construction) -> dict:
    ode, sol = con.ode, con.solution
    meta = {
        "equation": cfg.equation,
        "parameters": {k: cfg.values[k] for k in allowed_keys(cfg.equation) if k in cfg.values},
        "v": ode.v,
        "A": ode.A,
        "B": ode.B,
        "C": ode.C,
        "M": ode.M,
        "N": ode.N,
        "C1": ode.C1,
        "C2": ode.C2,
        "roots": list(sol.roots),
        "classification": con.roots.classification.value,
        "ordering": con.roots.ordering,
        "e": sol.e,
        "m_sq": sol.m_sq,
        "p_sq": sol.p_sq,
        "regime": sol.regime.value,
        "band": list(sol.band),
        "period": sol.period,
    }
    if cfg.equation == "dsw":
        meta["integrable"] = is_integrable_dsw(params_of(cfg))
    return meta


# --- output -----------------------------------------------------------------


def _num(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _meta_text(value) -> str:
    if isinstance(value, dict):
        return " ".join(f"{k}={_num(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return " ".join(_num(v) for v in value)
    return _num(value)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    return x


def render(meta: dict, columns, rows, fmt: str) -> str:
    if fmt == "json":
        doc = {"meta": meta, "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(_jsonable(doc), indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    for k, v in meta.items():
        buf.write(f"# {k}: {_meta_text(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows([_num(c) for c in r] for r in rows)
    return buf.getvalue()


def emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ---------------------------------------------------------------


def solve_table(cfg: RunConfig, con: Construction):
    """Sampled solution: envelope rows, or field rows when ``times`` is given."""
    sol = con.solution
    x = cfg.grid.points()
    times = cfg.lists.get("times")
    if cfg.equation == "dsw":
        pair = dsw_pair_evaluator(sol, params_of(cfg), cfg.values["c0"], check_poles=True)
        if times is None:
            u, v = pair(x, 0.0)
            return ["xi", "v", "u"], list(zip(x, v, u))
        rows = []
        for t in times:
            u, v = pair(x, t)
            rows.extend(zip(x, np.full_like(x, t), v, u))
        return ["x", "t", "v", "u"], rows
    if times is None:
        return ["eta", "U"], list(zip(x, sol.envelope(x)))
    rows = []
    if cfg.equation == "fl":
        for t in times:
            q = evaluate_field_fl(sol, con.frame, x, t)
            rows.extend(zip(x, np.full_like(x, t), q.real, q.imag, np.abs(q)))
        return ["x", "t", "re_q", "im_q", "abs_q"], rows
    for y in cfg.lists.get("ys", (0.0,)):
        for t in times:
            q = evaluate_field_nls(sol, con.frame, x, y, t)
            rows.extend(
                zip(x, np.full_like(x, y), np.full_like(x, t), q.real, q.imag, np.abs(q))
            )
    return ["x", "y", "t", "re_q", "im_q", "abs_q"], rows


def cmd_solve(cfg: RunConfig):
    con = construct(cfg)
    meta = {"command": "solve", **construction_meta(cfg, con)}
    columns, rows = solve_table(cfg, con)
    return meta, columns, rows, EXIT_OK


def run_oracles(cfg: RunConfig, con: Construction) -> list[tuple[str, dict]]:
    """Run every applicable oracle; returns ``(name, report-dict)`` pairs."""
    sol, ode = con.solution, con.ode
    params = params_of(cfg)
    grid = cfg.grid
    times = cfg.lists.get("times", (0.0, 0.5, 1.0))
    out: list[tuple[str, dict]] = []

    def scalar(name, value, location=0.0):
        value = abs(float(value))
        out.append(
            (name, {"max_abs": value, "rms": value, "argmax_location": location,
                    "n_evaluated": 1, "n_skipped_near_pole": 0, "mean": value, "std": 0.0})
        )

    if cfg.equation == "fl":
        scalar("fl_velocity_bracket", fl_velocity_bracket(params, ode.v))
    elif cfg.equation == "nls":
        scalar("nls_velocity", ode.v - 2.0 * (params.k1 + params.k2))
    else:
        scalar("root_sum", sum(sol.roots))

    out.append(("ode_first_order", ode_residual_first_order(sol, ode, grid).to_dict()))
    out.append(("ode_second_order", ode_residual_second_order(sol, ode, grid).to_dict()))
    out.append(("c0_drift_std", conserved_c0_drift(sol, ode, grid).to_dict()))

    if sol.is_constant:
        scalar("rk4_shooting", 0.0)
    else:
        try:
            rep = rk4_shooting_check(sol, ode)
        except ShootingRejected as exc:
            rep = None
            out.append(("rk4_shooting", {"max_abs": math.inf, "message": str(exc)}))
        if rep is not None:
            out.append(("rk4_shooting", rep.to_dict()))

    if cfg.equation == "fl":
        out.append(("pde_fl", pde_residual_fl(sol, con.frame, params, grid, times).to_dict()))
    elif cfg.equation == "nls":
        ys = cfg.lists.get("ys", (0.0, 0.7))
        out.append(
            ("pde_nls", pde_residual_nls(sol, con.frame, params, grid, ys, times).to_dict())
        )
    else:
        pair = dsw_pair_evaluator(sol, params, cfg.values["c0"])
        out.append(("pde_dsw", pde_residual_dsw(pair, params, grid, times, sol).to_dict()))
        out.append(
            ("dsw_coupling", dsw_coupling_residual(sol, params, cfg.values["c0"], grid).to_dict())
        )
    return out


def _verdict(name: str, rep: dict) -> bool:
    value = rep["std"] if name == "c0_drift_std" else rep["max_abs"]
    limit = THRESHOLDS[name]
    return value == 0.0 if limit == 0.0 else value < limit


def cmd_verify(cfg: RunConfig):
    con = construct(cfg)
    meta = {"command": "verify", **construction_meta(cfg, con)}
    columns = [
        "oracle", "max_abs", "rms", "std", "n_evaluated", "n_skipped_near_pole",
        "threshold", "passed",
    ]
    rows = []
    all_ok = True
    for name, rep in run_oracles(cfg, con):
        ok = _verdict(name, rep)
        all_ok &= ok
        rows.append((
            name, rep["max_abs"], rep.get("rms", math.nan), rep.get("std", math.nan),
            rep.get("n_evaluated", 0), rep.get("n_skipped_near_pole", 0), THRESHOLDS[name], ok,
        ))
    meta["all_passed"] = all_ok
    return meta, columns, rows, EXIT_OK if all_ok else EXIT_THRESHOLD


def sweep_row(cfg: RunConfig, key: str, value: float):
    """One sweep row; failures are returned as rows, never raised."""
    nan = math.nan
    try:
        con = construct(cfg.with_value(key, value))
        sol = con.solution
        res = ode_residual_first_order(sol, con.ode, cfg.grid).max_abs
        lo, hi = sol.band
        return (value, "ok", sol.regime.value, sol.p_sq, sol.m_sq, hi - lo, res, "")
    except (ParameterError, ConstructionError, PoleError) as exc:
        status = "error" if isinstance(exc, ParameterError) else "infeasible"
        return (value, status, "", nan, nan, nan, nan, str(exc))


def cmd_sweep(cfg: RunConfig, key: str, start: float, stop: float, count: int):
    if key not in SCHEMAS[cfg.equation] + OPTIONAL[cfg.equation] + ("eta0",):
        raise InputError(f"cannot sweep key {key!r} for equation {cfg.equation}")
    if key in LIST_KEYS:
        raise InputError(f"cannot sweep list key {key!r}")
    if count < 1:
        raise InputError("--count must be >= 1")
    values = np.linspace(start, stop, count) if count > 1 else np.array([start])
    columns = ["index", "value", "status", "regime", "p_sq", "m_sq", "swing", "residual", "message"]
    rows = [(i, *sweep_row(cfg, key, float(val))) for i, val in enumerate(values)]
    meta = {
        "command": "sweep",
        "equation": cfg.equation,
        "parameter": key,
        "from": float(start),
        "to": float(stop),
        "count": int(count),
    }
    return meta, columns, rows, EXIT_OK


# --- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--equation", choices=sorted(SCHEMAS), help="PDE family")
    common.add_argument("--config", metavar="PATH", help="key = value parameter file")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override or add one config value (repeatable)",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(
        prog="ellipwave",
        description="Construct and verify elliptic traveling-wave solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="sample the constructed solution")
    sub.add_parser("verify", parents=[common], help="run all residual oracles")
    sw = sub.add_parser("sweep", parents=[common], help="scan one parameter")
    sw.add_argument("--param", required=True, help="config key to vary")
    sw.add_argument("--from", dest="start", type=float, required=True)
    sw.add_argument("--to", dest="stop", type=float, required=True)
    sw.add_argument("--count", type=int, default=11)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides, args.equation)
        if args.command == "solve":
            meta, columns, rows, code = cmd_solve(cfg)
        elif args.command == "verify":
            meta, columns, rows, code = cmd_verify(cfg)
        else:
            meta, columns, rows, code = cmd_sweep(
                cfg, args.param, args.start, args.stop, args.count
            )
    except (InputError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConstructionError, PoleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    emit(render(meta, columns, rows, args.format), args.out)
    if code == EXIT_THRESHOLD:
        print("verify: at least one oracle exceeded its threshold", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
