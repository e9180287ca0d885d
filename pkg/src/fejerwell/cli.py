"""Command-line front end emitting the package's headline data sets as CSV/JSON.

Commands
--------
fig1          optimal packet half-width against the central level
trajectories  packet means beside the averaged classical series
uncertainty   quantum and classical reduced uncertainties
gibbs         truncated-series overshoot against the bounded average
limit         constrained-classical-limit deviation rows
oracle-check  closed forms against the first-principles oracle

Output is deterministic: identical configurations produce byte-identical
artifacts. Exit codes: 0 success, 1 usage error, 2 tolerance/validation
failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .classical import (
    ClassicalOrbit,
    classical_reduced_uncertainty,
    fejer_momentum,
    fejer_position,
    gibbs_overshoot,
)
from .core import PacketSpec, WellConfig, spectral_data
from .limits import limit_sequence
from .optimizer import default_n_grid, optimal_N
from .quantum import (
    exp_p,
    exp_p2,
    exp_x,
    exp_x2,
    oracle_expectation,
    reduced_uncertainty,
)

__all__ = ["RunConfig", "TimeSeries", "emit", "run", "main"]

COMMANDS = ("fig1", "trajectories", "uncertainty", "gibbs", "limit", "oracle-check")

_GIBBS_LADDER = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000)

# oracle-check tolerances: (observable, relative tolerance, reference scale)
_ORACLE_SPECS = (("position", 1e-8), ("position_sq", 1e-8), ("momentum", 1e-6),
                 ("momentum_sq", 1e-12))
_ORACLE_CASES = ((10, 3), (50, 7), (200, 14))


@dataclass(frozen=True)
class TimeSeries:
    """Labeled rectangular numeric records."""

    columns: tuple[str, ...]
    rows: list[tuple[float, ...]]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row arity does not match column count")
        if self.columns and self.columns[0] == "t":
            ts = [row[0] for row in self.rows]
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise ValueError("t column must be strictly increasing")


@dataclass
class RunConfig:
    command: str
    n: int = 500
    N: int | str = "auto"
    t_max: float | str = "2T"
    steps: int = 2000
    format: str = "csv"
    out: str | None = None
    normalize_momentum: bool = True
    n_list: list[int] | None = None
    m: int = 200


def emit(series: TimeSeries, format: str, out: str | None) -> int:
    """Write the series as CSV or JSON; returns the number of bytes written.

    CSV: one header line, one line per row, 17 significant digits,
    LF-terminated. JSON: an object with "columns" and "rows" arrays.
    """
    if format == "csv":
        lines = [",".join(series.columns)]
        for row in series.rows:
            lines.append(",".join(format_float(v) for v in row))
        payload = "\n".join(lines) + "\n"
    elif format == "json":
        payload = json.dumps(
            {"columns": list(series.columns), "rows": [list(r) for r in series.rows]},
            separators=(",", ":"),
        ) + "\n"
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")
    data = payload.encode()
    if out is None:
        sys.stdout.write(payload)
        sys.stdout.flush()
    else:
        try:
            with open(out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise OSError(f"cannot write output to {out}: {exc}") from exc
    return len(data)


def format_float(v: float) -> str:
    return format(float(v), ".17g")


def _resolve_t_max(value: float | str, period: float) -> float:
    """Accept a plain time or a literal period multiple such as "2T"."""
    if isinstance(value, str):
        text = value.strip()
        if text.lower().endswith("t"):
            mult = text[:-1].strip()
            factor = float(mult) if mult else 1.0
            t_max = factor * period
        else:
            t_max = float(text)
    else:
        t_max = float(value)
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {value!r}")
    return t_max


def _resolve_N(cfg: WellConfig, n: int, N: int | str) -> int:
    if isinstance(N, str):
        if N != "auto":
            raise ValueError(f"N must be an integer or 'auto', got {N!r}")
        return optimal_N(cfg, n).N_opt
    return int(N)


def _series_fig1(config: RunConfig, cfg: WellConfig) -> TimeSeries:
    n_values = config.n_list if config.n_list else default_n_grid()
    rows = []
    for n in n_values:
        row = optimal_N(cfg, n)
        rows.append((float(row.n), float(row.N_opt), row.sqrt_n, row.product_min))
    return TimeSeries(columns=("n", "N_opt", "sqrt_n", "product_min"), rows=rows)


def _series_trajectories(config: RunConfig, cfg: WellConfig) -> TimeSeries:
    n = config.n
    N = _resolve_N(cfg, n, config.N)
    spec = PacketSpec(n=n, N=N)
    sd = spectral_data(cfg, n)
    orbit = ClassicalOrbit(a=cfg.a, p_c=sd.p_c, mu=cfg.mu)
    t_max = _resolve_t_max(config.t_max, sd.period)
    ts = np.linspace(0.0, t_max, config.steps)
    p_scale = sd.p_c if config.normalize_momentum else 1.0
    xq = exp_x(cfg, spec, ts)
    xf = fejer_position(orbit, N, ts)
    pq = exp_p(cfg, spec, ts) / p_scale
    pf = fejer_momentum(orbit, N, ts) / p_scale
    rows = [
        (float(t), float(a_), float(b_), float(c_), float(d_))
        for t, a_, b_, c_, d_ in zip(ts, xq, xf, pq, pf)
    ]
    return TimeSeries(
        columns=("t", "x_quantum", "x_fejer", "p_quantum", "p_fejer"), rows=rows
    )


def _series_uncertainty(config: RunConfig, cfg: WellConfig) -> TimeSeries:
    n = config.n
    N = _resolve_N(cfg, n, config.N)
    spec = PacketSpec(n=n, N=N)
    sd = spectral_data(cfg, n)
    orbit = ClassicalOrbit(a=cfg.a, p_c=sd.p_c, mu=cfg.mu)
    t_max = _resolve_t_max(config.t_max, sd.period)
    ts = np.linspace(0.0, t_max, config.steps)
    dx = reduced_uncertainty(cfg, spec, ts, "position")
    dxc = classical_reduced_uncertainty(orbit, "position", N, ts)
    dp = reduced_uncertainty(cfg, spec, ts, "momentum")
    dpc = classical_reduced_uncertainty(orbit, "momentum", N, ts)
    rows = [
        (float(t), float(a_), float(b_), float(c_), float(d_))
        for t, a_, b_, c_, d_ in zip(ts, dx, dxc, dp, dpc)
    ]
    return TimeSeries(
        columns=("t", "delta_x", "delta_x_classical", "delta_p", "delta_p_classical"),
        rows=rows,
    )


def _series_gibbs(config: RunConfig, cfg: WellConfig) -> TimeSeries:
    m_max = config.m
    if m_max < 1:
        raise ValueError(f"need m >= 1, got {m_max}")
    orders = sorted({m for m in _GIBBS_LADDER if m < m_max} | {m_max})
    orbit = ClassicalOrbit()
    ts = np.arange(10000) * (orbit.period / 10000)
    rows = []
    for m in orders:
        overshoot = gibbs_overshoot(orbit, m)
        fejer_max = float(np.max(np.abs(fejer_momentum(orbit, m, ts)))) / orbit.p_c
        rows.append((float(m), overshoot, fejer_max))
    return TimeSeries(columns=("m", "overshoot_ratio", "fejer_max_ratio"), rows=rows)


def _series_limit(config: RunConfig, cfg: WellConfig) -> TimeSeries:
    n_values = config.n_list if config.n_list else [100, 200, 400, 800]
    # --N auto applies the per-level floor(sqrt(n)) rule; an integer fixes N
    rule: int | str = "sqrt" if config.N == "auto" else int(config.N)
    p_c = 500.0 * math.pi
    rows_ = limit_sequence(cfg.a, cfg.mu, p_c, n_values, N_rule=rule)
    rows = [
        (float(r.n), r.hbar_eff, float(r.N), r.sup_err_x, r.sup_err_p, r.sup_err_x2)
        for r in rows_
    ]
    return TimeSeries(
        columns=("n", "hbar_eff", "N", "sup_err_x", "sup_err_p", "sup_err_x2"),
        rows=rows,
    )


def _series_oracle_check(config: RunConfig, cfg: WellConfig) -> tuple[TimeSeries, bool]:
    rows = []
    all_pass = True
    for n, N in _ORACLE_CASES:
        spec = PacketSpec(n=n, N=N)
        sd = spectral_data(cfg, n)
        ts = np.linspace(0.0, sd.period, 32)
        scales = {
            "position": cfg.a,
            "position_sq": cfg.a**2,
            "momentum": sd.p_n,
            "momentum_sq": sd.p_n**2,
        }
        closed = {
            "position": exp_x(cfg, spec, ts),
            "position_sq": exp_x2(cfg, spec, ts),
            "momentum": exp_p(cfg, spec, ts),
            "momentum_sq": np.full(len(ts), exp_p2(cfg, spec)),
        }
        for kind, tol in _ORACLE_SPECS:
            method = "spectral" if kind == "momentum_sq" else "grid"
            devs = [
                abs(closed[kind][i] - oracle_expectation(cfg, spec, float(t), kind, method=method))
                for i, t in enumerate(ts)
            ]
            max_rel = max(devs) / scales[kind]
            ok = max_rel <= tol
            all_pass &= ok
            rows.append(
                (float(n), float(N), float(OBS_CODE[kind]), max_rel, tol, float(ok))
            )
    series = TimeSeries(
        columns=("n", "N", "observable_code", "max_rel_dev", "tol", "status"),
        rows=rows,
    )
    return series, all_pass


OBS_CODE = {"position": 0, "position_sq": 1, "momentum": 2, "momentum_sq": 3}


def run(config: RunConfig) -> int:
    """Execute one command and emit its artifact; returns the exit status."""
    cfg = WellConfig()
    status = 0
    try:
        if config.steps < 2:
            raise ValueError(f"need steps >= 2, got {config.steps}")
        if config.command == "fig1":
            series = _series_fig1(config, cfg)
        elif config.command == "trajectories":
            series = _series_trajectories(config, cfg)
        elif config.command == "uncertainty":
            series = _series_uncertainty(config, cfg)
        elif config.command == "gibbs":
            series = _series_gibbs(config, cfg)
        elif config.command == "limit":
            series = _series_limit(config, cfg)
        elif config.command == "oracle-check":
            series, all_pass = _series_oracle_check(config, cfg)
            if not all_pass:
                status = 2
        else:
            raise ValueError(f"unknown command {config.command!r}")
    except ValueError as exc:
        _error_record("usage", str(exc))
        return 1
    except RuntimeError as exc:
        _error_record("validation", str(exc))
        return 2
    try:
        emit(series, config.format, config.out)
    except OSError as exc:
        _error_record("io", str(exc))
        return 3
    except ValueError as exc:
        _error_record("usage", str(exc))
        return 1
    if status:
        _error_record("tolerance", "oracle deviations exceed tolerance")
    return status


def _error_record(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line (expected key=value): {line!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fejerwell",
        description="Square-well packet dynamics against averaged classical series",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, default=None, help="central quantum number")
    parser.add_argument(
        "--N", default=None, help="packet half-width (integer) or 'auto'"
    )
    parser.add_argument(
        "--t-max",
        dest="t_max",
        default=None,
        help="time span: a number, or a period multiple such as '2T'",
    )
    parser.add_argument("--steps", type=int, default=None, help="samples in the span")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--config", default=None, help="key=value defaults file")
    parser.add_argument(
        "--normalize-momentum",
        dest="normalize_momentum",
        choices=("on", "off"),
        default=None,
        help="divide momentum columns by p_c (trajectories)",
    )
    parser.add_argument(
        "--n-list",
        dest="n_list",
        default=None,
        help="comma-separated levels (fig1, limit)",
    )
    parser.add_argument("--m", type=int, default=None, help="largest order (gibbs)")
    return parser


def _pick(cli_value, file_values: dict[str, str], key: str, cast, default):
    if cli_value is not None:
        return cli_value
    if key in file_values:
        return cast(file_values[key])
    return default


def _parse_n_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_N(text: str) -> int | str:
    return "auto" if text == "auto" else int(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    try:
        file_values = _read_config_file(args.config) if args.config else {}
    except (OSError, ValueError) as exc:
        _error_record("usage", f"config file: {exc}")
        return 1

    try:
        config = RunConfig(
            command=args.command,
            n=_pick(args.n, file_values, "n", int, 500),
            N=_pick(
                _parse_N(args.N) if args.N is not None else None,
                file_values,
                "N",
                _parse_N,
                "auto",
            ),
            t_max=_pick(args.t_max, file_values, "t-max", str, "2T"),
            steps=_pick(args.steps, file_values, "steps", int, 2000),
            format=_pick(args.format, file_values, "format", str, "csv"),
            out=_pick(args.out, file_values, "out", str, None),
            normalize_momentum=_pick(
                args.normalize_momentum == "on" if args.normalize_momentum else None,
                file_values,
                "normalize-momentum",
                lambda s: s == "on",
                True,
            ),
            n_list=_pick(
                _parse_n_list(args.n_list) if args.n_list else None,
                file_values,
                "n-list",
                _parse_n_list,
                None,
            ),
            m=_pick(args.m, file_values, "m", int, 200),
        )
    except ValueError as exc:
        _error_record("usage", str(exc))
        return 1

    return run(config)


if __name__ == "__main__":
    sys.exit(main())
