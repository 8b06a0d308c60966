"""Command-line front end emitting machine-readable tables.

Every invocation writes exactly one table, as CSV (17-significant-digit
floats, lossless round trip) or JSON (a "meta" echo of the run plus "rows").
Exit codes: 0 success, 2 invalid arguments (message names the flag),
3 numeric failure (message names module and operation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DomainError, NumericError
from .measures import report
from .phase_dist import Period, distribution, holevo_variance, holevo_variance_mod_pi, sample
from .states import make_state, min_eigenstates, to_basis
from .asymptotics import j0_bessel_density, j0_intermediate_density, scaling_constants
from .phase_dist import density_grid


@dataclass
class RunConfig:
    command: str
    photons: int | None = None
    photons_list: list[int] = field(default_factory=list)
    kind: str = "optimal"
    basis: str = "z"
    fmt: str = "csv"
    output: str | None = None
    seed: int = 0
    grid: int = 64
    factor: float = 2.0
    count: int = 1
    confidence: float = 2.0 / 3.0
    threads: int = 1


def _fmt_float(x) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return f"{x:.17g}"
    return str(x)


def _emit(cfg: RunConfig, columns, rows) -> None:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt_float(v) for v in row])
        text = buf.getvalue()
    else:
        payload = {
            "meta": {
                "command": cfg.command,
                "version": __version__,
                "config": {k: v for k, v in vars(cfg).items() if v is not None},
            },
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        text = json.dumps(payload, indent=2, default=lambda v: "inf" if v == math.inf else v) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _validate_photons(cfg: RunConfig) -> None:
    if cfg.photons is None:
        raise DomainError("--photons is required")
    if cfg.photons < 1:
        raise DomainError("--photons must be >= 1")
    if cfg.kind in ("j0", "j0j1") and cfg.photons % 2:
        raise DomainError(f"--kind {cfg.kind} requires an even --photons")


def _cmd_state(cfg: RunConfig):
    _validate_photons(cfg)
    state = make_state(cfg.photons, cfg.kind, cfg.basis)
    rows = [
        (mu, c.real, c.imag)
        for mu, c in zip(state.mu_values(), state.coeffs)
    ]
    _emit(cfg, ["mu", "re", "im"], rows)


def _cmd_variance(cfg: RunConfig):
    _validate_photons(cfg)
    state = make_state(cfg.photons, cfg.kind, cfg.basis)
    dist = distribution(state)
    moment1 = abs(dist.coefficient(-1))
    moment2 = abs(dist.coefficient(-2))
    if dist.period is Period.TWO_PI:
        definition, value = "mod2pi", holevo_variance(dist)
    else:
        definition, value = "modpi", holevo_variance_mod_pi(dist)
    _emit(
        cfg,
        ["photons", "kind", "definition", "moment1", "moment2", "holevo_variance"],
        [(cfg.photons, cfg.kind, definition, moment1, moment2, value)],
    )


_REPORT_COLUMNS = [
    "photons", "kind", "period", "mean_phase", "delta_phi", "delta_phi_H",
    "holevo_variance", "L_rp", "L_S", "L_H", "L_C23", "L_F",
]


def _report_row(n: int, kind: str):
    rep = report(make_state(n, kind, "z" if kind != "optimal" else "y"))
    var_h = rep.delta_phi_h**2 if math.isfinite(rep.delta_phi_h) else math.inf
    return (
        rep.n_photons, rep.kind, rep.period.value, rep.mean_phase,
        rep.delta_phi, rep.delta_phi_h, var_h,
        rep.l_rp, rep.l_s, rep.l_h, rep.l_c, rep.l_f,
    )


def _cmd_measures(cfg: RunConfig):
    _validate_photons(cfg)
    _emit(cfg, _REPORT_COLUMNS, [_report_row(cfg.photons, cfg.kind)])


def _cmd_table(cfg: RunConfig):
    if not cfg.photons_list:
        raise DomainError("--photons-list is required")
    for n in cfg.photons_list:
        if n < 1:
            raise DomainError("--photons-list entries must be >= 1")
        if cfg.kind in ("j0", "j0j1") and n % 2:
            raise DomainError(f"--kind {cfg.kind} requires even entries in --photons-list")
    ns = sorted(set(cfg.photons_list))
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda n: _report_row(n, cfg.kind), ns))
    else:
        rows = [_report_row(n, cfg.kind) for n in ns]
    _emit(cfg, _REPORT_COLUMNS, rows)


def _cmd_approx_count(cfg: RunConfig):
    _validate_photons(cfg)
    if cfg.factor <= 1.0:
        raise DomainError("--factor must exceed 1")
    k = min_eigenstates(cfg.photons, cfg.factor)
    _emit(cfg, ["photons", "factor", "eigenstates"], [(cfg.photons, cfg.factor, k)])


def _cmd_compare_approximations(cfg: RunConfig):
    _validate_photons(cfg)
    if cfg.photons % 2:
        raise DomainError("--photons must be even for the equal-split comparison")
    if cfg.grid < 1:
        raise DomainError("--grid must be >= 1")
    n = cfg.photons
    j = n // 2
    dist = distribution(make_state(n, "j0", "z"))
    phi, dens = density_grid(dist, max(4 * (n + 2), 64 * cfg.grid))
    edges = np.linspace(0.0, math.pi / 2.0, cfg.grid + 1)
    rows = []
    for a, b in zip(edges[:-1], edges[1:]):
        mask = (phi >= a) & (phi < b)
        if not np.any(mask):
            continue
        centre = 0.5 * (a + b)
        exact = float(np.max(dens[mask]))
        window = np.linspace(a, b, 257)
        inter = float(np.max(j0_intermediate_density(j, window)))
        bess = float(np.max(j0_bessel_density(j, window)))
        rows.append((centre, exact, inter, bess))
    _emit(cfg, ["phi", "exact", "intermediate", "bessel"], rows)


def _cmd_asymptotic_constants(cfg: RunConfig):
    table = scaling_constants(cfg.kind)
    _emit(cfg, ["measure", "constant"], sorted(table.items()))


def _cmd_sample(cfg: RunConfig):
    _validate_photons(cfg)
    if cfg.count < 1:
        raise DomainError("--count must be >= 1")
    state = make_state(cfg.photons, cfg.kind, cfg.basis)
    draws = sample(distribution(state), cfg.count, cfg.seed)
    _emit(cfg, ["phi"], [(float(v),) for v in draws])


_COMMANDS = {
    "state": _cmd_state,
    "variance": _cmd_variance,
    "measures": _cmd_measures,
    "table": _cmd_table,
    "approx-count": _cmd_approx_count,
    "compare-approximations": _cmd_compare_approximations,
    "asymptotic-constants": _cmd_asymptotic_constants,
    "sample": _cmd_sample,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phasekit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *flags):
        p = sub.add_parser(name)
        if "photons" in flags:
            p.add_argument("--photons", type=int)
        if "photons-list" in flags:
            p.add_argument("--photons-list", type=str, default="")
        if "kind" in flags:
            p.add_argument("--kind", choices=["optimal", "j0", "j0j1", "jj"], default="optimal")
        if "basis" in flags:
            p.add_argument("--basis", choices=["z", "y"], default="z")
        if "factor" in flags:
            p.add_argument("--factor", type=float, default=2.0)
        if "grid" in flags:
            p.add_argument("--grid", type=int, default=64)
        if "count" in flags:
            p.add_argument("--count", type=int, default=1)
        if "seed" in flags:
            p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--output", type=str, default=None)
        p.add_argument("--threads", type=int, default=1)
        return p

    add("state", "photons", "kind", "basis")
    add("variance", "photons", "kind", "basis")
    add("measures", "photons", "kind")
    add("table", "photons-list", "kind")
    add("approx-count", "photons", "factor")
    add("compare-approximations", "photons", "grid")
    add("asymptotic-constants", "kind")
    add("sample", "photons", "kind", "count", "seed")
    return parser


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("photons", "kind", "basis", "factor", "grid", "count", "seed", "threads", "output"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "format"):
        cfg.fmt = args.format
    if getattr(args, "photons_list", ""):
        try:
            cfg.photons_list = [int(tok) for tok in args.photons_list.split(",") if tok.strip()]
        except ValueError:
            raise DomainError("--photons-list must be a comma-separated list of integers") from None
    if cfg.threads < 1:
        raise DomainError("--threads must be >= 1")
    return cfg


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = _config_from_args(args)
        _COMMANDS[cfg.command](cfg)
    except DomainError as exc:
        print(f"phasekit {args.command}: invalid arguments: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"phasekit {args.command}: numeric failure: {exc}", file=sys.stderr)
        return 3
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
