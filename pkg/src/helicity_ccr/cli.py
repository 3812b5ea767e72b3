"""Command-line front end.

Subcommands: ccr (theta scans), bell-table, regime, average, limit-check.
Every run is configured by flags, optionally seeded from a flat key=value
config file (flags win).  Angles are radians, or multiples of pi with a
``pi`` suffix ("0.5pi").  Results stream to stdout or --out as CSV or JSON.

Exit codes: 0 success, 2 usage or configuration error, 3 kinematic domain
error, 4 verification failure (limit-check deviations above tolerance).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .amplitudes import MUON_ELECTRON_MASS_RATIO, Kinematics, Process
from .averages import ThetaDomain, weighted_average
from .bell import bell_table
from .errors import CcrError, DomainError
from .limits import relativistic_limit_ccr
from .measures import pvc
from .regimes import FamilyState, classify, delta_c_curve
from .scattering import ccr_scan, default_theta_grid, scatter_coefficients
from .serialize import Table, table_from_scan, write_csv, write_json
from .states import (TwoQubitState, basis_state, bell_state,
                     product_superposition)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


class ConfigError(Exception):
    """Bad flag/config-file value."""


def parse_angle(text: str) -> float:
    """Radians, or a multiple of pi given with a 'pi' suffix."""
    s = str(text).strip().lower()
    try:
        if s.endswith("pi"):
            head = s[:-2].strip()
            return float(head) * np.pi if head else np.pi
        return float(s)
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r}") from None


def parse_grid(text: str):
    """'N' for N midpoints of (0, 2*pi), or 'N,lo,hi' for a closed window."""
    parts = [p for p in str(text).split(",") if p.strip()]
    try:
        n = int(parts[0])
    except ValueError:
        raise ConfigError(f"grid size must be an integer, got {parts[0]!r}") from None
    if n < 1:
        raise ConfigError("grid size must be positive")
    if len(parts) == 1:
        return default_theta_grid(n)
    if len(parts) == 3:
        lo, hi = parse_angle(parts[1]), parse_angle(parts[2])
        return np.linspace(lo, hi, n)
    raise ConfigError(f"grid spec must be 'N' or 'N,lo,hi', got {text!r}")


def parse_domain(text: str) -> ThetaDomain:
    parts = str(text).split(",")
    if len(parts) != 2:
        raise ConfigError(f"domain must be 'lo,hi', got {text!r}")
    return ThetaDomain(parse_angle(parts[0]), parse_angle(parts[1]))


def parse_mu_sweep(text: str) -> np.ndarray:
    """'start:stop:count' geometric sweep (both endpoints included)."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"mu sweep must be 'start:stop:count', got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"cannot parse mu sweep {text!r}") from None
    if start <= 0 or stop <= 0 or count < 1:
        raise ConfigError("mu sweep needs positive bounds and count >= 1")
    return np.geomspace(start, stop, count)


def parse_initial(spec: str) -> TwoQubitState:
    """Initial-state spec: basis label, 'bell:NAME', 'FAMILY:ANGLE', or
    eight comma-separated reals (re, im pairs of the four coefficients)."""
    s = str(spec).strip()
    low = s.lower()
    if low.upper() in ("RR", "RL", "LR", "LL"):
        return basis_state(low.upper())
    if low.startswith("bell:"):
        return bell_state(low[5:])
    for fam in ("phi+", "phi-", "psi+", "psi-"):
        if low.startswith(fam + ":"):
            try:
                return FamilyState(fam, parse_angle(low[len(fam) + 1:])).to_state()
            except DomainError as exc:
                raise ConfigError(str(exc)) from None
    parts = s.split(",")
    if len(parts) == 8:
        try:
            reals = [float(p) for p in parts]
        except ValueError:
            raise ConfigError(f"cannot parse coefficients in {spec!r}") from None
        coeffs = [complex(reals[2 * i], reals[2 * i + 1]) for i in range(4)]
        return TwoQubitState.from_coefficients(coeffs)
    raise ConfigError(
        f"cannot parse initial state {spec!r}; expected a basis label, "
        "'bell:NAME', 'FAMILY:ANGLE', or 8 comma-separated reals")


def load_config_file(path: str) -> dict:
    """Flat 'key = value' lines; '#' starts a comment."""
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(
                        f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                values[key.strip().replace("_", "-")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return values


def _merge_config(args: argparse.Namespace, parser_keys: dict) -> None:
    """Fill argparse Namespace holes from the config file (flags win)."""
    if not getattr(args, "config", None):
        return
    file_values = load_config_file(args.config)
    for key, raw in file_values.items():
        if key not in parser_keys:
            raise ConfigError(f"unknown config key {key!r}")
        dest = parser_keys[key]
        if getattr(args, dest, None) is None:
            setattr(args, dest, raw)


def _emit(table: Table, out: str | None, fmt: str) -> None:
    writer = write_csv if fmt == "csv" else write_json
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            writer(table, fh)
    else:
        writer(table, sys.stdout)


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ConfigError(f"missing required option --{name.replace('_', '-')}")


def _common_meta(args, **extra) -> dict:
    meta = {"command": args.command}
    if getattr(args, "seed", None) is not None:
        meta["seed"] = int(args.seed)
    meta.update(extra)
    return meta


# ---------------------------------------------------------------- subcommands

def _parse_bool(value) -> bool:
    if value is None:
        return False
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"cannot parse boolean {value!r}")


def _cmd_ccr(args) -> int:
    _require(args, "process", "initial", "mu")
    process = Process.from_name(args.process)
    initial = parse_initial(args.initial)
    mu = float(args.mu)
    lam = float(args.lam) if args.lam is not None else MUON_ELECTRON_MASS_RATIO
    grid = parse_grid(args.grid) if args.grid is not None else default_theta_grid()
    result = ccr_scan(process, initial, mu, lam=lam, theta_grid=grid)
    table = table_from_scan(result)
    table.meta = _common_meta(args, **result.meta)
    _emit(table, args.out, args.format or "csv")
    return EXIT_OK


def _cmd_bell_table(args) -> int:
    _require(args, "process", "mu", "theta")
    process = Process.from_name(args.process)
    kin = Kinematics(mu=float(args.mu), theta=parse_angle(args.theta),
                     lam=float(args.lam) if args.lam is not None
                     else MUON_ELECTRON_MASS_RATIO)
    rows = bell_table(process, kin)
    table = Table(
        columns=("initial", "final_pattern", "mixing_angle", "concurrence",
                 "classification", "transparent"),
        rows=[[r.initial, r.final_pattern, r.mixing_angle, r.concurrence,
               r.classification, r.transparent] for r in rows],
        meta=_common_meta(args, process=process.value, mu=kin.mu,
                          theta=kin.theta, lam=kin.lam),
    )
    _emit(table, args.out, args.format or "csv")
    return EXIT_OK


def _cmd_regime(args) -> int:
    _require(args, "process", "family", "angle", "mu")
    process = Process.from_name(args.process)
    family = FamilyState(args.family.lower(), parse_angle(args.angle))
    mu = float(args.mu)
    lam = float(args.lam) if args.lam is not None else MUON_ELECTRON_MASS_RATIO
    grid = parse_grid(args.grid) if args.grid is not None else default_theta_grid()
    verdict = classify(process, mu, lam, family, theta_grid=grid)
    thetas, dc = delta_c_curve(process, mu, family, lam=lam, theta_grid=grid)
    table = Table(
        columns=("theta", "delta_C"),
        rows=[[float(t), float(d)] for t, d in zip(thetas, dc)],
        meta=_common_meta(
            args, process=process.value, family=family.family,
            angle=family.angle, mu=mu, lam=lam,
            regime=verdict.regime.value, min_dC=verdict.min_dc,
            max_dC=verdict.max_dc, grid_size=verdict.theta_grid_size),
    )
    _emit(table, args.out, args.format or "csv")
    return EXIT_OK


def _cmd_average(args) -> int:
    _require(args, "process", "initial", "domain")
    if args.mu is None and args.mu_sweep is None:
        raise ConfigError("provide --mu or --mu-sweep")
    process = Process.from_name(args.process)
    initial = parse_initial(args.initial)
    domain = parse_domain(args.domain)
    lam = float(args.lam) if args.lam is not None else MUON_ELECTRON_MASS_RATIO
    points = int(args.points) if args.points is not None else 32
    mus = (parse_mu_sweep(args.mu_sweep) if args.mu_sweep is not None
           else np.array([float(args.mu)]))
    sin_theta = _parse_bool(args.sin_theta)
    rows = []
    for mu in mus:
        avg = weighted_average(process, float(mu), lam, initial, domain,
                               quadrature_points=points,
                               include_sin_theta=sin_theta)
        rows.append([float(mu), avg.c2_bar, avg.pa2_bar, avg.pb2_bar,
                     avg.va2_bar, avg.vb2_bar, avg.n_weight])
    table = Table(
        columns=("mu", "C2_bar", "PA2_bar", "PB2_bar", "VA2_bar", "VB2_bar",
                 "N_weight"),
        rows=rows,
        meta=_common_meta(args, process=process.value, domain_lo=domain.lo,
                          domain_hi=domain.hi, lam=lam, sin_theta=sin_theta,
                          quadrature_points=points),
    )
    _emit(table, args.out, args.format or "csv")
    return EXIT_OK


def _cmd_limit_check(args) -> int:
    _require(args, "alpha", "beta")
    alpha, beta = parse_angle(args.alpha), parse_angle(args.beta)
    mu = float(args.mu) if args.mu is not None else 1e6
    tol = float(args.tol) if args.tol is not None else 1e-4
    grid = (parse_grid(args.grid) if args.grid is not None
            else default_theta_grid(360))
    initial = product_superposition(alpha, beta)
    f = scatter_coefficients(Process.BHABHA, mu, grid, initial.coefficients)
    norms = np.linalg.norm(f, axis=-1)
    conc, p_a, p_b, v_a, v_b = pvc(f / norms[:, None])
    closed = relativistic_limit_ccr(alpha, beta, grid)
    devs = np.stack([
        np.abs(conc - closed.concurrence), np.abs(p_a - closed.p_a),
        np.abs(p_b - closed.p_b), np.abs(v_a - closed.v_a),
        np.abs(v_b - closed.v_b)])
    max_dev = float(devs.max())
    rows = [[float(grid[k])] + [float(devs[i, k]) for i in range(5)]
            for k in range(grid.size)]
    table = Table(
        columns=("theta", "dev_C", "dev_PA", "dev_PB", "dev_VA", "dev_VB"),
        rows=rows,
        meta=_common_meta(args, alpha=alpha, beta=beta, mu=mu, tol=tol,
                          max_dev=max_dev),
    )
    _emit(table, args.out, args.format or "csv")
    if max_dev > tol:
        print(f"limit-check: max deviation {max_dev:.3e} exceeds "
              f"tolerance {tol:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -------------------------------------------------------------------- parser

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"))
    sub.add_argument("--seed", type=int,
                     help="echoed into meta for randomized post-processing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helicity-ccr",
        description="Helicity-entanglement observables for tree-level "
                    "QED scattering")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("ccr", help="squared CCR terms over a theta grid")
    p.add_argument("--process")
    p.add_argument("--initial")
    p.add_argument("--mu")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--grid", help="'N' or 'N,lo,hi'")
    _add_common(p)
    p.set_defaults(func=_cmd_ccr)

    p = subs.add_parser("bell-table",
                        help="Bell-state transformation table at one angle")
    p.add_argument("--process")
    p.add_argument("--mu")
    p.add_argument("--theta")
    p.add_argument("--lambda", dest="lam")
    _add_common(p)
    p.set_defaults(func=_cmd_bell_table)

    p = subs.add_parser("regime", help="entanglement-gain regime of a family state")
    p.add_argument("--process")
    p.add_argument("--family", help="phi+|phi-|psi+|psi-")
    p.add_argument("--angle")
    p.add_argument("--mu")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--grid")
    _add_common(p)
    p.set_defaults(func=_cmd_regime)

    p = subs.add_parser("average",
                        help="cross-section-weighted CCR averages over a window")
    p.add_argument("--process")
    p.add_argument("--initial")
    p.add_argument("--domain", help="'lo,hi'")
    p.add_argument("--mu")
    p.add_argument("--mu-sweep", dest="mu_sweep", help="'start:stop:count'")
    p.add_argument("--points", help="Gauss-Legendre order per panel")
    p.add_argument("--sin-theta", dest="sin_theta", action="store_const",
                   const=True, help="include the solid-angle Jacobian")
    p.add_argument("--lambda", dest="lam")
    _add_common(p)
    p.set_defaults(func=_cmd_average)

    p = subs.add_parser("limit-check",
                        help="closed-form infinite-momentum limit vs engine")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--mu", help="engine momentum (default 1e6)")
    p.add_argument("--tol", help="max allowed deviation (default 1e-4)")
    p.add_argument("--grid")
    _add_common(p)
    p.set_defaults(func=_cmd_limit_check)

    return parser


_CONFIG_KEYS = {
    "process": "process", "initial": "initial", "mu": "mu", "lambda": "lam",
    "grid": "grid", "config": "config", "out": "out", "format": "format",
    "seed": "seed", "theta": "theta", "family": "family", "angle": "angle",
    "domain": "domain", "mu-sweep": "mu_sweep", "points": "points",
    "sin-theta": "sin_theta", "alpha": "alpha", "beta": "beta", "tol": "tol",
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _merge_config(args, _CONFIG_KEYS)
        return args.func(args)
    except ConfigError as exc:
        print(f"helicity-ccr: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"helicity-ccr: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CcrError as exc:
        print(f"helicity-ccr: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"helicity-ccr: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
