"""Command-line front end emitting reproducible CSV/JSON tables and reports.

Exit codes: 0 success, 1 domain/convergence error from a module, 2 usage
error, 3 verification failure.  Numbers are written with 17 significant
digits and '\\n' line endings, so identical configurations produce
byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import verify
from .basis import Coupling, Coupling2D
from .errors import ConvergenceError, DomainError, NumericalError
from .measure import DensityTable, density_table
from .oracle import empirical_cdf_distance, truncated_spectrum
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig
from .scattering import phase_table
from .spectrum import critical_coupling, eigenvalue

_COMMANDS = ("density", "density2d", "eigencurve", "scatter", "verify", "oracle")


@dataclass
class RunConfig:
    command: str
    k: int = 0
    beta: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0
    grid: tuple[float, float, int] = (-2.0, 2.0, 401)
    beta_max: float = 3.0
    steps: int = 50
    fmt: str = "csv"
    out: str | None = None
    unwrap: bool = False
    n_dim: int = 2000
    k_max: int = 6
    seed: int = 42
    quadrature: QuadratureConfig = field(default_factory=lambda: DEFAULT_QUADRATURE)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _n_threads() -> int:
    env = os.environ.get("JACSPEC_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise DomainError(f"JACSPEC_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise DomainError("JACSPEC_THREADS must be >= 1")
        return n
    return os.cpu_count() or 1


def _fan_out(fn, grid: np.ndarray) -> np.ndarray:
    """Apply a vectorized function over grid chunks on a thread pool.

    Chunking is deterministic and assembly is order-preserving, so the result
    is independent of the worker count.
    """
    n = _n_threads()
    if n == 1 or grid.size < 64:
        return np.asarray(fn(grid))
    chunks = np.array_split(grid, min(4 * n, grid.size))
    with ThreadPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(lambda g: np.asarray(fn(g)), chunks))
    return np.concatenate(parts)


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be min:max:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be min:max:count, got {text!r}")
    if count < 2:
        raise argparse.ArgumentTypeError("grid count must be >= 2")
    if not lo < hi:
        raise argparse.ArgumentTypeError("grid requires min < max")
    return lo, hi, count


def _grid_array(spec: tuple[float, float, int]) -> np.ndarray:
    lo, hi, count = spec
    return np.linspace(lo, hi, count)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _csv(header: str, columns: list[np.ndarray]) -> str:
    lines = [header]
    for row in zip(*columns):
        lines.append(",".join(_fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _table_json(table: DensityTable) -> str:
    return _json_text({
        "descriptor": table.descriptor,
        "grid": [float(x) for x in table.grid],
        "values": [float(v) for v in table.values],
        "total_mass": table.total_mass,
        "metadata": table.metadata,
    })


def _cmd_density(cfg: RunConfig) -> int:
    grid = _grid_array(cfg.grid)
    if cfg.command == "density":
        params = Coupling(cfg.k, cfg.beta)
        kind = "rank-one"
    else:
        params = Coupling2D(cfg.beta1, cfg.beta2)
        kind = "rank-two"
    table = density_table(kind, params, grid, cfg.quadrature)
    if grid.size >= 64:  # recompute via the thread fan-out, order-preserving
        from .measure import _density_fn

        table.values = _fan_out(_density_fn(kind, params), grid)
    if cfg.fmt == "csv":
        _write(_csv("lambda,density", [table.grid, table.values]), cfg.out)
    else:
        _write(_table_json(table), cfg.out)
    return 0


def _cmd_eigencurve(cfg: RunConfig) -> int:
    beta_c = critical_coupling(cfg.k)
    if cfg.beta_max <= beta_c:
        raise DomainError(
            f"beta-max must exceed the critical coupling {beta_c!r} for k = {cfg.k}"
        )
    if cfg.steps < 1:
        raise DomainError("steps must be >= 1")
    betas = np.array([beta_c + j * (cfg.beta_max - beta_c) / cfg.steps
                      for j in range(1, cfg.steps + 1)])
    lams = np.array([eigenvalue(Coupling(cfg.k, float(b))).lam for b in betas])
    if cfg.fmt == "csv":
        _write(_csv("beta,lambda", [betas, lams]), cfg.out)
    else:
        _write(_json_text({
            "k": cfg.k,
            "beta_critical": beta_c,
            "beta": [float(b) for b in betas],
            "lambda": [float(x) for x in lams],
        }), cfg.out)
    return 0


def _cmd_scatter(cfg: RunConfig) -> int:
    grid = _grid_array(cfg.grid)
    c = Coupling(cfg.k, cfg.beta)
    table = phase_table(c, grid, unwrap=cfg.unwrap)
    cols = [table.grid, table.s_values.real, table.s_values.imag, table.phase]
    header = "lambda,re_s,im_s,phase"
    if cfg.unwrap:
        cols.append(table.phase_unwrapped)
        header += ",phase_unwrapped"
    if cfg.fmt == "csv":
        _write(_csv(header, cols), cfg.out)
    else:
        obj = {
            "coupling": {"k": c.k, "beta": c.beta},
            "grid": [float(x) for x in table.grid],
            "re_s": [float(v) for v in table.s_values.real],
            "im_s": [float(v) for v in table.s_values.imag],
            "phase": [float(v) for v in table.phase],
        }
        if cfg.unwrap:
            obj["phase_unwrapped"] = [float(v) for v in table.phase_unwrapped]
        _write(_json_text(obj), cfg.out)
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    results = verify.run_all(k_max=cfg.k_max, seed=cfg.seed)
    lines = [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed "
                 f"(k_max={cfg.k_max}, seed={cfg.seed})")
    _write("\n".join(lines) + "\n", cfg.out)
    return 3 if n_fail else 0


def _cmd_oracle(cfg: RunConfig) -> int:
    if cfg.beta1 != 0.0 or cfg.beta2 != 0.0:
        coupling = Coupling2D(cfg.beta1, cfg.beta2)
        coupling_obj = {"beta1": coupling.beta1, "beta2": coupling.beta2}
        bound = None
    else:
        coupling = Coupling(cfg.k, cfg.beta)
        coupling_obj = {"k": coupling.k, "beta": coupling.beta}
        bound = eigenvalue(coupling)
    res = truncated_spectrum(coupling, cfg.n_dim)
    distance = empirical_cdf_distance(coupling, cfg.n_dim, cfg.quadrature)
    outliers = np.abs(res.eigenvalues) > 2.0
    report = {
        "n_dim": res.n_dim,
        "coupling": coupling_obj,
        "cdf_distance": distance,
        "bound_state": None,
        "eigenvalues": [float(x) for x in res.eigenvalues],
        "weights": [float(w) for w in res.weights],
    }
    if bound is not None and bound.exists:
        extreme = res.eigenvalues[-1] if bound.side.value == "right" else res.eigenvalues[0]
        weight = float(res.weights[outliers].sum())
        report["bound_state"] = {
            "lambda_closed_form": bound.lam,
            "lambda_truncation": float(extreme),
            "difference": abs(bound.lam - float(extreme)),
            "weight": weight,
        }
    _write(_json_text(report), cfg.out)
    return 0


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"config line must be key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = {
    "k": int, "beta": float, "beta1": float, "beta2": float,
    "grid": _parse_grid, "beta-max": float, "steps": int, "format": str,
    "out": str, "unwrap": lambda s: s.lower() in ("1", "true", "yes"),
    "n-dim": int, "k-max": int, "seed": int,
    "abs-tol": float, "rel-tol": float, "max-depth": int,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jacspec",
        description="Spectral tables for the diagonally perturbed discrete "
                    "half-line Schrodinger operator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_default=None):
        p.add_argument("--config", help="key=value file; flags override it")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--abs-tol", type=float, default=DEFAULT_QUADRATURE.abs_tol)
        p.add_argument("--rel-tol", type=float, default=DEFAULT_QUADRATURE.rel_tol)
        p.add_argument("--max-depth", type=int, default=DEFAULT_QUADRATURE.max_depth)
        if grid_default is not None:
            p.add_argument("--grid", type=_parse_grid, default=_parse_grid(grid_default))

    p = sub.add_parser("density", help="rank-one perturbed spectral density table")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.0)
    common(p, grid_default="-2:2:401")

    p = sub.add_parser("density2d", help="rank-two perturbed spectral density table")
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--beta2", type=float, default=0.0)
    common(p, grid_default="-2:2:401")

    p = sub.add_parser("eigencurve", help="bound-state branch lambda(beta)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--beta-max", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=50)
    common(p)

    p = sub.add_parser("scatter", help="scattering coefficient table")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--unwrap", action="store_true",
                   help="add nearest-branch continued phases")
    common(p, grid_default="-1.99:1.99:401")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=42)
    common(p)

    p = sub.add_parser("oracle", help="truncated-matrix comparison report")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--beta1", type=float, default=0.0)
    p.add_argument("--beta2", type=float, default=0.0)
    p.add_argument("--n-dim", type=int, default=2000)
    common(p)
    return parser


def _apply_config_file(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    if "--config" not in argv:
        return
    path = argv[argv.index("--config") + 1] if argv.index("--config") + 1 < len(argv) else None
    if path is None:
        parser.error("--config requires a path")
    try:
        raw = _read_config_file(path)
    except OSError as exc:
        parser.error(f"cannot read config file: {exc}")
    except DomainError as exc:
        parser.error(str(exc))
    defaults = {}
    for key, value in raw.items():
        if key not in _CONFIG_KEYS:
            parser.error(f"unknown config key {key!r}")
        try:
            defaults[key.replace("-", "_")] = _CONFIG_KEYS[key](value)
        except (ValueError, argparse.ArgumentTypeError) as exc:
            parser.error(f"bad config value for {key!r}: {exc}")
    # applied as defaults on every subparser, so explicit flags still win
    for action in parser._subparsers._group_actions:  # noqa: SLF001
        for sub in action.choices.values():
            known = {a.dest for a in sub._actions}  # noqa: SLF001
            sub.set_defaults(**{k: v for k, v in defaults.items() if k in known})


def run(cfg: RunConfig) -> int:
    """Dispatch a parsed configuration; returns the process exit code."""
    if cfg.command in ("density", "density2d"):
        return _cmd_density(cfg)
    if cfg.command == "eigencurve":
        return _cmd_eigencurve(cfg)
    if cfg.command == "scatter":
        return _cmd_scatter(cfg)
    if cfg.command == "verify":
        return _cmd_verify(cfg)
    if cfg.command == "oracle":
        return _cmd_oracle(cfg)
    raise DomainError(f"unknown command {cfg.command!r}")  # pragma: no cover


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    quad = QuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol,
                            max_depth=args.max_depth)
    cfg = RunConfig(command=args.command, quadrature=quad,
                    fmt=args.format, out=args.out)
    for name in ("k", "beta", "beta1", "beta2", "grid", "steps",
                 "unwrap", "n_dim", "seed"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "beta_max"):
        cfg.beta_max = args.beta_max
    if hasattr(args, "k_max"):
        cfg.k_max = args.k_max
    return cfg


def _join_grid_flags(argv: list[str]) -> list[str]:
    # "--grid -2:2:401" looks like a following option to argparse; join it
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 1 < len(argv):
            out.append(f"--grid={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _join_grid_flags(list(sys.argv[1:] if argv is None else argv))
    parser = _build_parser()
    _apply_config_file(parser, argv)
    args = parser.parse_args(argv)
    try:
        return run(_config_from_args(args))
    except (DomainError, ConvergenceError, NumericalError) as exc:
        print(f"jacspec: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
