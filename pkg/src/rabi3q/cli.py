"""Command-line front end: ``point``, ``sweep``, ``death`` and ``figures``.

Every long flag can also be set in a flat ``key = value`` file passed with
``--config``; flags given on the command line win. Repeated keys (``wc``)
accumulate, and ``wc`` also accepts a comma-separated list.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .errors import ConfigError, Rabi3QError
from .plot import emit_plot
from .sweep import (
    SERIES,
    FigureConfig,
    SweepSpec,
    compute_row,
    find_entanglement_death,
    generate_figures,
    run_sweep,
)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 1, 2

DEFAULTS = {
    "wa": 1.0,
    "wc": None,
    "g": None,
    "g_min": 0.0,
    "g_max": 1.0,
    "g_steps": 51,
    "cutoff": "auto",
    "tol": 1e-10,
    "out": None,
    "format": "csv",
    "svg": False,
    "which": "exact",
    "series": None,
}


def load_config(path) -> dict:
    """Parse a flat ``key = value`` file. Dashes in keys become underscores."""
    values: dict = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in ("wc", "series"):
            values.setdefault(key, []).extend(v.strip() for v in value.split(",") if v.strip())
        else:
            values[key] = value
    return values


def _float(name, value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"--{name.replace('_', '-')} expects a number, got {value!r}") from None


def _bool(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults < config file < command line and coerce types."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(load_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            cfg[key] = value
    for key in ("wa", "g_min", "g_max", "tol"):
        cfg[key] = _float(key, cfg[key])
    if cfg["g"] is not None:
        cfg["g"] = _float("g", cfg["g"])
    cfg["wc"] = [_float("wc", w) for w in (cfg["wc"] or [1.0])]
    try:
        cfg["g_steps"] = int(cfg["g_steps"])
    except ValueError:
        raise ConfigError(f"--g-steps expects an integer, got {cfg['g_steps']!r}") from None
    if str(cfg["cutoff"]).lower() == "auto":
        cfg["cutoff"] = "auto"
    else:
        try:
            cfg["cutoff"] = int(cfg["cutoff"])
        except ValueError:
            raise ConfigError(f"--cutoff expects an integer or 'auto', got {cfg['cutoff']!r}") from None
    cfg["svg"] = _bool(cfg["svg"])
    cfg["series"] = tuple(cfg["series"]) if cfg["series"] else SERIES
    if cfg["which"] not in ("exact", "transformed"):
        raise ConfigError(f"--which must be exact or transformed, got {cfg['which']!r}")
    return cfg


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; command-line flags override it")
    p.add_argument("--wa", help="qubit frequency (energy unit, default 1)")
    p.add_argument("--wc", action="append", help="oscillator frequency; repeatable")
    p.add_argument("--cutoff", help="photon cutoff: integer or 'auto' (default)")
    p.add_argument("--tol", help="energy tolerance for cutoff doubling (default 1e-10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rabi3q", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="all scalars at one parameter set")
    _common(p)
    p.add_argument("--g", help="coupling strength")
    p.add_argument("--format", choices=("text", "json", "csv"), help="printout style (default text)")

    p = sub.add_parser("sweep", help="grid over g and w_c written to CSV/JSON")
    _common(p)
    p.add_argument("--g-min", dest="g_min")
    p.add_argument("--g-max", dest="g_max")
    p.add_argument("--g-steps", dest="g_steps")
    p.add_argument("--out", help="output file")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--series", action="append", choices=SERIES, help="series to plot with --svg; repeatable")
    p.add_argument("--svg", action="store_true", help="also write one SVG chart per series")

    p = sub.add_parser("death", help="coupling where pairwise entanglement vanishes")
    _common(p)
    p.add_argument("--which", choices=("exact", "transformed"))
    p.add_argument("--g-max", dest="g_max", help="end of the scanned interval (default 3)")

    p = sub.add_parser("figures", help="regenerate the fig1a-fig1d / fig2a-fig2c data files")
    _common(p)
    p.add_argument("--g-steps", dest="g_steps", help="points per panel (default 201)")
    p.add_argument("--out", help="output directory (default ./figures)")
    p.add_argument("--svg", action="store_true")
    return parser


def cmd_point(cfg: dict, fmt: str) -> int:
    if cfg["g"] is None:
        raise ConfigError("point needs --g")
    spec = SweepSpec(cfg["wc"][:1], cfg["g"], cfg["g"], 1, cfg["wa"], cfg["cutoff"], cfg["tol"])
    spec.validate()
    row = compute_row(cfg["wa"], cfg["wc"][0], cfg["g"], cfg["cutoff"], cfg["tol"])
    d = asdict(row)
    if fmt == "json":
        print(json.dumps(d, indent=1))
    elif fmt == "csv":
        print(",".join(d))
        print(",".join(format(v, ".17g") if isinstance(v, float) else str(v) for v in d.values()))
    else:
        for k, v in d.items():
            print(f"{k:16s} {format(v, '.17g') if isinstance(v, float) else v}")
    return EXIT_OK if row.status == "ok" else EXIT_SOLVER


def cmd_sweep(cfg: dict) -> int:
    if not cfg["out"]:
        raise ConfigError("sweep needs --out")
    spec = SweepSpec(
        w_c_list=cfg["wc"],
        g_min=cfg["g_min"],
        g_max=cfg["g_max"],
        g_steps=cfg["g_steps"],
        w_a=cfg["wa"],
        cutoff=cfg["cutoff"],
        tol=cfg["tol"],
        outputs=cfg["series"],
        format=cfg["format"],
        out_path=cfg["out"],
    )
    rows = run_sweep(spec)
    if cfg["svg"]:
        stem = Path(cfg["out"]).with_suffix("")
        for s in spec.outputs:
            emit_plot(rows, s, f"{stem}_{s}.svg", spec.w_a)
    failed = sum(r.status != "ok" for r in rows)
    print(f"wrote {len(rows)} rows to {cfg['out']} ({failed} failed)")
    return EXIT_OK


def cmd_death(cfg: dict, g_max: float) -> int:
    status = EXIT_OK
    for w_c in cfg["wc"]:
        try:
            g_star = find_entanglement_death(cfg["wa"], w_c, cfg["which"], g_max=g_max, tol=cfg["tol"])
            print(f"w_c={w_c:g} {cfg['which']}: g*={g_star:.4f}")
        except Rabi3QError as exc:
            print(f"w_c={w_c:g} {cfg['which']}: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = EXIT_SOLVER
    return status


def cmd_figures(cfg: dict, explicit_steps: bool, wc_given: bool) -> int:
    kwargs = {}
    if wc_given:
        kwargs["w_c_list"] = tuple(cfg["wc"])
    fc = FigureConfig(
        out_dir=cfg["out"] or "figures",
        w_a=cfg["wa"],
        points=cfg["g_steps"] if explicit_steps else 201,
        tol=cfg["tol"],
        svg=cfg["svg"],
        **kwargs,
    )
    t0 = time.perf_counter()
    files = generate_figures(fc)
    for name, path in files.items():
        print(f"{name}: {path}")
    print(f"done in {time.perf_counter() - t0:.1f} s")
    return EXIT_OK


def _given(args: argparse.Namespace, key: str) -> bool:
    if getattr(args, key, None) is not None:
        return True
    return bool(args.config) and key in load_config(args.config)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        if args.command == "point":
            return cmd_point(cfg, args.format or "text")
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "death":
            g_max = cfg["g_max"] if _given(args, "g_max") else 3.0
            return cmd_death(cfg, g_max)
        if args.command == "figures":
            return cmd_figures(cfg, _given(args, "g_steps"), _given(args, "wc"))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
