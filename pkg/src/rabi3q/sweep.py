"""Parameter sweeps over coupling and detuning, file output, entanglement-death
search and figure-data regeneration."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, NoDeathFound, Rabi3QError
from .exact import solve_converged, solve_exact
from .model import ModelParams, auto_cutoff
from .observables import state_entanglement
from .observables import fidelity as state_fidelity
from .plot import emit_plot
from .transform import quadratic_energy, transformed_ground

SERIES = (
    "chi",
    "c3",
    "energy_exact",
    "energy_transformed",
    "energy_quadratic",
    "fidelity",
    "ent_exact",
    "ent_transformed",
)
# series id -> SweepRow column
SERIES_COLUMN = {
    "chi": "chi",
    "c3": "c3",
    "energy_exact": "e_exact",
    "energy_transformed": "e_transformed",
    "energy_quadratic": "e_quadratic",
    "fidelity": "fidelity",
    "ent_exact": "ent_exact",
    "ent_transformed": "ent_transformed",
}

DEATH_ZERO = 1e-12
DEATH_ALIVE = 1e-6
DEATH_RESOLUTION = 1e-3


@dataclass
class SweepSpec:
    w_c_list: list[float]
    g_min: float = 0.0
    g_max: float = 1.0
    g_steps: int = 51
    w_a: float = 1.0
    cutoff: int | str = "auto"
    tol: float = 1e-10
    outputs: tuple[str, ...] = SERIES
    format: str = "csv"
    out_path: str | None = None

    def validate(self) -> None:
        if not self.w_c_list:
            raise ConfigError("w_c_list is empty")
        if any(not w > 0 for w in self.w_c_list):
            raise ConfigError(f"all w_c must be positive, got {self.w_c_list}")
        if not self.w_a > 0:
            raise ConfigError(f"w_a must be positive, got {self.w_a}")
        if self.g_min < 0 or self.g_max < self.g_min:
            raise ConfigError(f"need 0 <= g_min <= g_max, got [{self.g_min}, {self.g_max}]")
        if self.g_max > self.g_min and self.g_steps < 2:
            raise ConfigError(f"g_steps must be >= 2 for a range, got {self.g_steps}")
        if self.g_steps < 1:
            raise ConfigError(f"g_steps must be >= 1, got {self.g_steps}")
        if not (self.cutoff == "auto" or (isinstance(self.cutoff, int) and self.cutoff >= 1)):
            raise ConfigError(f"cutoff must be 'auto' or a positive integer, got {self.cutoff!r}")
        if not self.tol > 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        unknown = set(self.outputs) - set(SERIES)
        if unknown:
            raise ConfigError(f"unknown series {sorted(unknown)}; choose from {SERIES}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")

    def g_values(self) -> np.ndarray:
        if self.g_max == self.g_min:
            return np.array([self.g_min])
        return np.linspace(self.g_min, self.g_max, self.g_steps)


@dataclass
class SweepRow:
    w_c: float
    g: float
    chi: float = math.nan
    c3: float = math.nan
    e_exact: float = math.nan
    e_transformed: float = math.nan
    e_quadratic: float = math.nan
    rel_err: float = math.nan
    fidelity: float = math.nan
    ent_exact: float = math.nan
    ent_transformed: float = math.nan
    cutoff_used: int = 0
    status: str = "ok"


ROW_FIELDS = [f.name for f in fields(SweepRow)]


def resolve_cutoff(w_c: float, g: float, cutoff: int | str) -> int:
    if cutoff == "auto":
        return auto_cutoff(g / w_c)
    return int(cutoff)


def compute_row(w_a: float, w_c: float, g: float, cutoff: int | str = "auto", tol: float = 1e-10) -> SweepRow:
    """All scalars at one grid point. Solver errors land in ``status``."""
    row = SweepRow(w_c=w_c, g=g)
    p = ModelParams(w_a, w_c, g)
    row.e_quadratic = quadratic_energy(p)
    try:
        n = resolve_cutoff(w_c, g, cutoff)
        exact = solve_converged(p, tol, n) if cutoff == "auto" else solve_exact(p, n)
        row.cutoff_used = exact.cutoff_used
        row.e_exact = exact.energy
        row.ent_exact = state_entanglement(exact.state)
        tr = transformed_ground(p, exact.cutoff_used)
        row.chi = tr.chi
        row.c3 = tr.coeffs.C3
        row.e_transformed = tr.energy
        row.ent_transformed = state_entanglement(tr.state)
        row.fidelity = state_fidelity(tr.state, exact.state)
        row.rel_err = abs(row.e_transformed - row.e_exact) / abs(row.e_exact)
    except Rabi3QError as exc:
        row.status = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the grid (``w_c`` outer, ``g`` inner) and write ``spec.out_path``
    if set."""
    spec.validate()
    t0 = time.perf_counter()
    rows = [
        compute_row(spec.w_a, w_c, float(g), spec.cutoff, spec.tol)
        for w_c in spec.w_c_list
        for g in spec.g_values()
    ]
    if spec.out_path:
        write_rows(rows, spec.out_path, spec.format, meta=spec_meta(spec), wall_time=time.perf_counter() - t0)
    return rows


def spec_meta(spec: SweepSpec) -> dict:
    d = asdict(spec)
    d["outputs"] = list(spec.outputs)
    d.pop("out_path")
    return d


def _fmt(value) -> str:
    if isinstance(value, float):
        return "" if math.isnan(value) else format(value, ".17g")
    return str(value)


def format_csv(rows: list[SweepRow], columns: list[str] | None = None, meta: dict | None = None,
               wall_time: float | None = None, extra_footer: list[str] = ()) -> str:
    """CSV body plus ``#`` footer. Only the last footer line (wall time and
    timestamp) varies between identical runs."""
    columns = columns or ROW_FIELDS
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        d = asdict(row)
        writer.writerow([_fmt(d[c]) for c in columns])
    buf.write(f"# tool: rabi3q {__version__}\n")
    if meta is not None:
        buf.write(f"# spec: {json.dumps(meta, sort_keys=True)}\n")
    for line in extra_footer:
        buf.write(f"# {line}\n")
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    wall = "" if wall_time is None else f"{wall_time:.3f}"
    buf.write(f"# wall_time_s: {wall} generated: {stamp}\n")
    return buf.getvalue()


def format_json(rows: list[SweepRow], columns: list[str] | None = None, meta: dict | None = None,
                wall_time: float | None = None) -> str:
    columns = columns or ROW_FIELDS

    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    doc = {
        "rows": [{c: clean(asdict(r)[c]) for c in columns} for r in rows],
        "meta": {"tool": f"rabi3q {__version__}", "spec": meta, "wall_time_s": wall_time},
    }
    return json.dumps(doc, indent=1)


def write_rows(rows, out_path, fmt="csv", columns=None, meta=None, wall_time=None, extra_footer=()):
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        text = format_json(rows, columns, meta, wall_time)
    else:
        text = format_csv(rows, columns, meta, wall_time, extra_footer)
    path.write_text(text, encoding="utf-8")
    return path


def read_csv(path) -> list[dict]:
    """Parse a file written by :func:`write_rows`, skipping footer lines."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    out = []
    for rec in csv.DictReader(lines):
        row = {}
        for k, v in rec.items():
            if k == "status":
                row[k] = v
            elif k == "cutoff_used":
                row[k] = int(v)
            else:
                row[k] = float(v) if v != "" else math.nan
        out.append(row)
    return out


def entanglement_at(w_a: float, w_c: float, g: float, which: str, tol: float = 1e-10) -> float:
    """Pairwise entanglement of the exact or transformed ground state at ``g``,
    on a cutoff verified by doubling."""
    p = ModelParams(w_a, w_c, g)
    exact = solve_converged(p, tol, auto_cutoff(g / w_c))
    if which == "exact":
        return state_entanglement(exact.state)
    if which == "transformed":
        return state_entanglement(transformed_ground(p, exact.cutoff_used).state)
    raise ValueError(f"which must be 'exact' or 'transformed', got {which!r}")


def locate_death(g_values, values) -> int | None:
    """Index of the first sample below ``DEATH_ZERO`` that follows a sample
    above ``DEATH_ALIVE``, or None."""
    alive = False
    for i, v in enumerate(values):
        if v > DEATH_ALIVE:
            alive = True
        elif alive and v < DEATH_ZERO:
            return i
    return None


def find_entanglement_death(w_a: float, w_c: float, which: str = "exact", g_max: float = 3.0,
                            g_step: float = 0.01, tol: float = 1e-10) -> float:
    """Smallest coupling past the peak where pairwise entanglement is zero.

    Scans ``[0, g_max]`` on a ``g_step`` grid, then bisects the bracketing
    cell down to ``1e-3``. Raises :class:`NoDeathFound` if the entanglement
    never exceeds ``1e-6`` or never drops below ``1e-12`` afterwards.
    """
    n = int(round(g_max / g_step)) + 1
    gs = np.linspace(0.0, g_max, n)
    vals = [entanglement_at(w_a, w_c, float(g), which, tol) for g in gs]
    i = locate_death(gs, vals)
    if i is None:
        peak = max(vals)
        raise NoDeathFound(
            f"{which} entanglement (peak {peak:.3g}, last {vals[-1]:.3g}) does not "
            f"vanish on [0, {g_max:g}] for w_c={w_c:g}"
        )
    lo, hi = float(gs[i - 1]), float(gs[i])
    while hi - lo > DEATH_RESOLUTION:
        mid = (lo + hi) / 2
        if entanglement_at(w_a, w_c, mid, which, tol) < DEATH_ZERO:
            hi = mid
        else:
            lo = mid
    return hi


# figure id -> (g range key, series)
FIG1 = {
    "fig1a": ["chi"],
    "fig1b": ["c3"],
    "fig1c": ["energy_exact", "energy_transformed"],
    "fig1d": ["fidelity"],
}
FIG1_COMBINED = "fig1_energy_combined"
FIG2 = ("fig2a", "fig2b", "fig2c")
FIGURE_WC = (0.8, 1.0, 1.2)


@dataclass
class FigureConfig:
    out_dir: str
    w_a: float = 1.0
    w_c_list: tuple[float, ...] = FIGURE_WC
    points: int = 201
    fig1_g_max: float = 1.0
    fig2_g_max: float = 3.0
    tol: float = 1e-10
    svg: bool = False


def generate_figures(cfg: FigureConfig) -> dict[str, Path]:
    """Write fig1a-fig1d, the combined energy table and fig2a-fig2c.

    The fig2 panels take one detuning each, in the order of ``w_c_list``.
    """
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    t0 = time.perf_counter()

    fig1 = SweepSpec(list(cfg.w_c_list), 0.0, cfg.fig1_g_max, cfg.points, cfg.w_a, "auto", cfg.tol)
    rows1 = run_sweep(fig1)
    base = ["w_c", "g"]
    for name, series in FIG1.items():
        cols = base + [SERIES_COLUMN[s] for s in series] + ["cutoff_used", "status"]
        files[name] = write_rows(rows1, out / f"{name}.csv", columns=cols, meta=spec_meta(fig1),
                                 wall_time=time.perf_counter() - t0)
        if cfg.svg:
            for s in series:
                emit_plot(rows1, s, out / f"{name}_{s}.svg", cfg.w_a)
    cols = base + ["e_exact", "e_transformed", "e_quadratic", "rel_err", "cutoff_used", "status"]
    files[FIG1_COMBINED] = write_rows(rows1, out / f"{FIG1_COMBINED}.csv", columns=cols,
                                      meta=spec_meta(fig1), wall_time=time.perf_counter() - t0)

    for name, w_c in zip(FIG2, cfg.w_c_list):
        spec = SweepSpec([w_c], 0.0, cfg.fig2_g_max, cfg.points, cfg.w_a, "auto", cfg.tol)
        rows = run_sweep(spec)
        footer = []
        for which, col in (("exact", "ent_exact"), ("transformed", "ent_transformed")):
            gs = [r.g for r in rows]
            i = locate_death(gs, [getattr(r, col) for r in rows])
            footer.append(f"death_{which}_sampled: {'none' if i is None else _fmt(gs[i])}")
        cols = base + ["ent_exact", "ent_transformed", "cutoff_used", "status"]
        files[name] = write_rows(rows, out / f"{name}.csv", columns=cols, meta=spec_meta(spec),
                                 wall_time=time.perf_counter() - t0, extra_footer=footer)
        if cfg.svg:
            for s in ("ent_exact", "ent_transformed"):
                emit_plot(rows, s, out / f"{name}_{s}.svg", cfg.w_a)
    return files
