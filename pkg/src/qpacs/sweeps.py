"""Parameter sweeps and figure presets written as CSV.

A :class:`SweepSpec` fixes every parameter but one and samples that axis on a
uniform grid. Rows come out in axis order whatever the worker count; a point
that fails (for instance ``|alpha|`` outside the convergence disk) is written
with empty numeric fields and the exception name in the ``error`` column.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .errors import QPACSError
from .moments import DEFAULT_TOL, MomentQuery, evaluate
from .photon_stats import correlation, mandel
from .qalgebra import DeformationParam
from .squeezing import hillery, hong_mandel
from .states import DISK_MARGIN

__all__ = [
    "AXES",
    "COLUMNS",
    "PRESETS",
    "QUANTITIES",
    "FigurePreset",
    "SweepSpec",
    "evaluate_point",
    "run_figure",
    "run_sweep",
    "sweep_rows",
]

QUANTITIES = ("hillery", "hong_mandel", "correlation", "mandel", "moment")
AXES = ("phi", "alpha_abs", "q")

_SQUEEZE_COLS = ("q", "alpha_re", "alpha_im", "m", "N", "phi", "numerator", "denominator",
                 "value", "squeezed", "error")
_STATS_COLS = ("q", "alpha_re", "alpha_im", "m", "N", "mean_M", "central_moment", "g", "Q",
               "classification", "error")
_MOMENT_COLS = ("q", "alpha_re", "alpha_im", "m", "N", "L", "ordering", "value_re", "value_im",
                "tail_estimate", "terms_used", "error")

COLUMNS = {
    "hillery": _SQUEEZE_COLS,
    "hong_mandel": _SQUEEZE_COLS,
    "correlation": _STATS_COLS,
    "mandel": _STATS_COLS,
    "moment": _MOMENT_COLS,
}

_DEFAULTS = {"q": 0.9, "alpha": 1.0, "m": 0, "N": 1, "phi": 0.0, "L": 0, "ordering": "normal"}


class SweepSpecError(ValueError):
    """A sweep description is structurally invalid."""


@dataclass(frozen=True)
class SweepSpec:
    """One curve: ``quantity`` evaluated along ``axis`` with the other parameters fixed.

    ``fixed`` may hold ``q``, ``alpha`` (complex), ``m``, ``N``, ``phi`` and, for
    moments, ``L`` and ``ordering``. Sweeping ``alpha_abs`` keeps the phase of the
    fixed ``alpha`` (zero if absent).
    """

    quantity: str
    axis: str
    start: float
    stop: float
    count: int
    fixed: dict = field(default_factory=dict)
    label: str = ""

    def validate(self) -> None:
        if self.quantity not in QUANTITIES:
            raise SweepSpecError(f"unknown quantity {self.quantity!r}")
        if self.axis not in AXES:
            raise SweepSpecError(f"unknown axis {self.axis!r}")
        if self.count < 2:
            raise SweepSpecError("count must be >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise SweepSpecError("range bounds must be finite")
        axis_key = {"phi": "phi", "alpha_abs": "alpha_abs", "q": "q"}[self.axis]
        if axis_key in self.fixed:
            raise SweepSpecError(f"axis {self.axis!r} also appears in fixed parameters")
        if self.axis == "alpha_abs" and min(self.start, self.stop) < 0:
            raise SweepSpecError("|alpha| range must be nonnegative")
        if self.axis == "q" and not (0 <= min(self.start, self.stop) and max(self.start, self.stop) <= 1):
            raise SweepSpecError("q range must lie in [0, 1]")
        unknown = set(self.fixed) - set(_DEFAULTS)
        if unknown:
            raise SweepSpecError(f"unknown fixed parameters {sorted(unknown)}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def points(self) -> list[dict]:
        self.validate()
        base = dict(_DEFAULTS)
        base.update(self.fixed)
        base["alpha"] = complex(base["alpha"])
        theta = cmath.phase(base["alpha"]) if base["alpha"] != 0 else 0.0
        out = []
        for x in self.grid():
            p = dict(base)
            if self.axis == "phi":
                p["phi"] = float(x)
            elif self.axis == "q":
                p["q"] = float(x)
            else:
                p["alpha"] = complex(cmath.rect(float(x), theta))
            out.append(p)
        return out

    def to_json(self) -> dict:
        d = asdict(self)
        d["fixed"] = {k: _jsonable(v) for k, v in self.fixed.items()}
        return d


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.17e}"


def evaluate_point(quantity: str, p: dict, tol: float = DEFAULT_TOL) -> dict:
    """Evaluate one grid point; returns a row dict keyed by :data:`COLUMNS`."""
    alpha = complex(p["alpha"])
    row = {"q": p["q"], "alpha_re": alpha.real, "alpha_im": alpha.imag, "m": int(p["m"]),
           "N": int(p["N"]), "error": ""}
    if quantity in ("hillery", "hong_mandel"):
        row["phi"] = p["phi"]
    if quantity == "moment":
        row["L"] = int(p["L"])
        row["ordering"] = p["ordering"]
    try:
        dp = DeformationParam(p["q"])
        if quantity in ("hillery", "hong_mandel"):
            fn = hillery if quantity == "hillery" else hong_mandel
            rep = fn(alpha, int(p["m"]), dp, int(p["N"]), float(p["phi"]), tol)
            row.update(numerator=rep.numerator, denominator=rep.denominator, value=rep.value,
                       squeezed=rep.squeezed)
        elif quantity in ("correlation", "mandel"):
            fn = correlation if quantity == "correlation" else mandel
            rep = fn(int(p["N"]), alpha, int(p["m"]), dp, tol)
            row.update(mean_M=rep.mean_M, central_moment=rep.central_moment, g=rep.g, Q=rep.Q,
                       classification=rep.classification)
        else:
            query = MomentQuery(int(p["N"]), int(p["L"]), p["ordering"])
            mv = evaluate(query, alpha, int(p["m"]), dp, tol)
            row.update(value_re=mv.value.real, value_im=mv.value.imag,
                       tail_estimate=mv.tail_estimate, terms_used=mv.terms_used)
    except (QPACSError, ValueError, ArithmeticError) as exc:
        row["error"] = type(exc).__name__
    return row


def _evaluate_task(args):
    quantity, p, tol = args
    return evaluate_point(quantity, p, tol)


def sweep_rows(spec: SweepSpec, tol: float = DEFAULT_TOL, threads: int = 1) -> list[dict]:
    """Evaluate every grid point of ``spec``, in axis order."""
    tasks = [(spec.quantity, p, tol) for p in spec.points()]
    if threads <= 1 or len(tasks) < 2:
        return [_evaluate_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * threads))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_evaluate_task, tasks, chunksize=chunk))


def write_rows(rows: Iterable[dict], quantity: str, out: TextIO) -> None:
    cols = COLUMNS[quantity]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in cols])


def run_sweep(spec: SweepSpec, out: TextIO, tol: float = DEFAULT_TOL, threads: int = 1,
              err: TextIO | None = None) -> int:
    """Write the CSV for ``spec`` to ``out``; returns a process exit status.

    An invalid spec returns 2 with a diagnostic on ``err``. Per-point failures
    are recorded in the ``error`` column and do not change the status.
    """
    try:
        spec.validate()
    except SweepSpecError as exc:
        if err is not None:
            print(f"invalid sweep: {exc}", file=err)
        return 2
    write_rows(sweep_rows(spec, tol, threads), spec.quantity, out)
    return 0


@dataclass(frozen=True)
class FigurePreset:
    id: str
    title: str
    series: tuple
    notes: tuple = ()


_Q = 0.9
_CLASSICAL = 1.0
_PHI_RANGE = (0.0, 2.0 * math.pi)
_ALPHA_MIN = 0.05
_ALPHA_MAX = 0.95 * DeformationParam(_Q).radius
_GRID = 721

_AXIS_NOTE = (
    f"|alpha| axis range [{_ALPHA_MIN}, 0.95 * radius(q=0.9) = {_ALPHA_MAX:.6f}] is an implementer "
    "choice; no numeric range is fixed for this axis. alpha is real along |alpha| axes."
)
_BASELINE_NOTE = "q = 1 curves are the undeformed harmonic-oscillator baselines (scattered dots)."


def _pair(quantity, axis, rng, fixed, label):
    # deformed curve plus its undeformed baseline on the same grid
    start, stop = rng
    return (
        SweepSpec(quantity, axis, start, stop, _GRID, {**fixed, "q": _Q}, f"q0.9_{label}"),
        SweepSpec(quantity, axis, start, stop, _GRID, {**fixed, "q": _CLASSICAL}, f"classical_{label}"),
    )


def _build_presets() -> dict[str, FigurePreset]:
    alpha_rng = (_ALPHA_MIN, _ALPHA_MAX)
    presets = {}

    series = []
    for m in (1, 2, 3):
        series += _pair("hillery", "phi", _PHI_RANGE, {"alpha": 2.1, "N": 1, "m": m}, f"m{m}")
    presets["fig1a"] = FigurePreset("fig1a", "Hillery S_H vs phi, N=1, alpha=2.1", tuple(series),
                                    (_BASELINE_NOTE,))

    series = []
    for N in (2, 3, 4):
        series += _pair("hillery", "alpha_abs", alpha_rng, {"phi": 0.1, "m": 1, "N": N}, f"N{N}")
    presets["fig1b"] = FigurePreset("fig1b", "Hillery S_H vs |alpha|, phi=0.1, m=1", tuple(series),
                                    (_BASELINE_NOTE, _AXIS_NOTE))

    series = []
    for m in (1, 2, 3):
        series += _pair("hong_mandel", "phi", _PHI_RANGE, {"alpha": 1.0 + 1.2j, "N": 4, "m": m}, f"m{m}")
    presets["fig2a"] = FigurePreset("fig2a", "Hong-Mandel S_HM vs phi, N=4, alpha=1.0+1.2i",
                                    tuple(series), (_BASELINE_NOTE,))

    series = []
    for N in (1, 2, 3, 4):
        series += _pair("hong_mandel", "alpha_abs", alpha_rng, {"phi": 0.1, "m": 3, "N": N}, f"N{N}")
    presets["fig2b"] = FigurePreset(
        "fig2b", "Hong-Mandel S_HM vs |alpha|, phi=0.1, m=3", tuple(series),
        (_BASELINE_NOTE, _AXIS_NOTE,
         "The N values are not fixed; N = 1..4 covers both readings of the label "
         "(N itself, or the squeezing order 2N in {2, 4, 6, 8})."),
    )

    series = []
    for m in (1, 2, 3):
        series += _pair("correlation", "alpha_abs", alpha_rng, {"N": 2, "m": m}, f"m{m}")
    presets["fig3a"] = FigurePreset("fig3a", "g^(N)(0) vs |alpha|, N=2", tuple(series),
                                    (_BASELINE_NOTE, _AXIS_NOTE, "m in {1, 2, 3} is an implementer choice."))

    series = []
    for N in (2, 4, 6):
        series += _pair("correlation", "alpha_abs", alpha_rng, {"N": N, "m": 1}, f"N{N}")
    presets["fig3b"] = FigurePreset("fig3b", "g^(N)(0) vs |alpha|, m=1", tuple(series),
                                    (_BASELINE_NOTE, _AXIS_NOTE))

    series = []
    for m in (1, 2, 3):
        series += _pair("mandel", "alpha_abs", alpha_rng, {"N": 2, "m": m}, f"m{m}")
    presets["fig4a"] = FigurePreset("fig4a", "Q_N vs |alpha|, N=2", tuple(series),
                                    (_BASELINE_NOTE, _AXIS_NOTE, "m in {1, 2, 3} is an implementer choice."))

    series = []
    for N in (2, 4, 6):
        series += _pair("mandel", "alpha_abs", alpha_rng, {"N": N, "m": 1}, f"N{N}")
    presets["fig4b"] = FigurePreset("fig4b", "Q_N vs |alpha|, m=1", tuple(series),
                                    (_BASELINE_NOTE, _AXIS_NOTE, "N in {2, 4, 6} mirrors fig3b."))

    series = tuple(
        SweepSpec("mandel", "q", 0.5, 0.999, _GRID, {"alpha": a, "m": 1, "N": 2}, f"alpha{a}")
        for a in (1.0, 1.5, 2.0)
    )
    presets["fig5"] = FigurePreset(
        "fig5", "Q_2 vs q, m=1, N=2", series,
        ("alpha in {1.0, 1.5, 2.0} is an implementer choice; no values are fixed for this panel.",
         f"Points with |alpha| >= {DISK_MARGIN} / sqrt(1 - q^2) lie outside the convergence disk "
         "and carry DivergenceError in the error column."),
    )
    return presets


PRESETS = _build_presets()


def run_figure(preset_id: str, out_dir: str, tol: float = DEFAULT_TOL, threads: int = 1) -> int:
    """Write one CSV per curve of a preset plus ``<preset>_manifest.json``."""
    preset = PRESETS.get(preset_id)
    if preset is None:
        raise KeyError(f"unknown figure preset {preset_id!r}; choose from {sorted(PRESETS)}")
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for spec in preset.series:
        name = f"{preset.id}_{spec.label}.csv"
        with open(os.path.join(out_dir, name), "w", encoding="utf-8", newline="") as fh:
            run_sweep(spec, fh, tol=tol, threads=threads)
        files.append({"file": name, "spec": spec.to_json()})
    manifest = {"id": preset.id, "title": preset.title, "tol": tol, "curves": files,
                "notes": list(preset.notes)}
    with open(os.path.join(out_dir, f"{preset.id}_manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0
