"""End-to-end plumbing: verification reports and reproducible artifacts.

The verification report pairs each analytically known level with the nearest
numeric eigenvalue (Dirichlet spectrum, or band edge for periodic families)
and applies the tolerance rule max(base, 10 * convergence_estimate); an
explicitly supplied tolerance is used as-is.  All files are written
atomically (temp file + rename) with fixed key order and shortest
round-trip float formatting, so identical configurations produce
byte-identical output.
"""

from __future__ import annotations

import json
import os
import tempfile

import numpy as np

from .catalog import CatalogEntry
from .fdsolve import Grid, band_edges, fd_eigensolve

__all__ = [
    "verification_report",
    "write_json_atomic",
    "write_csv_atomic",
    "sample_potential",
    "sample_wavefunctions",
    "spectrum_document",
]


def _match_levels(levels, numeric, estimates, base_tol, fixed_tol):
    rows = []
    all_pass = True
    for j, energy in levels:
        idx = int(np.argmin(np.abs(numeric - energy)))
        if fixed_tol is not None:
            tol = fixed_tol
        else:
            tol = max(base_tol, 10.0 * float(estimates[idx]))
        diff = abs(float(numeric[idx]) - energy)
        ok = diff <= tol
        all_pass &= ok
        rows.append({
            "level": j,
            "algebraic_E": float(energy),
            "numeric_E": float(numeric[idx]),
            "abs_diff": diff,
            "tolerance": tol,
            "pass": ok,
        })
    return rows, all_pass


def verification_report(entry: CatalogEntry, j_max: int | None = None,
                        points: int | None = None,
                        tolerance: float | None = None) -> dict:
    """Compare every analytically known level against the numeric oracle."""
    fd = dict(entry.fd_defaults)
    if points is not None:
        fd["points"] = int(points)
    base_tol = fd.get("base_tol", 1e-3)
    levels = entry.verification_levels(j_max)
    k = len(levels) + 6
    v_cap = fd.get("v_cap")

    if fd["bc"] == "bands":
        edges = band_edges(entry.potential, entry.period, count=k,
                           points=fd["points"], x_start=fd["x_min"],
                           v_cap=v_cap)
        numeric = np.array([e.energy for e in edges])
        estimates = np.array([e.convergence_estimate for e in edges])
        grid_meta = {"x_min": fd["x_min"], "x_max": fd["x_max"],
                     "points": fd["points"], "bc": "periodic+antiperiodic"}
    else:
        grid = Grid(fd["x_min"], fd["x_max"], fd["points"])
        spec = fd_eigensolve(entry.potential, grid, bc="dirichlet", k=k,
                             v_cap=v_cap)
        numeric = spec.eigenvalues
        estimates = spec.convergence_estimate
        if entry.domain[0] == 0.0:
            # half-line problem: confirm insensitivity to halving the inner
            # cutoff, folded into the per-level estimate
            eps = fd["x_min"]
            grid2 = Grid(eps / 2.0, fd["x_max"], fd["points"])
            spec2 = fd_eigensolve(entry.potential, grid2, bc="dirichlet",
                                  k=k, refine=False, v_cap=v_cap)
            estimates = np.maximum(
                estimates, np.abs(spec2.eigenvalues - numeric))
        grid_meta = {"x_min": fd["x_min"], "x_max": fd["x_max"],
                     "points": fd["points"], "bc": "dirichlet"}

    rows, all_pass = _match_levels(levels, numeric, estimates, base_tol,
                                   tolerance)
    return {
        "family": entry.name,
        "params": {key: float(v) for key, v in entry.params.items()},
        "n": entry.n,
        "sign": None if entry.sign is None else ("+" if entry.sign > 0 else "-"),
        "grid": grid_meta,
        "levels": rows,
        "all_pass": all_pass,
    }


# ---------------------------------------------------------------------------
# artifacts

def _atomic_write(path: str, data: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json_atomic(path: str, obj):
    _atomic_write(path, json.dumps(obj, indent=2) + "\n")


def write_csv_atomic(path: str, header: list[str], columns: list[np.ndarray]):
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def sample_potential(entry: CatalogEntry, samples: int,
                     x_range: tuple[float, float] | None = None):
    lo, hi = x_range if x_range is not None else entry.plot_range
    x = np.linspace(lo, hi, samples)
    return x, np.asarray(entry.potential(x), float)


def sample_wavefunctions(entry: CatalogEntry, x: np.ndarray,
                         j_values: list[int]):
    cols = []
    for j in j_values:
        psi = entry.closed_form_wavefunction(j)
        cols.append(np.asarray(psi(x), float))
    return cols


def spectrum_document(entry: CatalogEntry, j_values: list[int],
                      warnings_list: list[str] | None = None) -> dict:
    doc = {
        "family": entry.name,
        "params": {key: float(v) for key, v in entry.params.items()},
        "n": entry.n,
        "sign": None if entry.sign is None else ("+" if entry.sign > 0 else "-"),
        "class": entry.kind,
    }
    levels = []
    if entry.kind == "es":
        for j in j_values:
            levels.append({"j": j, "E": entry.closed_form_energy(j)})
    else:
        for j, lv in enumerate(entry.spectral().levels):
            levels.append({
                "j": j,
                "d": lv.d,
                "E": lv.E,
                "b": [float(v) for v in lv.b],
                "imag_residual": lv.imag_residual,
            })
    doc["levels"] = levels
    doc["warnings"] = warnings_list or []
    return doc
