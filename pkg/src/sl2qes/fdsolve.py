"""Independent numerical oracle: finite-difference Schroedinger eigensolver.

Second-order central differences for -d^2/dx^2 + V(x) with Dirichlet,
periodic, or antiperiodic boundary conditions; band edges of a periodic
potential are the merged eigenvalues of the periodic and antiperiodic
problems over one period.  Nothing in here knows about the algebraic
construction, so agreement between the two routes is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from .errors import GridError

__all__ = [
    "Grid",
    "FdSpectrum",
    "BandEdge",
    "fd_eigensolve",
    "band_edges",
    "count_nodes",
    "residual",
]

_BCS = ("dirichlet", "periodic", "antiperiodic")


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if self.points < 16:
            raise GridError("need at least 16 grid points")
        if not self.x_max > self.x_min:
            raise GridError("empty grid interval")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.points)

    def refined(self) -> "Grid":
        return Grid(self.x_min, self.x_max, 2 * self.points - 1)


@dataclass
class FdSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray           # columns, on grid.nodes, max-norm 1
    bc: str
    grid: Grid
    convergence_estimate: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _potential_values(potential, x, v_cap=None):
    v = np.asarray(potential(x), dtype=float)
    if not np.all(np.isfinite(v)):
        raise GridError("potential is not finite at a grid node")
    if v_cap is not None:
        v = np.minimum(v, v_cap)
    return v


def _solve_once(potential, grid: Grid, bc: str, k: int, v_cap):
    h = grid.h
    inv_h2 = 1.0 / h ** 2
    if bc == "dirichlet":
        x = grid.nodes[1:-1]
        if k > len(x):
            raise GridError(f"k={k} exceeds the {len(x)} interior nodes")
        v = _potential_values(potential, x, v_cap)
        diag = 2.0 * inv_h2 + v
        off = -inv_h2 * np.ones(len(x) - 1)
        w, vecs = sla.eigh_tridiagonal(diag, off, select="i",
                                       select_range=(0, k - 1))
        full = np.zeros((grid.points, k))
        full[1:-1, :] = vecs
    else:
        x = grid.nodes[:-1]  # right endpoint identified with the left
        if k > len(x):
            raise GridError(f"k={k} exceeds the {len(x)} cell nodes")
        v = _potential_values(potential, x, v_cap)
        m = len(x)
        ham = np.zeros((m, m))
        idx = np.arange(m)
        ham[idx, idx] = 2.0 * inv_h2 + v
        ham[idx[:-1], idx[:-1] + 1] = -inv_h2
        ham[idx[:-1] + 1, idx[:-1]] = -inv_h2
        corner = -inv_h2 if bc == "periodic" else inv_h2
        ham[0, m - 1] += corner
        ham[m - 1, 0] += corner
        w, vecs = sla.eigh(ham, subset_by_index=(0, k - 1))
        closure = vecs[0, :] if bc == "periodic" else -vecs[0, :]
        full = np.vstack([vecs, closure])
    scale = np.max(np.abs(full), axis=0)
    scale[scale == 0.0] = 1.0
    full = full / scale
    return np.asarray(w, float), full


def fd_eigensolve(potential, grid: Grid, bc: str = "dirichlet", k: int = 6,
                  refine: bool = True, v_cap: float | None = None) -> FdSpectrum:
    """Lowest k eigenpairs of -d^2/dx^2 + V on the grid.

    With refine=True the same problem is re-solved at half the spacing and
    the per-eigenvalue Richardson difference (an error estimate for the
    values reported on the requested grid) is stored.  v_cap, when given,
    clips the potential from above; use it for steeply confining walls whose
    untruncated height would dominate the matrix norm.
    """
    if bc not in _BCS:
        raise GridError(f"unknown boundary condition {bc!r}")
    w, vecs = _solve_once(potential, grid, bc, k, v_cap)
    est = np.zeros(k)
    if refine:
        w_fine, _ = _solve_once(potential, grid.refined(), bc, k, v_cap)
        est = np.abs(w - w_fine) * (4.0 / 3.0)
    return FdSpectrum(eigenvalues=w, eigenvectors=vecs, bc=bc, grid=grid,
                      convergence_estimate=est)


@dataclass(frozen=True)
class BandEdge:
    energy: float
    parity: str              # "periodic" | "antiperiodic"
    convergence_estimate: float = 0.0


def band_edges(potential, period: float, count: int, points: int = 801,
               x_start: float = 0.0, refine: bool = True,
               v_cap: float | None = None) -> list[BandEdge]:
    """Band edges over one period: merged ascending list of the lowest
    `count` periodic and `count` antiperiodic eigenvalues."""
    grid = Grid(x_start, x_start + period, points)
    edges: list[BandEdge] = []
    for bc in ("periodic", "antiperiodic"):
        spec = fd_eigensolve(potential, grid, bc=bc, k=count, refine=refine,
                             v_cap=v_cap)
        for j in range(count):
            est = spec.convergence_estimate[j] if refine else 0.0
            edges.append(BandEdge(float(spec.eigenvalues[j]), bc, float(est)))
    edges.sort(key=lambda e: (e.energy, e.parity))
    return edges


def count_nodes(values, rel_tol: float = 1e-10) -> int:
    """Strict sign changes, ignoring samples below rel_tol * max|values|."""
    v = np.asarray(values, float)
    if not np.all(np.isfinite(v)):
        raise GridError("samples must be finite")
    peak = np.max(np.abs(v)) if v.size else 0.0
    if peak == 0.0:
        return 0
    keep = v[np.abs(v) > rel_tol * peak]
    if keep.size < 2:
        return 0
    signs = np.sign(keep)
    return int(np.sum(signs[1:] * signs[:-1] < 0))


def residual(potential, psi, energy: float, grid: Grid) -> float:
    """max |(-psi'' + (V - E) psi)| / max |psi| over interior nodes, with the
    second derivative from the five-point central stencil."""
    x = grid.nodes
    h = grid.h
    vals = np.asarray(psi(x), float)
    v = np.asarray(potential(x), float)
    d2 = (-vals[:-4] + 16 * vals[1:-3] - 30 * vals[2:-2]
          + 16 * vals[3:-1] - vals[4:]) / (12.0 * h ** 2)
    inner = slice(2, -2)
    res = -d2 + (v[inner] - energy) * vals[inner]
    peak = np.max(np.abs(vals))
    if peak == 0.0:
        raise GridError("wavefunction vanishes on the whole grid")
    return float(np.max(np.abs(res)) / peak)
