"""Grid discretization of the transfer operator and its stationary density.

The unit interval is cut into m equal cells and the map's action is reduced
to the row-stochastic matrix

    P[i][j] = |cell_i intersect T^{-1}(cell_j)| / |cell_i|,

assembled from exact branch preimages: on branch k (k >= N) the preimage of
[c, d) is the interval (N/(k+d), N/(k+c)].  The stationary vector of P is a
histogram approximation of the invariant density, recovered here without
ever using the closed form, so it cross-checks the analytic density
independently.

Branches are summed up to `branch_cutoff`.  Every branch with k > N*m lies
entirely inside the first cell, so only row 0 is affected by truncation;
those interior branches are accumulated in closed form via digamma
differences (sum of N/(k+t) over a k-range telescopes to digamma values),
and the residual mass beyond the cutoff is folded into each row
proportionally by the final row normalization.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Union

import numpy as np
from scipy.special import digamma

from .constants import density
from .dynamics import check_index

__all__ = [
    "PowerIterationError",
    "UlamModel",
    "build_model",
    "density_l1_error",
    "density_profile",
    "stationary",
    "transition_matrix",
    "write_density_profile",
]

MAX_CELLS = 2048  # dense matrices only; finer grids are out of scope


class PowerIterationError(RuntimeError):
    """Power iteration failed to reach the requested step tolerance."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (last L1 step {residual:.3e})"
        )


@dataclass
class UlamModel:
    """Discretized operator with its stationary vector and recovery error."""

    N: int
    m: int
    branch_cutoff: int
    matrix: np.ndarray
    stationary: np.ndarray
    l1_error: float
    iterations: int

    def summary(self) -> dict:
        return {
            "N": self.N,
            "m": self.m,
            "branch_cutoff": self.branch_cutoff,
            "l1_error": self.l1_error,
            "iterations": self.iterations,
        }


def _default_cutoff(N: int, m: int) -> int:
    return max(10 * N * m, 100_000)


def transition_matrix(N: int, m: int, branch_cutoff: int | None = None) -> np.ndarray:
    """Row-stochastic m-by-m cell-transition matrix of the index-N map."""
    check_index(N)
    if m < 16:
        raise ValueError(f"need at least 16 cells, got {m}")
    if m > MAX_CELLS:
        raise ValueError(f"dense grids beyond {MAX_CELLS} cells are not supported, got {m}")
    if branch_cutoff is None:
        branch_cutoff = _default_cutoff(N, m)
    if branch_cutoff < N * m:
        raise ValueError(
            f"branch_cutoff must be >= N*m = {N * m} so every straddling branch is explicit"
        )

    edges = np.arange(m + 1, dtype=np.float64) / m
    cols = np.arange(m)
    P = np.zeros((m, m))

    # branches that can straddle a cell boundary, handled interval by interval
    for k in range(N, N * m + 1):
        u = N / (k + edges)  # decreasing; column j's preimage is (u[j+1], u[j]]
        hi, lo = u[:-1], u[1:]
        i_hi = np.minimum((hi * m).astype(np.int64), m - 1)
        i_lo = np.minimum((lo * m).astype(np.int64), m - 1)
        same = i_lo == i_hi
        np.add.at(P, (i_lo[same], cols[same]), (hi - lo)[same])
        split = ~same
        if split.any():
            cut = i_hi[split] / m  # interval width <= 1/m, so one boundary at most
            np.add.at(P, (i_lo[split], cols[split]), cut - lo[split])
            np.add.at(P, (i_hi[split], cols[split]), hi[split] - cut)

    # branches fully inside cell 0: closed-form sum over k in [N*m+1, cutoff]
    first = N * m + 1
    if branch_cutoff >= first:
        s = N * (digamma(branch_cutoff + 1 + edges) - digamma(first + edges))
        P[0] += s[:-1] - s[1:]

    P /= P.sum(axis=1, keepdims=True)
    return P


def stationary(
    model_or_matrix: Union[UlamModel, np.ndarray],
    tol: float = 1e-13,
    max_iters: int = 100_000,
) -> np.ndarray:
    """Stationary probability vector by left power iteration from uniform.

    Stops when the L1 step change drops below tol; raises
    :class:`PowerIterationError` (with iteration diagnostics) otherwise.
    """
    pi, _ = _power_iteration(_matrix_of(model_or_matrix), tol, max_iters)
    return pi


def _matrix_of(model_or_matrix) -> np.ndarray:
    if isinstance(model_or_matrix, UlamModel):
        return model_or_matrix.matrix
    return np.asarray(model_or_matrix, dtype=np.float64)


def _power_iteration(P: np.ndarray, tol: float, max_iters: int) -> tuple[np.ndarray, int]:
    m = P.shape[0]
    pi = np.full(m, 1.0 / m)
    step = math.inf
    for iteration in range(1, max_iters + 1):
        nxt = pi @ P
        nxt /= nxt.sum()
        step = float(np.abs(nxt - pi).sum())
        pi = nxt
        if step < tol:
            return pi, iteration
    raise PowerIterationError(max_iters, step)


def density_l1_error(N: int, m: int, pi: np.ndarray) -> float:
    """L1 distance between the cell histogram (pi * m) and the analytic density
    sampled at cell midpoints."""
    mids = (np.arange(m) + 0.5) / m
    analytic = np.array([density(N, x) for x in mids])
    return float(np.abs(pi * m - analytic).sum() / m)


def build_model(
    N: int,
    m: int,
    branch_cutoff: int | None = None,
    tol: float = 1e-13,
    max_iters: int = 100_000,
) -> UlamModel:
    """Assemble the matrix, solve for its stationary vector, score the recovery."""
    if branch_cutoff is None:
        branch_cutoff = _default_cutoff(N, m)
    P = transition_matrix(N, m, branch_cutoff)
    pi, iterations = _power_iteration(P, tol, max_iters)
    return UlamModel(
        N=N,
        m=m,
        branch_cutoff=branch_cutoff,
        matrix=P,
        stationary=pi,
        l1_error=density_l1_error(N, m, pi),
        iterations=iterations,
    )


def density_profile(model: UlamModel) -> np.ndarray:
    """Columns (cell midpoint, recovered density, analytic density), one row per cell."""
    mids = (np.arange(model.m) + 0.5) / model.m
    analytic = np.array([density(model.N, x) for x in mids])
    return np.column_stack([mids, model.stationary * model.m, analytic])


def write_density_profile(model: UlamModel, file: Union[str, IO[str]]) -> None:
    """Dump the density profile as CSV (midpoint, empirical, analytic) for plotting."""
    rows = density_profile(model)
    close = False
    if isinstance(file, str):
        file = open(file, "w", newline="")
        close = True
    try:
        writer = csv.writer(file)
        writer.writerow(["midpoint", "empirical", "analytic"])
        for mid, emp, ana in rows:
            writer.writerow([repr(float(mid)), repr(float(emp)), repr(float(ana))])
    finally:
        if close:
            file.close()
