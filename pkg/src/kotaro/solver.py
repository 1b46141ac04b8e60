"""Dense solvers for the square linear system A w = y.

Two strategies are supported: a truncated-SVD pseudoinverse (minimum-norm
least squares with a relative singular-value cutoff) and ridge regression on
the normal equations (A^T A + lambda I) w = A^T y, which stays well posed
even when A is asymmetric or indefinite.

Both run off a single SVD of A, so the report can always include the rank
and condition diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NonFiniteError, ShapeMismatchError


@dataclass(frozen=True)
class Pseudoinverse:
    """Minimum-norm least squares; singular values below rcond * s_max are dropped."""

    rcond: float = 1e-10

    def __post_init__(self):
        if not (0.0 < self.rcond < 1.0):
            raise ValueError(f"rcond must be in (0, 1), got {self.rcond}")


@dataclass(frozen=True)
class Ridge:
    """Normal-equations ridge: solves (A^T A + lam I) w = A^T y."""

    lam: float

    def __post_init__(self):
        if not (self.lam > 0.0 and np.isfinite(self.lam)):
            raise ValueError(f"lam must be positive and finite, got {self.lam}")


SolveStrategy = Union[Pseudoinverse, Ridge]


@dataclass(frozen=True)
class SolveReport:
    """Solution vector plus diagnostics recomputed from the actual inputs.

    residual_max is max_j |(A w - y)_j| evaluated after the solve, never an
    estimate. condition is s_max / s_min of A (inf when A is singular).
    """

    w: np.ndarray
    residual_max: float
    rank_estimate: int
    strategy_used: SolveStrategy
    condition: float


def strategy_label(strategy: SolveStrategy) -> str:
    """Short printable form, also used by the on-disk model format."""
    if isinstance(strategy, Pseudoinverse):
        return f"pseudoinverse {strategy.rcond!r}"
    return f"ridge {strategy.lam!r}"


def parse_strategy(text: str) -> SolveStrategy:
    """Inverse of :func:`strategy_label`."""
    parts = text.split()
    if len(parts) == 2 and parts[0] == "pseudoinverse":
        return Pseudoinverse(rcond=float(parts[1]))
    if len(parts) == 2 and parts[0] == "ridge":
        return Ridge(lam=float(parts[1]))
    raise ValueError(f"unrecognized solve strategy: {text!r}")


def solve(A: np.ndarray, y: np.ndarray, strategy: SolveStrategy = Pseudoinverse()) -> SolveReport:
    """Solve A w = y and report the achieved residual, rank, and condition.

    Pseudoinverse returns the minimum-norm least-squares solution with the
    relative cutoff rcond. Ridge returns the exact solution of the normal
    equations with penalty lam; its rank is reported as N because the
    regularized system is always full rank.
    """
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ShapeMismatchError(f"A must be square and nonempty, got shape {A.shape}")
    if y.shape != (A.shape[0],):
        raise ShapeMismatchError(f"y has shape {y.shape}, expected ({A.shape[0]},)")
    if not np.all(np.isfinite(A)):
        raise NonFiniteError("A contains non-finite values")
    if not np.all(np.isfinite(y)):
        raise NonFiniteError("y contains non-finite values")

    n = A.shape[0]
    U, s, Vt = np.linalg.svd(A)
    s_max = float(s[0])
    s_min = float(s[-1])
    condition = s_max / s_min if s_min > 0.0 else float("inf")

    if isinstance(strategy, Pseudoinverse):
        keep = s > strategy.rcond * s_max
        rank = int(np.count_nonzero(keep))
        if rank == 0:
            w = np.zeros(n)
        else:
            w = Vt[keep].T @ ((U[:, keep].T @ y) / s[keep])
    else:
        coef = s / (s * s + strategy.lam)
        w = Vt.T @ (coef * (U.T @ y))
        rank = n

    residual_max = float(np.max(np.abs(A @ w - y)))
    return SolveReport(
        w=w,
        residual_max=residual_max,
        rank_estimate=rank,
        strategy_used=strategy,
        condition=condition,
    )
