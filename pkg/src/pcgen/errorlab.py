"""Propagation of relative errors in principal generators to the full matrix.

Every reconstructed entry a_ij (i < j) is the product of the PGs
a_{i,i+1} .. a_{j-1,j}, so per-PG error factors multiply along the way.
With every PG inflated by (1 + eps) the entry (i, j) is off by
(1 + eps)^(j - i) - 1, which is largest in the top-right corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .core import DomainError
from .reconstruct import PrincipalGenerators

Mode = Literal["worst", "random"]
MODES = ("worst", "random")


@dataclass(frozen=True)
class PerturbationSpec:
    """Error model for principal generators.

    ``worst`` scales every PG by (1 + epsilon). ``random`` scales each PG by
    an independent factor drawn uniformly from [1 - epsilon, 1 + epsilon];
    draw k of trial t comes from the stream seeded by (seed, t), so adding
    trials never changes earlier ones.
    """

    epsilon: float
    mode: Mode = "worst"
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if not (0.0 <= self.epsilon < 1.0):
            raise DomainError(f"epsilon must satisfy 0 <= epsilon < 1, got {self.epsilon}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.seed < 0:
            raise DomainError("seed must be a non-negative integer")
        if self.trials < 1:
            raise DomainError("trials must be positive")


def _factors(n_pgs: int, spec: PerturbationSpec, trial: int) -> np.ndarray:
    if spec.mode == "worst":
        return np.full(n_pgs, 1.0 + spec.epsilon)
    rng = np.random.default_rng([spec.seed, trial])
    return rng.uniform(1.0 - spec.epsilon, 1.0 + spec.epsilon, size=n_pgs)


def perturb_pgs(p: PrincipalGenerators | Sequence[float], spec: PerturbationSpec, trial: int = 0) -> PrincipalGenerators:
    if not isinstance(p, PrincipalGenerators):
        p = PrincipalGenerators(tuple(p))
    vals = np.asarray(p.values, dtype=float)
    return PrincipalGenerators(tuple(vals * _factors(vals.size, spec, trial)))


def worst_corner_error(n: int, epsilon: float) -> float:
    """Relative error of a_1n when each of the n - 1 PGs is off by +epsilon."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must satisfy 0 <= epsilon < 1, got {epsilon}")
    return (1.0 + epsilon) ** (n - 1) - 1.0


@dataclass(frozen=True, eq=False)
class ErrorReport:
    n: int
    spec: PerturbationSpec
    entrywise_max: np.ndarray
    entrywise_mean: np.ndarray

    @property
    def corner_error(self) -> float:
        return float(self.entrywise_max[0, -1])

    @property
    def argmax_position(self) -> tuple[int, int]:
        """1-based (row, col) of the largest error; first in row-major order on ties."""
        r, c = np.unravel_index(int(np.argmax(self.entrywise_max)), self.entrywise_max.shape)
        return int(r) + 1, int(c) + 1

    def summary(self) -> str:
        r, c = self.argmax_position
        return (
            f"n={self.n}, epsilon={self.spec.epsilon!r}, mode={self.spec.mode}, "
            f"trials={self.trials}, corner_error={self.corner_error!r}, argmax=({r},{c})"
        )

    @property
    def trials(self) -> int:
        return 1 if self.spec.mode == "worst" else self.spec.trials


def _ratio_errors(log_factors: np.ndarray) -> np.ndarray:
    # perturbed/reference ratio at (i, j) is exp(d_j - d_i), d = prefix sums of log factors
    d = np.concatenate(([0.0], np.cumsum(log_factors)))
    return np.abs(np.expm1(d[None, :] - d[:, None]))


def propagate(p: PrincipalGenerators | Sequence[float], spec: PerturbationSpec) -> ErrorReport:
    """Entrywise relative error |perturbed / reference - 1| of the reconstruction.

    The ratio of two reconstructions depends only on the per-PG factors, so
    it is evaluated directly from their log prefix sums; expm1 keeps small
    errors accurate. Worst mode is one deterministic evaluation; random
    mode records the maximum and mean over trials.
    """
    if not isinstance(p, PrincipalGenerators):
        p = PrincipalGenerators(tuple(p))
    n = p.n
    trials = 1 if spec.mode == "worst" else spec.trials
    worst = np.zeros((n, n))
    total = np.zeros((n, n))
    for t in range(trials):
        if spec.mode == "worst":
            log_factors = np.full(n - 1, math.log1p(spec.epsilon))
        else:
            log_factors = np.log(_factors(n - 1, spec, t))
        err = _ratio_errors(log_factors)
        np.maximum(worst, err, out=worst)
        total += err
    mean = total / trials
    np.fill_diagonal(worst, 0.0)
    np.fill_diagonal(mean, 0.0)
    return ErrorReport(n, spec, worst, mean)
