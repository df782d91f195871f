"""Pairwise-comparison (PC) matrices: construction, predicates, weights, CSV I/O."""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class MatrixFileError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class PCMatrix:
    """Square matrix of strictly positive preference ratios.

    The array is copied on construction and made read-only, so instances
    can be shared freely.
    """

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"PC matrix must be square with n >= 1, got shape {a.shape}")
        if not np.all(np.isfinite(a)) or not np.all(a > 0):
            raise DomainError("PC matrix entries must be finite and strictly positive")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, key):
        return self.entries[key]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __repr__(self):
        return f"PCMatrix(n={self.n}, entries={self.entries.tolist()!r})"

    def allclose(self, other: "PCMatrix | np.ndarray", rel_tol: float = DEFAULT_TOL) -> bool:
        b = np.asarray(other, dtype=float)
        return b.shape == self.entries.shape and max_relative_difference(self.entries, b) <= rel_tol


def max_relative_difference(a, b) -> float:
    """Largest |a_ij / b_ij - 1| over all entries (both arrays positive)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.max(np.abs(a / b - 1.0))) if a.size else 0.0


def normalize_weights(weights: Sequence[float]) -> np.ndarray:
    """Rescale positive weights so that their product is 1."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise DomainError("weight vector must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(w)) or not np.all(w > 0):
        raise DomainError("weights must be finite and strictly positive")
    logs = np.log(w)
    return np.exp(logs - logs.mean())


def from_weights(weights: Sequence[float]) -> PCMatrix:
    """Consistent matrix with m_ij = w_i / w_j."""
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size < 1:
        raise DomainError("weight vector must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(w)) or not np.all(w > 0):
        raise DomainError("weights must be finite and strictly positive")
    m = w[:, None] / w[None, :]
    np.fill_diagonal(m, 1.0)
    return PCMatrix(m)


def is_reciprocal(m: PCMatrix, tol: float = DEFAULT_TOL) -> bool:
    a = np.asarray(m)
    return bool(np.all(np.abs(a * a.T - 1.0) <= tol))


def consistency_residual(m: PCMatrix) -> float:
    """Worst triad violation: max over (i, j, k) of |m_ij * m_jk / m_ik - 1|.

    Evaluated one pivot row at a time to keep memory at O(n^2).
    """
    a = np.asarray(m)
    worst = 0.0
    for i in range(a.shape[0]):
        # r[j, k] = m_ij * m_jk / m_ik
        r = a[i, :, None] * a / a[i, None, :]
        worst = max(worst, float(np.max(np.abs(r - 1.0))))
    return worst


def is_consistent(m: PCMatrix, tol: float = DEFAULT_TOL) -> bool:
    return consistency_residual(m) <= tol


def extract_weights(m: PCMatrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Row geometric means, normalized to unit product.

    For a consistent matrix these are the generating weights up to scale.
    A non-reciprocal input only triggers a warning.
    """
    if not is_reciprocal(m, tol):
        warnings.warn("extract_weights: matrix is not reciprocal", RuntimeWarning, stacklevel=2)
    logs = np.log(np.asarray(m))
    row_means = logs.mean(axis=1)
    return np.exp(row_means - row_means.mean())


def format_float(x: float) -> str:
    # shortest repr that round-trips exactly
    return repr(float(x))


def matrix_to_csv(m: PCMatrix | np.ndarray) -> str:
    a = np.asarray(m, dtype=float)
    return "".join(",".join(format_float(x) for x in row) + "\n" for row in a)


def write_matrix_csv(m: PCMatrix | np.ndarray, path: str | Path) -> None:
    Path(path).write_text(matrix_to_csv(m))


def parse_matrix_csv(text: str) -> PCMatrix:
    """Parse headerless CSV rows into a PCMatrix, checking squareness and positivity."""
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            values = [float(c) for c in row]
        except ValueError:
            raise MatrixFileError(f"non-numeric field in {row!r}", lineno) from None
        for v in values:
            if not math.isfinite(v) or v <= 0:
                raise MatrixFileError(f"entry {v!r} is not a finite positive number", lineno)
        if rows and len(values) != len(rows[0][1]):
            raise MatrixFileError(f"expected {len(rows[0][1])} fields, got {len(values)}", lineno)
        rows.append((lineno, values))
    if not rows:
        raise MatrixFileError("empty matrix file")
    if len(rows) != len(rows[0][1]):
        raise MatrixFileError(f"matrix is not square: {len(rows)} rows, {len(rows[0][1])} columns")
    return PCMatrix(np.array([v for _, v in rows]))


def read_matrix_csv(path: str | Path) -> PCMatrix:
    return parse_matrix_csv(Path(path).read_text())
