"""Independent closed-form oracles for diagonal and scalar instances.

Nothing here touches the Jacobi kernels: diagonal singular values come from
moduli and sorting, integrals from midpoint Riemann sums, determinants from
an LU factorization written out longhand.  Shared code is limited to
StepFunction construction, so these paths stay honest cross-checks of the
kernel-based ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange, ZeroOnK
from .stepfn import IntervalSet, StepFunction, eval_right
from .spectral import step_from_descending


@dataclass(frozen=True)
class DiagonalSpec:
    """Diagonal matrix given by its (complex) diagonal entries."""

    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)

    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.entries, dtype=np.complex128))

    def inverse(self) -> "DiagonalSpec":
        return DiagonalSpec(tuple(1.0 / d for d in self.entries))


def diag_mu(spec: DiagonalSpec) -> StepFunction:
    """Singular-value step function of a diagonal matrix: |d_j| sorted descending."""
    mods = sorted((abs(d) for d in spec.entries), reverse=True)
    return step_from_descending(mods)


def brute_integral(f: StepFunction, K: IntervalSet, m: int) -> float:
    """Midpoint Riemann sum of log f over K, m subintervals per interval of K.

    Requires f > 0 on K (raises ZeroOnK otherwise); converges to the exact
    piecewise integral at rate O(1/m) once subinterval endpoints avoid the
    breakpoints of f.
    """
    if m < 1:
        raise OutOfRange(f"need m >= 1 subdivisions, got {m}")
    total = 0.0
    for a, b in K.intervals:
        h = (b - a) / m
        for i in range(m):
            t = a + (i + 0.5) * h
            v = eval_right(f, t) if t < 1.0 else f.values[-1]
            if v <= 0.0:
                raise ZeroOnK(f"f({t}) = {v} on K")
            total += h * math.log(v)
    return total


def scalar_harnack(r: float) -> dict:
    """Closed-form middle/upper/lower Harnack quantities for a scalar in [0, 1)."""
    if not 0.0 <= r < 1.0:
        raise OutOfRange(f"need 0 <= r < 1, got {r}")
    ratio = (1.0 + r) / (1.0 - r)
    return {"middle": ratio, "upper": ratio, "lower": 1.0 / ratio}


def lu_log_abs_det(x: np.ndarray) -> float:
    """log |det x| via LU factorization with partial pivoting (no SVD involved);
    -inf for singular input."""
    a = np.array(x, dtype=np.complex128)
    n = a.shape[0]
    logdet = 0.0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        p = abs(a[piv, col])
        if p == 0.0:
            return float("-inf")
        if piv != col:
            a[[col, piv], :] = a[[piv, col], :]
        logdet += math.log(p)
        for row in range(col + 1, n):
            a[row, col:] -= (a[row, col] / a[col, col]) * a[col, col:]
    return logdet


def lu_abs_det(x: np.ndarray) -> float:
    """|det x| from the LU path."""
    lg = lu_log_abs_det(x)
    return 0.0 if lg == float("-inf") else math.exp(lg)


def normalized_abs_det(x: np.ndarray) -> float:
    """|det x|^(1/n): the LU reference value for the determinant functional."""
    lg = lu_log_abs_det(x)
    return 0.0 if lg == float("-inf") else math.exp(lg / x.shape[0])
