"""Singular-value and eigenvalue step functions of matrices, and the
determinant functionals built from them.

For an n x n matrix the singular-value function is the step function with
value s_j on [(j-1)/n, j/n); for Hermitian input the eigenvalue scale is the
same construction from descending eigenvalues (values may be negative).
Determinants are computed in log space throughout and exponentiated last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NotPositive, OutOfDomain, OutOfRange
from .stepfn import (
    NEG_INFINITY,
    IntervalSet,
    StepFunction,
    integrate_log,
    make_step,
    prefix_interval,
)


@dataclass(frozen=True)
class TracialContext:
    """The algebra of n x n complex matrices with its normalized trace."""

    n: int

    def trace(self, x: linalg.ComplexMatrix) -> complex:
        """tau(x) = tr(x) / n, so that tau(identity) == 1."""
        return complex(np.trace(x)) / self.n

    def trace_abs(self, x: linalg.ComplexMatrix) -> float:
        """tau(|x|) = mean of the singular values of x."""
        return float(np.mean(linalg.svd(x).sigma))


def dyadic_breaks(n: int) -> list:
    """Breakpoints j/n, j = 0..n (exact floats, shared by every construction)."""
    return [j / n for j in range(n + 1)]


def step_from_descending(values) -> StepFunction:
    """Place descending values on the pieces [(j-1)/n, j/n)."""
    n = len(values)
    return make_step(dyadic_breaks(n), [float(v) for v in values])


def mu(x: linalg.ComplexMatrix) -> StepFunction:
    """Singular-value step function of x."""
    return step_from_descending(linalg.svd(x).sigma)


def lambda_scale(h: linalg.ComplexMatrix) -> StepFunction:
    """Eigenvalue step function of a Hermitian matrix (values may be < 0)."""
    return step_from_descending(linalg.herm_eig(h).eigenvalues)


def log_fk_det(x: linalg.ComplexMatrix) -> float:
    """log of the normalized determinant: (1/n) * sum log s_j; -inf if singular."""
    sigma = linalg.svd(x).sigma
    if sigma[-1] == 0.0:
        return NEG_INFINITY
    return float(np.mean(np.log(sigma)))


def fk_det(x: linalg.ComplexMatrix) -> float:
    """Normalized determinant (det |x|)^(1/n); 0 when x is singular."""
    lg = log_fk_det(x)
    return 0.0 if lg == NEG_INFINITY else math.exp(lg)


def big_lambda(x: linalg.ComplexMatrix, t: float) -> float:
    """Partial determinant exp(integral_0^t log mu_s(x) ds); 0 on -inf."""
    if not 0.0 < t <= 1.0:
        raise OutOfDomain(f"need 0 < t <= 1, got {t}")
    lg = integrate_log(mu(x), prefix_interval(t))
    return 0.0 if lg == NEG_INFINITY else math.exp(lg)


def dyadic_approx(
    x: linalg.ComplexMatrix,
    k: int,
    offset: float | None = None,
    span: float | None = None,
) -> linalg.ComplexMatrix:
    """Snap the eigenvalues of a positive matrix to a dyadic grid of level k.

    Default mode snaps upward on the grid {j * ||x|| / 2^k}: the result
    dominates x, decreases as k grows, and satisfies ||x - x_k|| <= range/2^k.
    With an explicit offset (and span defaulting to ||x|| - offset) values
    snap downward onto {offset + j * span / 2^k}, the top of the range
    falling into the last half-open cell; this is the variant for invertible
    input with offset at the bottom of the spectrum.
    """
    d = linalg.herm_eig(x)
    vals = d.eigenvalues
    if vals[-1] < -1e-12 * max(1.0, abs(vals[0])):
        raise NotPositive(f"min eigenvalue {vals[-1]:.3e}")
    vals = np.where(vals > 0.0, vals, 0.0)
    cells = float(2**k)
    if offset is None:
        span = float(vals[0]) if span is None else float(span)
        if span == 0.0:
            return x.copy()
        h = span / cells
        snapped = np.minimum(np.ceil(vals / h), cells) * h
    else:
        offset = float(offset)
        if span is None:
            span = float(vals[0]) - offset
        if span <= 0.0:
            raise OutOfRange(f"grid span must be positive, got {span}")
        h = span / cells
        j = np.floor((vals - offset) / h)
        j = np.clip(j, 0.0, cells - 1.0)
        snapped = offset + j * h
    return linalg.symmetrize(d.basis @ np.diag(snapped.astype(np.complex128)) @ linalg.adjoint(d.basis))
