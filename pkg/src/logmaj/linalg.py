"""Dense complex matrix kernel: Jacobi eigendecomposition and SVD, inverses,
operator norm, Haar unitaries, Cayley transform.

Matrices are square numpy complex128 arrays (each entry a pair of doubles).
The eigen/SVD kernels are cyclic Jacobi iterations (two-sided for Hermitian
input, one-sided for the SVD): simple, high relative accuracy at the small
dimensions this package targets (soft cap 64).  Descending sorts break ties
by original index, so derived step functions do not depend on tie order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_hermitian, jacobi_onesided
from .errors import NoConvergence, NotHermitian, Singular

ComplexMatrix = np.ndarray

MAX_SWEEPS = 30
DEFAULT_KERNEL_TOL = 1e-14
SINGULAR_CUTOFF = 1e-13  # sigma_min <= cutoff * sigma_max counts as singular


def identity(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


def adjoint(x: ComplexMatrix) -> ComplexMatrix:
    return x.conj().T


def frob(x: ComplexMatrix) -> float:
    return float(np.linalg.norm(x, "fro"))


def real_part(x: ComplexMatrix) -> ComplexMatrix:
    """The Hermitian part (x + x*) / 2 (exact Hermitian by construction)."""
    return (x + adjoint(x)) / 2.0


def imag_part(x: ComplexMatrix) -> ComplexMatrix:
    """The Hermitian matrix (x - x*) / (2i)."""
    return (x - adjoint(x)) / 2.0j


def hermitian_defect(x: ComplexMatrix) -> float:
    nrm = frob(x)
    if nrm == 0.0:
        return 0.0
    return frob(x - adjoint(x)) / nrm


def symmetrize(x: ComplexMatrix) -> ComplexMatrix:
    """Round a matrix known to be Hermitian in exact arithmetic onto itself."""
    return (x + adjoint(x)) / 2.0


@dataclass(frozen=True)
class SpectralData:
    """Hermitian eigendecomposition: basis @ diag(eigenvalues) @ basis* = input."""

    eigenvalues: np.ndarray  # real, descending
    basis: ComplexMatrix  # unitary, columns are eigenvectors


@dataclass(frozen=True)
class SingularData:
    """SVD triple: left @ diag(sigma) @ right* = input."""

    left: ComplexMatrix
    sigma: np.ndarray  # real, descending, >= 0
    right: ComplexMatrix


def herm_eig(
    h: ComplexMatrix,
    tol: float = DEFAULT_KERNEL_TOL,
    herm_tol: float = 1e-12,
) -> SpectralData:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    tol bounds the relative off-diagonal Frobenius mass at convergence;
    herm_tol bounds the accepted relative deviation of h from its adjoint.
    """
    h = np.ascontiguousarray(h, dtype=np.complex128)
    if hermitian_defect(h) > herm_tol:
        raise NotHermitian(f"relative deviation from adjoint {hermitian_defect(h):.3e}")
    n = h.shape[0]
    H = (h + adjoint(h)) / 2.0
    V = np.eye(n, dtype=np.complex128)
    status = jacobi_hermitian(H, V, tol, MAX_SWEEPS)
    if status < 0:
        raise NoConvergence(f"Jacobi eig did not reach tol {tol} in {MAX_SWEEPS} sweeps")
    vals = np.diag(H).real.copy()
    order = np.argsort(-vals, kind="stable")
    return SpectralData(vals[order], np.ascontiguousarray(V[:, order]))


def svd(x: ComplexMatrix, tol: float = DEFAULT_KERNEL_TOL) -> SingularData:
    """One-sided Jacobi SVD with descending singular values."""
    x = np.ascontiguousarray(x, dtype=np.complex128)
    n = x.shape[0]
    W = x.copy()
    V = np.eye(n, dtype=np.complex128)
    status = jacobi_onesided(W, V, tol, MAX_SWEEPS)
    if status < 0:
        raise NoConvergence(f"Jacobi SVD did not reach tol {tol} in {MAX_SWEEPS} sweeps")
    sigma = np.sqrt(np.sum(np.abs(W) ** 2, axis=0))
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    W = W[:, order]
    V = V[:, order]
    U = np.zeros((n, n), dtype=np.complex128)
    smax = sigma[0] if n else 0.0
    cut = n * np.finfo(float).eps * smax
    k = 0
    for j in range(n):
        if sigma[j] > cut:
            U[:, j] = W[:, j] / sigma[j]
            k = j + 1
    sigma[k:] = 0.0
    if k < n:
        _complete_unitary(U, k)
    return SingularData(U, sigma, V)


def _complete_unitary(U: ComplexMatrix, k: int) -> None:
    """Extend k orthonormal columns of U to a full unitary, in place.

    Greedy: each missing slot takes the coordinate vector with the largest
    residual after projection (at least sqrt((n-idx)/n), so always nonzero),
    orthogonalized twice for working-precision accuracy.
    """
    n = U.shape[0]
    for idx in range(k, n):
        best, best_norm = None, -1.0
        for cand in range(n):
            v = np.zeros(n, dtype=np.complex128)
            v[cand] = 1.0
            for _ in range(2):
                v -= U[:, :idx] @ (U[:, :idx].conj().T @ v)
            nv = float(np.linalg.norm(v))
            if nv > best_norm:
                best, best_norm = v, nv
        U[:, idx] = best / best_norm


def op_norm(x: ComplexMatrix) -> float:
    """Largest singular value."""
    return float(svd(x).sigma[0])


def inverse(x: ComplexMatrix) -> ComplexMatrix:
    """Matrix inverse via the SVD; raises Singular below the rank cutoff."""
    d = svd(x)
    smax = d.sigma[0]
    smin = d.sigma[-1]
    if smin <= SINGULAR_CUTOFF * smax or smax == 0.0:
        raise Singular(f"sigma_min/sigma_max = {smin:.3e}/{smax:.3e}")
    return d.right @ np.diag(1.0 / d.sigma) @ adjoint(d.left)


def psd_sqrt(h: ComplexMatrix, herm_tol: float = 1e-12) -> ComplexMatrix:
    """Square root of a positive semidefinite Hermitian matrix."""
    d = herm_eig(h, herm_tol=herm_tol)
    vals = np.where(d.eigenvalues > 0.0, d.eigenvalues, 0.0)
    return symmetrize(d.basis @ np.diag(np.sqrt(vals)) @ adjoint(d.basis))


def cayley(x: ComplexMatrix) -> ComplexMatrix:
    """The transform (x - iI)(x + iI)^{-1}; raises Singular when undefined."""
    n = x.shape[0]
    ii = 1j * identity(n)
    return (x - ii) @ inverse(x + ii)


def haar_unitary(n: int, seed: int) -> ComplexMatrix:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    diagonal of R normalized to positive reals.  Deterministic per seed."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[d == 0.0] = 1.0
    return q * (d / np.abs(d))


# -- matrix file format --------------------------------------------------------


def matrix_to_jsonable(x: ComplexMatrix) -> dict:
    """Row-major {"n": int, "entries": [[re, im], ...]} record."""
    n = x.shape[0]
    entries = [[float(v.real), float(v.imag)] for v in x.reshape(-1)]
    return {"n": n, "entries": entries}


def matrix_from_jsonable(obj: dict) -> ComplexMatrix:
    n = int(obj["n"])
    entries = obj["entries"]
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} entries, got {len(entries)}")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return flat.reshape((n, n))


def load_matrix(path: str) -> ComplexMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_jsonable(json.load(fh))


def save_matrix(path: str, x: ComplexMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_jsonable(x), fh)
