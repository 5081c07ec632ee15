"""Dense complex linear algebra: Hermitian eigendecomposition, normality and
commutativity tests, and joint diagonalization of families of pairwise
commuting normal matrices.

All functions are pure and deterministic (joint diagonalization takes an
explicit seed). Matrices are plain complex ``numpy`` arrays; outputs carry an
explicitly reported reconstruction residual so callers can judge accuracy
instead of trusting a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NonSquareError,
    NotCommutingError,
    NotHermitianError,
    NotNormalError,
)

DEFAULT_TOL = 1e-10

#: relative eigenvalue gap below which two eigenvalues count as degenerate
CLUSTER_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigendecomposition result: columns of ``vectors`` are eigenvectors.

    ``residual`` is the Frobenius norm of ``M @ vectors - vectors @ diag(values)``.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual: float


@dataclass(frozen=True, eq=False)
class JointBasis:
    """Common eigenbasis of a matrix family.

    ``values[i]`` holds the diagonal of ``basis^H @ M_i @ basis``; ``residual``
    is the largest off-diagonal Frobenius mass over the family.
    """

    basis: np.ndarray
    values: np.ndarray
    residual: float


def _as_square(mat) -> np.ndarray:
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius(mat) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(mat)))


def fix_column_phases(mat: np.ndarray) -> np.ndarray:
    """Return a copy with each column's largest-modulus entry made real nonnegative.

    The first index attaining the maximum modulus is used, which makes the
    convention deterministic for snapshot tests.
    """
    out = np.array(mat, dtype=complex)
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = int(np.argmax(np.abs(col)))
        pivot = col[idx]
        if abs(pivot) > 0.0:
            out[:, k] = col * (np.conj(pivot) / abs(pivot))
    return out


def hermitian_eig(mat, tol: float = DEFAULT_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are real and sorted descending; eigenvectors are orthonormal
    with a deterministic phase convention.

    Raises
    ------
    NotHermitianError
        If ``|M - M^H|_F > tol * |M|_F``.
    NoConvergenceError
        If the underlying iteration fails.
    """
    m = _as_square(mat)
    scale = frobenius(m)
    if frobenius(m - m.conj().T) > tol * scale:
        raise NotHermitianError(
            f"matrix deviates from Hermitian by {frobenius(m - m.conj().T):.3e} "
            f"(tolerance {tol:.1e} relative)"
        )
    try:
        values, vectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    values = values[::-1]
    vectors = fix_column_phases(vectors[:, ::-1])
    residual = frobenius(m @ vectors - vectors * values[np.newaxis, :])
    return EigenSystem(values=values, vectors=vectors, residual=residual)


def is_normal(mat, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``|M M^H - M^H M|_F <= tol * max(1, |M|_F^2)``."""
    m = _as_square(mat)
    dev = frobenius(m @ m.conj().T - m.conj().T @ m)
    return dev <= tol * max(1.0, frobenius(m) ** 2)


def commutator_norm(a, b) -> float:
    """Frobenius norm of ``AB - BA`` for equally sized square matrices."""
    ma = _as_square(a)
    mb = _as_square(b)
    if ma.shape != mb.shape:
        raise DimensionMismatchError(f"incompatible shapes {ma.shape} and {mb.shape}")
    return frobenius(ma @ mb - mb @ ma)


def _offdiag_residual(basis: np.ndarray, mats: Sequence[np.ndarray]) -> float:
    worst = 0.0
    for m in mats:
        t = basis.conj().T @ m @ basis
        worst = max(worst, frobenius(t - np.diag(np.diag(t))))
    return worst


def _refine_sequentially(mats: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Common eigenbasis by recursive per-matrix eigenspace splitting.

    Deterministic fallback for the rare case where every random Hermitian
    combination has an eigenvalue collision between distinct joint eigenspaces.
    """
    basis = np.eye(n, dtype=complex)
    blocks = [np.arange(n)]
    parts = []
    for m in mats:
        scale = max(1.0, frobenius(m))
        parts.append(((m + m.conj().T) / 2.0, scale))
        parts.append(((m - m.conj().T) / 2.0j, scale))
    for part, scale in parts:
        next_blocks = []
        for blk in blocks:
            if blk.size == 1:
                next_blocks.append(blk)
                continue
            sub = basis[:, blk]
            w, vecs = np.linalg.eigh(sub.conj().T @ part @ sub)
            basis[:, blk] = sub @ vecs
            start = 0
            for i in range(1, blk.size + 1):
                if i == blk.size or w[i] - w[i - 1] > CLUSTER_TOL * scale:
                    next_blocks.append(blk[start:i])
                    start = i
        blocks = next_blocks
    return basis


def joint_diagonalize(
    mats: Sequence[np.ndarray], tol: float = DEFAULT_TOL, seed: int = 0
) -> JointBasis:
    """Simultaneously diagonalize pairwise commuting normal matrices.

    Strategy: eigendecompose a random Hermitian combination of the Hermitian
    and anti-Hermitian parts of the family, which separates the joint
    eigenspaces for generic coefficients. On residual failure the coefficients
    are redrawn (up to 8 times) before falling back to sequential eigenspace
    refinement. Deterministic for a fixed seed.

    Raises
    ------
    NotNormalError
        If some matrix is not normal within ``tol``.
    NotCommutingError
        If some pair has commutator norm above ``tol * max(1, max |M|_F^2)``,
        reporting the offending pair and its commutator norm.
    """
    family = [_as_square(m) for m in mats]
    if not family:
        raise DimensionMismatchError("empty matrix family")
    n = family[0].shape[0]
    for m in family:
        if m.shape[0] != n:
            raise DimensionMismatchError("family members differ in dimension")
    scale = max(1.0, max(frobenius(m) for m in family) ** 2)
    for i, m in enumerate(family):
        if not is_normal(m, tol):
            raise NotNormalError(f"family member {i} is not normal within {tol:.1e}")
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            c = commutator_norm(family[i], family[j])
            if c > tol * scale:
                raise NotCommutingError(
                    f"members {i} and {j} have commutator norm {c:.3e}",
                    pair=(i, j),
                    norm=c,
                )

    herms = [(m + m.conj().T) / 2.0 for m in family]
    antis = [(m - m.conj().T) / 2.0j for m in family]
    accept = tol * max(1.0, max(frobenius(m) for m in family))
    rng = np.random.default_rng(seed)
    best_basis = None
    best_residual = np.inf
    for _ in range(8):
        coeffs = rng.standard_normal(2 * len(family))
        combo = sum(c * h for c, h in zip(coeffs[: len(family)], herms))
        combo = combo + sum(c * a for c, a in zip(coeffs[len(family) :], antis))
        try:
            _, basis = np.linalg.eigh(combo)
        except np.linalg.LinAlgError as exc:
            raise NoConvergenceError(str(exc)) from exc
        basis = fix_column_phases(basis)
        residual = _offdiag_residual(basis, family)
        if residual < best_residual:
            best_basis, best_residual = basis, residual
        if residual <= accept:
            break
    if best_residual > accept:
        refined = fix_column_phases(_refine_sequentially(family, n))
        residual = _offdiag_residual(refined, family)
        if residual < best_residual:
            best_basis, best_residual = refined, residual
    values = np.array([np.diag(best_basis.conj().T @ m @ best_basis) for m in family])
    return JointBasis(basis=best_basis, values=values, residual=best_residual)
