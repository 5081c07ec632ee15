"""Bipartite state vectors, Gram-weighted ensembles, density matrices,
partial traces, and single-vector Schmidt decomposition.

The amplitude vector of a state on a ``dim_a x dim_b`` system is stored
row-major over the pair index ``(j, k)`` with ``j`` on side A, so reshaping to
a ``dim_a x dim_b`` matrix is a linear bijection and local unitaries act on
that matrix as ``M -> UA @ M @ UB.T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotNormalizedError,
    NotPSDError,
    NotUnitaryError,
    TraceError,
)
from .linalg import frobenius

#: norm drift accepted for silent renormalization of hand-entered amplitudes
NORM_SLACK = 1e-6


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class BipartiteVector:
    """Normalized pure state on a ``dim_a x dim_b`` system.

    Amplitudes within ``NORM_SLACK`` of unit norm are renormalized silently;
    anything farther off raises :class:`NotNormalizedError`.
    """

    dim_a: int
    dim_b: int
    amps: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatchError("dimensions must be positive")
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != self.dim_a * self.dim_b:
            raise DimensionMismatchError(
                f"expected {self.dim_a * self.dim_b} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise NotNormalizedError("amplitudes contain NaN or Inf")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_SLACK:
            raise NotNormalizedError(f"amplitude norm {norm!r} is too far from 1")
        object.__setattr__(self, "amps", _freeze(amps / norm))

    @classmethod
    def from_matrix(cls, mat) -> "BipartiteVector":
        m = np.asarray(mat, dtype=complex)
        if m.ndim != 2:
            raise DimensionMismatchError("amplitude matrix must be 2-dimensional")
        return cls(m.shape[0], m.shape[1], m.reshape(-1))


@dataclass(frozen=True, eq=False)
class GramEnsemble:
    """State vectors plus a positive semidefinite coefficient matrix.

    The vectors need not be pairwise orthogonal; only the weight matrix is
    constrained (Hermitian, PSD). Whether the assembled density matrix has
    unit trace depends on the vector overlaps and is checked at assembly.
    """

    vectors: tuple
    weights: np.ndarray

    def __post_init__(self):
        vectors = tuple(self.vectors)
        if not vectors:
            raise DimensionMismatchError("ensemble needs at least one vector")
        da, db = vectors[0].dim_a, vectors[0].dim_b
        for v in vectors:
            if (v.dim_a, v.dim_b) != (da, db):
                raise DimensionMismatchError("ensemble vectors differ in dimensions")
        w = np.asarray(self.weights, dtype=complex)
        if w.shape != (len(vectors), len(vectors)):
            raise DimensionMismatchError(
                f"weight matrix must be {len(vectors)} x {len(vectors)}, got {w.shape}"
            )
        if frobenius(w - w.conj().T) > 1e-10 * max(1.0, frobenius(w)):
            raise NotPSDError("weight matrix is not Hermitian")
        w = (w + w.conj().T) / 2.0
        if float(np.linalg.eigvalsh(w).min()) < -1e-10:
            raise NotPSDError("weight matrix has a negative eigenvalue")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "weights", _freeze(w))

    @classmethod
    def uniform(cls, vectors: Sequence[BipartiteVector]) -> "GramEnsemble":
        """Ensemble with equal diagonal weights ``1/l``."""
        vectors = tuple(vectors)
        return cls(vectors, np.eye(len(vectors), dtype=complex) / len(vectors))

    @property
    def dim_a(self) -> int:
        return self.vectors[0].dim_a

    @property
    def dim_b(self) -> int:
        return self.vectors[0].dim_b


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, PSD, unit-trace matrix on a ``dim_a x dim_b`` system."""

    dim_a: int
    dim_b: int
    mat: np.ndarray

    def __post_init__(self):
        n = self.dim_a * self.dim_b
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (n, n):
            raise DimensionMismatchError(f"expected {n} x {n} matrix, got {m.shape}")
        if frobenius(m - m.conj().T) > 1e-9 * max(1.0, frobenius(m)):
            raise NotPSDError("density matrix is not Hermitian")
        if float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min()) < -1e-9:
            raise NotPSDError("density matrix has a negative eigenvalue")
        if abs(np.trace(m) - 1.0) > 1e-9:
            raise TraceError(f"density matrix trace {np.trace(m)!r} is not 1")
        object.__setattr__(self, "mat", _freeze(m))


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Single-vector Schmidt data: real nonnegative ``coeffs`` sorted
    descending, and unitary bases whose columns are the Schmidt vectors."""

    coeffs: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if abs(float(np.sum(c**2)) - 1.0) > 1e-10:
            raise NotNormalizedError("squared Schmidt coefficients must sum to 1")
        object.__setattr__(self, "coeffs", _freeze(c))


def amplitude_matrix(v: BipartiteVector) -> np.ndarray:
    """The ``dim_a x dim_b`` matrix of amplitudes (unit Frobenius norm)."""
    return v.amps.reshape(v.dim_a, v.dim_b).copy()


def schmidt_decompose(v: BipartiteVector) -> SchmidtForm:
    """Schmidt decomposition of a single vector via SVD of its amplitude matrix.

    The vector reassembles as ``sum_k coeffs[k] * basis_a[:, k] (x) basis_b[:, k]``.
    """
    u, s, vh = np.linalg.svd(amplitude_matrix(v), full_matrices=True)
    return SchmidtForm(coeffs=s, basis_a=u, basis_b=vh.T)


def assemble_density(ensemble: GramEnsemble) -> DensityMatrix:
    """Density matrix ``sum a[i,j] |v_i><v_j|`` of a Gram-weighted ensemble.

    Raises :class:`TraceError` if the assembled trace deviates from 1 by more
    than ``1e-9`` (the weights alone do not fix the trace when vectors overlap).
    """
    stack = np.stack([v.amps for v in ensemble.vectors], axis=1)
    rho = stack @ ensemble.weights @ stack.conj().T
    trace = complex(np.trace(rho))
    if abs(trace - 1.0) > 1e-9:
        raise TraceError(f"assembled density matrix has trace {trace!r}")
    rho = (rho + rho.conj().T) / 2.0
    return DensityMatrix(ensemble.dim_a, ensemble.dim_b, rho)


def partial_trace(rho: DensityMatrix, side: str) -> np.ndarray:
    """Reduced state on the kept side: ``side='A'`` traces out B and vice versa."""
    r = rho.mat.reshape(rho.dim_a, rho.dim_b, rho.dim_a, rho.dim_b)
    if side == "A":
        return np.einsum("ajbj->ab", r)
    if side == "B":
        return np.einsum("jajb->ab", r)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def _check_unitary(u: np.ndarray, dim: int, name: str) -> np.ndarray:
    m = np.asarray(u, dtype=complex)
    if m.shape != (dim, dim):
        raise DimensionMismatchError(f"{name} must be {dim} x {dim}, got {m.shape}")
    if frobenius(m.conj().T @ m - np.eye(dim)) > 1e-8:
        raise NotUnitaryError(f"{name} is not unitary")
    return m


def apply_local_unitary(v: BipartiteVector, ua, ub) -> BipartiteVector:
    """Amplitudes of ``(UA (x) UB) v``; the amplitude matrix maps to ``UA @ M @ UB.T``."""
    ua = _check_unitary(ua, v.dim_a, "UA")
    ub = _check_unitary(ub, v.dim_b, "UB")
    return BipartiteVector.from_matrix(ua @ amplitude_matrix(v) @ ub.T)
