"""von Neumann entropy and coherent-information report.

Entropies are in bits (base-2 logarithms). The distillable entanglement is
reported only for states certified as locally equivalent to a maximally
correlated state, where it equals both coherent informations; for anything
else only the hashing lower bound ``max(0, I_A, I_B)`` is available.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, NotPSDError
from .linalg import frobenius
from .states import DensityMatrix, partial_trace

#: eigenvalues below this are treated as exact zeros in the entropy sum
EIGENVALUE_FLOOR = 1e-12


@dataclass(frozen=True)
class EntanglementReport:
    """Entropies, coherent informations, and (if certified) distillable
    entanglement of a bipartite density matrix, all in bits."""

    entropy: float
    entropy_a: float
    entropy_b: float
    coherent_info_a: float
    coherent_info_b: float
    distillable: float | None

    @property
    def hashing_lower_bound(self) -> float:
        """``max(0, I_A, I_B)``: valid lower bound with or without certification."""
        return max(0.0, self.coherent_info_a, self.coherent_info_b)


def von_neumann_entropy(mat, tol: float = 1e-9) -> float:
    """``-sum(lam * log2(lam))`` over the spectrum of a Hermitian PSD matrix.

    Eigenvalues in ``[-tol, 0)`` are clipped to zero; below ``-tol`` the matrix
    is rejected as not PSD. ``0 * log2(0)`` counts as 0.
    """
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotPSDError(f"expected a square matrix, got shape {m.shape}")
    if frobenius(m - m.conj().T) > tol * max(1.0, frobenius(m)):
        raise NotPSDError("matrix is not Hermitian within tolerance")
    lams = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    if float(lams.min()) < -tol:
        raise NotPSDError(f"matrix has eigenvalue {lams.min():.3e} below -{tol:.1e}")
    lams = np.clip(lams, 0.0, None)
    lams = lams[lams > EIGENVALUE_FLOOR]
    if lams.size == 0:
        return 0.0
    return float(-np.sum(lams * np.log2(lams)))


def entanglement_report(rho: DensityMatrix, mcs_certified: bool = False) -> EntanglementReport:
    """Entropy report for ``rho``; ``mcs_certified`` asserts the state is known
    to be a maximally correlated state up to local unitaries.

    Under certification the distillable entanglement equals both coherent
    informations; a gap ``|I_A - I_B| >= 1e-8`` then signals an upstream
    certification bug and raises :class:`CertificationError`.
    """
    s_rho = von_neumann_entropy(rho.mat)
    s_a = von_neumann_entropy(partial_trace(rho, "A"))
    s_b = von_neumann_entropy(partial_trace(rho, "B"))
    i_a = s_a - s_rho
    i_b = s_b - s_rho
    distillable = None
    if mcs_certified:
        if abs(i_a - i_b) >= 1e-8:
            raise CertificationError(
                f"certified state has I_A - I_B = {i_a - i_b:.3e}; certification is wrong"
            )
        distillable = (i_a + i_b) / 2.0
    return EntanglementReport(
        entropy=s_rho,
        entropy_a=s_a,
        entropy_b=s_b,
        coherent_info_a=i_a,
        coherent_info_b=i_b,
        distillable=distillable,
    )
