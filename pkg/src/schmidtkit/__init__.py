"""schmidtkit: simultaneous Schmidt decomposition of bipartite state families,
maximally correlated forms and their distillable entanglement, qudit Bell-set
criteria, and deterministic LOCC discrimination protocols."""

__version__ = "0.1.0"

from .bell import (
    BellSet,
    EnumerationTally,
    bell_matrix,
    bell_state,
    bell_vectors,
    check_bell_set,
    check_size_bound,
    enumerate_bell_sets,
    linear_family,
    weyl_x,
    weyl_z,
)
from .entropy import EntanglementReport, entanglement_report, von_neumann_entropy
from .errors import (
    BasisOrthogonalityError,
    CanonicalizationError,
    CertificationError,
    DimensionMismatchError,
    DocumentError,
    EnumerationCapError,
    NoConvergenceError,
    NonSquareError,
    NotCommutingError,
    NotDecomposableError,
    NotHermitianError,
    NotNormalError,
    NotNormalizedError,
    NotPSDError,
    NotUnitaryError,
    ProtocolMismatchError,
    SchmidtkitError,
    TraceError,
    VerificationError,
)
from .linalg import (
    EigenSystem,
    JointBasis,
    commutator_norm,
    hermitian_eig,
    is_normal,
    joint_diagonalize,
)
from .locc import (
    LoccProtocol,
    SimulationReport,
    fourier_unitary,
    outcome_distributions,
    simulate,
    synthesize,
    verify_protocol,
)
from .ssd import (
    CommutationWitness,
    MaximallyCorrelatedForm,
    SpectrumWitness,
    SSDResult,
    SSDVerdict,
    check_commutation,
    check_spectrum_factorization,
    decompose,
    reassemble,
    to_maximally_correlated,
)
from .states import (
    BipartiteVector,
    DensityMatrix,
    GramEnsemble,
    SchmidtForm,
    amplitude_matrix,
    apply_local_unitary,
    assemble_density,
    partial_trace,
    schmidt_decompose,
)

__all__ = [
    "__version__",
    "BellSet",
    "BipartiteVector",
    "DensityMatrix",
    "EigenSystem",
    "EntanglementReport",
    "EnumerationTally",
    "GramEnsemble",
    "JointBasis",
    "LoccProtocol",
    "MaximallyCorrelatedForm",
    "SchmidtForm",
    "SimulationReport",
    "SSDResult",
    "SSDVerdict",
    "CommutationWitness",
    "SpectrumWitness",
    "amplitude_matrix",
    "apply_local_unitary",
    "assemble_density",
    "bell_matrix",
    "bell_state",
    "bell_vectors",
    "check_bell_set",
    "check_commutation",
    "check_size_bound",
    "check_spectrum_factorization",
    "commutator_norm",
    "decompose",
    "entanglement_report",
    "enumerate_bell_sets",
    "fourier_unitary",
    "hermitian_eig",
    "is_normal",
    "joint_diagonalize",
    "linear_family",
    "outcome_distributions",
    "partial_trace",
    "reassemble",
    "schmidt_decompose",
    "simulate",
    "synthesize",
    "to_maximally_correlated",
    "verify_protocol",
    "von_neumann_entropy",
    "weyl_x",
    "weyl_z",
    "BasisOrthogonalityError",
    "CanonicalizationError",
    "CertificationError",
    "DimensionMismatchError",
    "DocumentError",
    "EnumerationCapError",
    "NoConvergenceError",
    "NonSquareError",
    "NotCommutingError",
    "NotDecomposableError",
    "NotHermitianError",
    "NotNormalError",
    "NotNormalizedError",
    "NotPSDError",
    "NotUnitaryError",
    "ProtocolMismatchError",
    "SchmidtkitError",
    "TraceError",
    "VerificationError",
]
