"""General self-adjoint boundary conditions (Y, R) on m decoupled unit intervals."""

from .subspace import BoundaryCondition, Subspace, orthogonal_complement, projector
from .secular import scaled_secular_matrix, secular_matrix, zero_multiplicity
from .scanner import SecularScan, scan_eigenvalues
from .graph_conditions import ck_subspace, kc_subspace
from .loop import loop_cosine, loop_spectrum
from .duality import DualityReport, duality_check

__all__ = [
    "BoundaryCondition",
    "DualityReport",
    "SecularScan",
    "Subspace",
    "ck_subspace",
    "duality_check",
    "kc_subspace",
    "loop_cosine",
    "loop_spectrum",
    "orthogonal_complement",
    "projector",
    "scaled_secular_matrix",
    "scan_eigenvalues",
    "secular_matrix",
    "zero_multiplicity",
]
