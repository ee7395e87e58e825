"""CK and KC vertex conditions of a graph as subspaces of C^{2N}.

Coordinate j of C^{2N} is endpoint 0 (tail) of edge j and coordinate N + j
is endpoint 1 (head). The CK space is the range of the endpoint evaluation
map [(D-)^T; (D+)^T]; the KC space is its orthogonal complement.
"""
from __future__ import annotations

import numpy as np

from ..errors import EmptyGraph, InconsistentSpectrum, IsolatedVertex
from ..graph_core import Graph
from ..logger_factory import get_logger
from ..spectral_matrices import endpoint_evaluation, nullity, s1_projector, s2_matrix
from ..utils.logfmt import fmt
from .subspace import Subspace, orthogonal_complement, projector

log = get_logger("bc.graph_conditions")

_CHECK_TOL = 1e-9


def _checked_frame(g: Graph) -> np.ndarray:
    if g.N == 0:
        raise EmptyGraph("vertex conditions need at least one edge")
    deg = g.degrees()
    if 0 in deg:
        raise IsolatedVertex(f"vertex {deg.index(0)} has degree 0")
    return endpoint_evaluation(g)


def ck_subspace(g: Graph) -> Subspace:
    frame = _checked_frame(g)
    y = Subspace.from_columns(frame)
    if y.d != g.n:
        raise InconsistentSpectrum(f"CK space has dimension {y.d}, expected n={g.n}")
    # Y = ker S1 and Y-perp = ker S2
    p = projector(y).real
    s1 = s1_projector(g)
    s2 = s2_matrix(g)
    if nullity(s1) != g.n or nullity(s2) != 2 * g.N - g.n:
        raise InconsistentSpectrum("S1/S2 kernels disagree with the CK space dimension")
    if np.abs(s1 @ p).max() > _CHECK_TOL:
        raise InconsistentSpectrum("CK space is not contained in ker S1")
    log.debug(f"[ck-subspace] {fmt('n', g.n)} {fmt('N', g.N)} {fmt('dim', y.d)}")
    return y


def kc_subspace(g: Graph) -> Subspace:
    y = orthogonal_complement(ck_subspace(g))
    log.debug(f"[kc-subspace] {fmt('n', g.n)} {fmt('N', g.N)} {fmt('dim', y.d)}")
    return y
