"""Graph matrices and the real spectrum of the transition matrix Z = D^-1 A."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np
import scipy.linalg as la

from .errors import EmptyGraph, IsolatedVertex
from .graph_core import Graph
from .logger_factory import get_logger
from .utils.logfmt import fmt

log = get_logger("spectral_matrices")

DEFAULT_NULLITY_TOL = 1e-9


class MatrixKind(str, Enum):
    ADJACENCY = "adjacency"
    DEGREE = "degree"
    SIGNED_INCIDENCE = "signed_incidence"
    UNSIGNED_INCIDENCE = "unsigned_incidence"
    COMBINATORIAL_LAPLACIAN = "combinatorial_laplacian"
    NORMALIZED_LAPLACIAN = "normalized_laplacian"
    SIGNLESS_LAPLACIAN = "signless_laplacian"
    TRANSITION = "transition"


@dataclass(frozen=True)
class RealSpectrum:
    values: tuple[tuple[float, int], ...]
    tol_cluster: float

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.values)

    def multiplicity(self, value: float, tol: float | None = None) -> int:
        t = self.tol_cluster if tol is None else tol
        return sum(m for v, m in self.values if abs(v - value) <= t)

    def expanded(self) -> list[float]:
        return [v for v, m in self.values for _ in range(m)]

    def distinct(self) -> list[float]:
        return [v for v, _ in self.values]


def default_cluster_tol(n: int, rel: float = 1e-9) -> float:
    return rel * max(1, n)


def _require_edges(g: Graph) -> None:
    if g.N == 0:
        raise EmptyGraph("graph has no edges")


def _require_no_isolated(g: Graph) -> np.ndarray:
    deg = np.asarray(g.degrees(), dtype=float)
    isolated = np.flatnonzero(deg == 0)
    if isolated.size:
        raise IsolatedVertex(f"vertex {int(isolated[0])} has degree 0")
    return deg


def adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for t, h in g.edges:
        a[t, h] = a[h, t] = 1.0
    return a


def signed_incidence(g: Graph) -> np.ndarray:
    """n x N with d_ij = +1 at the head of edge j and -1 at its tail."""
    d = np.zeros((g.n, g.N))
    for j, (t, h) in enumerate(g.edges):
        d[h, j] = 1.0
        d[t, j] = -1.0
    return d


def incidence_parts(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative parts (D+, D-) of the signed incidence matrix."""
    d = signed_incidence(g)
    return np.clip(d, 0, None), np.clip(-d, 0, None)


def transition_matrix(g: Graph) -> np.ndarray:
    """Row-stochastic Z = D^-1 A."""
    deg = _require_no_isolated(g)
    return adjacency(g) / deg[:, None]


def matrix(g: Graph, kind: str | MatrixKind) -> np.ndarray:
    k = MatrixKind(kind)
    if k is MatrixKind.ADJACENCY:
        return adjacency(g)
    if k is MatrixKind.DEGREE:
        return np.diag(np.asarray(g.degrees(), dtype=float))
    if k is MatrixKind.SIGNED_INCIDENCE:
        return signed_incidence(g)
    if k is MatrixKind.UNSIGNED_INCIDENCE:
        return np.abs(signed_incidence(g))
    if k is MatrixKind.COMBINATORIAL_LAPLACIAN:
        return np.diag(np.asarray(g.degrees(), dtype=float)) - adjacency(g)
    if k is MatrixKind.SIGNLESS_LAPLACIAN:
        return np.diag(np.asarray(g.degrees(), dtype=float)) + adjacency(g)
    if k is MatrixKind.TRANSITION:
        return transition_matrix(g)
    # normalized Laplacian I - D^-1/2 A D^-1/2
    return np.eye(g.n) - _symmetric_transition(g)


def _symmetric_transition(g: Graph) -> np.ndarray:
    deg = _require_no_isolated(g)
    s = 1.0 / np.sqrt(deg)
    return s[:, None] * adjacency(g) * s[None, :]


def cluster_eigenvalues(values: Iterable[float], tol: float) -> list[tuple[float, int]]:
    """Sort and merge runs whose consecutive gaps are below tol; each group reports its mean."""
    vals = np.sort(np.asarray(list(values), dtype=float))
    groups: list[list[float]] = []
    for v in vals:
        if groups and v - groups[-1][-1] < tol:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return [(float(np.mean(grp)), len(grp)) for grp in groups]


def hermitian_spectrum(m: np.ndarray, tol: float) -> RealSpectrum:
    if m.size == 0:
        return RealSpectrum(values=(), tol_cluster=tol)
    vals = la.eigvalsh(m)
    return RealSpectrum(values=tuple(cluster_eigenvalues(vals, tol)), tol_cluster=tol)


def spectrum_of_transition(g: Graph, tol: float | None = None) -> RealSpectrum:
    """sigma(Z) from the similar symmetric matrix D^-1/2 A D^-1/2.

    Groups within tol of +-1 are snapped onto the endpoints.
    """
    _require_edges(g)
    tol = default_cluster_tol(g.n) if tol is None else float(tol)
    vals = la.eigvalsh(_symmetric_transition(g))
    vals = np.clip(vals, -1.0, 1.0)
    vals[np.abs(vals - 1.0) < tol] = 1.0
    vals[np.abs(vals + 1.0) < tol] = -1.0
    groups = cluster_eigenvalues(vals, tol)
    snapped = []
    for v, mult in groups:
        if abs(v - 1.0) < tol:
            v = 1.0
        elif abs(v + 1.0) < tol:
            v = -1.0
        snapped.append((v, mult))
    log.debug(f"[transition-spectrum] {fmt('n', g.n)} {fmt('N', g.N)} {fmt('distinct', len(snapped))}")
    return RealSpectrum(values=tuple(snapped), tol_cluster=tol)


def nullity(m: np.ndarray, tol: float = DEFAULT_NULLITY_TOL) -> int:
    """Kernel dimension: columns minus the count of singular values >= tol * sigma_max."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    sv = la.svdvals(m)
    smax = float(sv[0]) if sv.size else 0.0
    rank = int(np.count_nonzero(sv >= tol * smax)) if smax > 0 else 0
    return m.shape[1] - rank


def s2_matrix(g: Graph) -> np.ndarray:
    """2N x 2N endpoint-coincidence matrix; coordinate j is the tail of edge j, N+j its head.

    Entry (a, b) is 1 when endpoints a and b sit on the same vertex, so the
    matrix is a block of all-ones dyads, one per vertex.
    """
    e = endpoint_evaluation(g)
    return e @ e.T


def s1_projector(g: Graph) -> np.ndarray:
    """Orthogonal projector onto ker S2; its kernel is the continuity space Range S2."""
    s2 = s2_matrix(g)
    basis = la.orth(s2, rcond=1e-10)
    return np.eye(2 * g.N) - basis @ basis.T


def endpoint_evaluation(g: Graph) -> np.ndarray:
    """2N x n map from vertex values to edge-endpoint values (tail block first)."""
    dplus, dminus = incidence_parts(g)
    return np.vstack([dminus.T, dplus.T])
