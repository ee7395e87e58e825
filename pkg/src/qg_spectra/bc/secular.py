"""Secular matrix of (EP_{Y,R}): lambda > 0 is an eigenvalue iff it is rank deficient.

With u(x) = A cos(s x) + B sin(s x), s = sqrt(lambda), the boundary values are
T1 (A, B) and the outward derivatives (up to sign) s T2 (A, B), where

    T1 = [[I, 0], [cos s I, sin s I]],   T2 = [[0, I], [sin s I, -cos s I]].
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import NonPositiveLambda
from .subspace import BoundaryCondition, RANK_RCOND

COUPLING_ZERO_TOL = 1e-12


def _trace_blocks(m: int, s: float) -> tuple[np.ndarray, np.ndarray]:
    eye = np.eye(m)
    zero = np.zeros((m, m))
    c, sn = math.cos(s), math.sin(s)
    t1 = np.block([[eye, zero], [c * eye, sn * eye]])
    t2 = np.block([[zero, eye], [sn * eye, -c * eye]])
    return t1, t2


def secular_matrix(bc: BoundaryCondition, lam: float) -> np.ndarray:
    """4m x 2m stack [P_perp T1 ; P_Y (sqrt(lam) T2 - P_Y R P_Y T1)] acting on (A, B)."""
    if not lam > 0:
        raise NonPositiveLambda(f"lambda must be positive, got {lam}")
    s = math.sqrt(lam)
    t1, t2 = _trace_blocks(bc.m, s)
    top = bc.p_perp @ t1
    bottom = bc.p_y @ (s * t2 - bc.coupling @ t1)
    return np.vstack([top, bottom])


def scaled_secular_matrix(bc: BoundaryCondition, s: float) -> np.ndarray:
    """secular_matrix(s^2) @ diag(I, I/s): same nullity for s > 0, bounded as s -> 0.

    Equivalent to the basis u = A cos(s x) + B sin(s x) / s, whose s -> 0 limit
    is the affine solution A + B x.
    """
    if not s > 0:
        raise NonPositiveLambda(f"sqrt(lambda) must be positive, got {s}")
    m = bc.m
    eye = np.eye(m)
    zero = np.zeros((m, m))
    c, sn = math.cos(s), math.sin(s)
    sinc = np.sinc(s / math.pi)
    t1 = np.block([[eye, zero], [c * eye, sinc * eye]])
    t2 = np.block([[zero, eye], [s * sn * eye, -c * eye]])
    top = bc.p_perp @ t1
    bottom = bc.p_y @ (t2 - bc.coupling @ t1)
    return np.vstack([top, bottom])


def zero_multiplicity(bc: BoundaryCondition, tol: float = COUPLING_ZERO_TOL) -> int:
    """Multiplicity of the eigenvalue 0.

    Zero once the effective coupling is nonzero; otherwise dim(diag cap Y) =
    m + d - rank([diag | Y]) by Grassmann's formula, diag = {(A, A)}.
    """
    if np.linalg.norm(bc.coupling, 2) > tol:
        return 0
    m, y = bc.m, bc.Y
    if y.d == 0:
        return 0
    diag = np.vstack([np.eye(m), np.eye(m)]) / math.sqrt(2.0)
    stacked = np.hstack([diag, y.basis])
    sv = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.count_nonzero(sv > RANK_RCOND * sv[0])) if sv.size else 0
    return m + y.d - rank
