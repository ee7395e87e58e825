from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg as la

from ..errors import GraphFormatError, NonHermitianR

RANK_RCOND = 1e-10
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace Y of C^{2m} held as an orthonormal column frame (2m x d)."""

    basis: np.ndarray

    def __post_init__(self) -> None:
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2:
            raise GraphFormatError(f"subspace frame must be 2-dimensional, got shape {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def d(self) -> int:
        return self.basis.shape[1]

    @property
    def m(self) -> int:
        return self.ambient_dim // 2

    # ---------- constructors ----------

    @classmethod
    def span(cls, vectors: Sequence[Sequence[complex]] | np.ndarray, ambient_dim: int | None = None) -> "Subspace":
        """Orthonormalize spanning vectors (rows of `vectors`); rank decided at 1e-10 relative."""
        arr = np.asarray(vectors, dtype=complex)
        if arr.size == 0:
            if ambient_dim is None:
                raise GraphFormatError("empty span needs an explicit ambient dimension")
            return cls.zero(ambient_dim)
        if arr.ndim == 1:
            arr = arr[None, :]
        if ambient_dim is not None and arr.shape[1] != ambient_dim:
            raise GraphFormatError(f"vectors have length {arr.shape[1]}, expected {ambient_dim}")
        if arr.shape[1] % 2:
            raise GraphFormatError(f"ambient dimension must be even, got {arr.shape[1]}")
        return cls(la.orth(arr.T, rcond=RANK_RCOND))

    @classmethod
    def from_columns(cls, cols: np.ndarray) -> "Subspace":
        return cls.span(np.asarray(cols).T, ambient_dim=np.asarray(cols).shape[0])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(np.eye(ambient_dim, dtype=complex))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def y_alpha(cls, alpha: complex) -> "Subspace":
        """Loop condition span{(alpha, 1)} in C^2: values with f(0) = alpha f(1)."""
        v = np.array([alpha, 1.0], dtype=complex)
        return cls((v / np.linalg.norm(v))[:, None])

    @classmethod
    def random(cls, ambient_dim: int, d: int, seed: int | None = None) -> "Subspace":
        rng = np.random.default_rng(seed)
        z = rng.standard_normal((ambient_dim, d)) + 1j * rng.standard_normal((ambient_dim, d))
        q, _ = np.linalg.qr(z)
        return cls(q[:, :d])

    def to_vectors(self) -> list[list[complex]]:
        return [list(col) for col in self.basis.T]


def projector(y: Subspace) -> np.ndarray:
    """P_Y = B B^H; P_{Y-perp} = I - P_Y."""
    return y.basis @ y.basis.conj().T


def orthogonal_complement(y: Subspace) -> Subspace:
    if y.d == 0:
        return Subspace.full(y.ambient_dim)
    if y.d == y.ambient_dim:
        return Subspace.zero(y.ambient_dim)
    return Subspace(la.null_space(y.basis.conj().T, rcond=RANK_RCOND))


@dataclass(frozen=True, eq=False)
class BoundaryCondition:
    """Pair (Y, R); R is any Hermitian 2m x 2m matrix, compressed to P_Y R P_Y."""

    Y: Subspace
    R: np.ndarray | None = None
    _p: np.ndarray = field(init=False, repr=False)
    _coupling: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dim = self.Y.ambient_dim
        r = np.zeros((dim, dim), dtype=complex) if self.R is None else np.asarray(self.R, dtype=complex)
        if r.shape != (dim, dim):
            raise NonHermitianR(f"R must be {dim}x{dim}, got {r.shape}")
        if not np.allclose(r, r.conj().T, atol=HERMITIAN_TOL, rtol=0):
            raise NonHermitianR("R is not Hermitian")
        p = projector(self.Y)
        object.__setattr__(self, "R", r)
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_coupling", p @ r @ p)

    @property
    def m(self) -> int:
        return self.Y.m

    @property
    def p_y(self) -> np.ndarray:
        return self._p

    @property
    def p_perp(self) -> np.ndarray:
        return np.eye(self.Y.ambient_dim) - self._p

    @property
    def coupling(self) -> np.ndarray:
        """Effective coupling P_Y R P_Y."""
        return self._coupling

    def is_positive_semidefinite(self, tol: float = 1e-10) -> bool:
        vals = la.eigvalsh(self._coupling)
        return bool(vals.size == 0 or vals.min() >= -tol * max(1.0, float(np.abs(vals).max())))
