"""Closed form for one interval whose endpoints are coupled through Y_alpha = span{(alpha, 1)}.

Endpoint values satisfy f(0) = alpha f(1).
"""
from __future__ import annotations

import math


def loop_cosine(alpha: complex) -> float:
    """cos(sqrt(lambda)) on the spectrum: 2 Re(alpha) / (1 + |alpha|^2), always in [-1, 1]."""
    a = complex(alpha)
    return max(-1.0, min(1.0, 2.0 * a.real / (1.0 + abs(a) ** 2)))


def loop_spectrum(alpha: complex, lambda_max: float, *, edge_tol: float = 1e-12) -> list[tuple[float, int]]:
    """All (lambda, multiplicity) in [0, lambda_max] for the loop condition Y_alpha.

    Eigenvalues are simple unless alpha = +-1, where every positive one is
    double; 0 is an eigenvalue (simple) only for alpha = 1.
    """
    a = complex(alpha)
    s_max = math.sqrt(max(lambda_max, 0.0) + edge_tol)
    out: list[tuple[float, int]] = []
    if a == 1:
        out.append((0.0, 1))
        k = 2
        while k * math.pi <= s_max:
            out.append(((k * math.pi) ** 2, 2))
            k += 2
        return out
    if a == -1:
        k = 1
        while k * math.pi <= s_max:
            out.append(((k * math.pi) ** 2, 2))
            k += 2
        return out
    theta = math.acos(loop_cosine(a))
    ell = 0
    while 2 * ell * math.pi - theta <= s_max:
        for s in (2 * ell * math.pi - theta, 2 * ell * math.pi + theta):
            if s > 0 and s <= s_max:
                out.append((s * s, 1))
        ell += 1
    return sorted(set(out))
