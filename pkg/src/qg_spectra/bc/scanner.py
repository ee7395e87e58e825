"""Singular-value scan of the secular matrix in s = sqrt(lambda).

sigma_min(s) is sampled on a uniform grid; every grid local minimum below
the detection threshold is refined by golden-section search, and the refined
point is a root when sigma_min drops below tol_mult * sigma_max. The root's
multiplicity is the number of singular values below that bound. When the next
singular value is small as well, the dip may hide a second root, and its
bracket is resampled on a finer grid.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import GridTooCoarse, WindowTooSmall
from ..logger_factory import get_logger, is_full_enabled
from ..utils.logfmt import fmt
from .secular import scaled_secular_matrix, zero_multiplicity
from .subspace import BoundaryCondition

log = get_logger("bc.scanner")

GRID_STEP = 0.01
TOL_ROOT = 1e-10
TOL_MULT = 1e-8
DETECT_THRESHOLD = 0.1
WINDOW_EDGE_TOL = 1e-12
SUBDIVIDE = 8
MAX_SUBDIVISION_DEPTH = 3

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQ = (3 - math.sqrt(5)) / 2  # 1 / phi^2


@dataclass(frozen=True, eq=False)
class SecularScan:
    s_grid: np.ndarray
    sigma_curves: np.ndarray
    roots: tuple[tuple[float, int], ...]
    tol_root: float
    tol_mult: float
    regime_guaranteed: bool

    def multiplicity_at(self, lam: float, tol: float = 1e-7) -> int:
        return sum(m for v, m in self.roots if abs(v - lam) <= tol)

    def expanded(self) -> list[float]:
        return [v for v, m in self.roots for _ in range(m)]


def _singular_values(bc: BoundaryCondition, s: float) -> np.ndarray:
    return np.linalg.svd(scaled_secular_matrix(bc, s), compute_uv=False)


def _relative_sigma_min(bc: BoundaryCondition, s: float) -> float:
    sv = _singular_values(bc, s)
    return float(sv[-1] / sv[0]) if sv[0] > 0 else 0.0


def golden_section_minimize(f, a: float, b: float, tol: float) -> float:
    """Golden-section search for the minimizer of a unimodal f on [a, b]."""
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(steps - 1):
        if yc < yd:
            b, d, yd = d, c, yc
            h *= INV_PHI
            c = a + INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    return 0.5 * (a + d) if yc < yd else 0.5 * (c + b)


def _sample(bc: BoundaryCondition, grid: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1:
        rows = [_singular_values(bc, float(s)) for s in grid]
    else:
        # map keeps grid order, so the result matches the sequential scan
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda s: _singular_values(bc, float(s)), grid))
    return np.asarray(rows)


def _local_minima(rel) -> list[int]:
    idx = []
    last = len(rel) - 1
    for i in range(len(rel)):
        left = rel[i - 1] if i > 0 else math.inf
        right = rel[i + 1] if i < last else math.inf
        if rel[i] <= left and rel[i] < right:
            idx.append(i)
    return idx


def _next_gap(sv: np.ndarray, mult: int) -> float:
    """Relative size of the smallest singular value left out of the multiplicity."""
    if mult >= len(sv) or sv[0] <= 0:
        return math.inf
    return float(sv[-(mult + 1)] / sv[0])


@dataclass(frozen=True)
class _ScanParams:
    grid_step: float
    tol_root: float
    tol_mult: float
    detect_threshold: float


def _refine(bc: BoundaryCondition, lo: float, hi: float, p: _ScanParams) -> tuple[float, int, np.ndarray]:
    s_star = golden_section_minimize(lambda s: _relative_sigma_min(bc, s), lo, hi, p.tol_root)
    sv = _singular_values(bc, s_star)
    return s_star, int(np.count_nonzero(sv < p.tol_mult * sv[0])), sv


def _merge_close(roots: list[tuple[float, int]], tol: float) -> list[tuple[float, int]]:
    merged: list[tuple[float, int]] = []
    for s, m in sorted(roots):
        if merged and s - merged[-1][0] < tol:
            if m > merged[-1][1]:
                merged[-1] = (s, m)
            continue
        merged.append((s, m))
    return merged


def _resolve_dip(
    bc: BoundaryCondition, lo: float, hi: float, step: float, depth: int, p: _ScanParams
) -> tuple[list[tuple[float, int]], bool]:
    """Roots inside the bracket [lo, hi] of one sigma_min dip, sampled at `step`.

    A root whose next singular value is also small may hide a second root
    closer than `step`; the bracket is then resampled SUBDIVIDE times finer.
    Returns the roots and whether the bracket was subdivided.
    """
    s_star, mult, sv = _refine(bc, lo, hi, p)
    if mult == 0:
        return [], False
    gap = _next_gap(sv, mult)
    if gap >= p.detect_threshold * step / p.grid_step:
        return [(s_star, mult)], False
    if depth >= MAX_SUBDIVISION_DEPTH:
        raise GridTooCoarse(
            f"a second singular value stays small near s={s_star:.12g} (relative {gap:.3g}) "
            f"after {depth} subdivisions; reduce grid_step below {p.grid_step}"
        )
    count = max(2, int(round((hi - lo) / step)) * SUBDIVIDE)
    fine = np.linspace(lo, hi, count + 1)[1:-1]
    rel = [_relative_sigma_min(bc, float(s)) for s in fine]
    roots = [(s_star, mult)]
    last = len(fine) - 1
    for j in _local_minima(rel):
        if rel[j] >= p.detect_threshold:
            continue
        a = float(fine[j - 1]) if j > 0 else lo
        b = float(fine[j + 1]) if j < last else hi
        sub, _ = _resolve_dip(bc, a, b, (hi - lo) / count, depth + 1, p)
        roots.extend(sub)
    merged = _merge_close(roots, 10 * p.tol_root)
    log.debug(
        f"[scan-subdivide] {fmt('s', s_star)} {fmt('depth', depth + 1)} {fmt('gap', gap)} "
        f"{fmt('roots', len(merged))}"
    )
    return merged, True


def scan_eigenvalues(
    bc: BoundaryCondition,
    lambda_max: float,
    grid_step: float = GRID_STEP,
    tol_root: float = TOL_ROOT,
    tol_mult: float = TOL_MULT,
    *,
    detect_threshold: float = DETECT_THRESHOLD,
    edge_tol: float = WINDOW_EDGE_TOL,
    threads: int = 1,
) -> SecularScan:
    if lambda_max <= 0:
        raise WindowTooSmall(f"lambda_max must be positive, got {lambda_max}")
    if grid_step <= 0:
        raise GridTooCoarse(f"grid_step must be positive, got {grid_step}")
    regime = bc.is_positive_semidefinite()
    if not regime:
        log.warning(f"[scan-regime] coupling is not positive semidefinite on Y {fmt('m', bc.m)}")

    s_max = math.sqrt(lambda_max)
    # one extra step past sqrt(lambda_max) so an edge root is bracketed
    count = int(math.floor(s_max / grid_step)) + 2
    grid = grid_step * np.arange(1, count + 1)
    curves = _sample(bc, grid, threads)
    sig_max = curves[:, 0]
    rel = np.where(sig_max > 0, curves[:, -1] / np.where(sig_max > 0, sig_max, 1.0), 0.0)
    params = _ScanParams(grid_step, tol_root, tol_mult, detect_threshold)

    # (s, multiplicity, grid dip, found by subdividing)
    found: list[tuple[float, int, int, bool]] = []
    for i in _local_minima(rel):
        if rel[i] >= detect_threshold:
            continue
        lo = grid[i - 1] if i > 0 else 0.5 * grid_step
        hi = grid[i + 1] if i + 1 < len(grid) else grid[i] + grid_step
        dip_roots, subdivided = _resolve_dip(bc, float(lo), float(hi), grid_step, 0, params)
        for s_star, mult in dip_roots:
            if s_star <= 0.5 * grid_step + 10 * tol_root:
                # decay towards s = 0 belongs to the zero eigenvalue
                continue
            if is_full_enabled():
                log.debug(
                    f"[scan-dip] {fmt('index', i)} {fmt('s', s_star)} {fmt('multiplicity', mult)} "
                    f"{fmt('subdivided', subdivided)}"
                )
            clash = next((k for k, f in enumerate(found) if abs(f[0] - s_star) < 10 * tol_root), None)
            if clash is None:
                found.append((s_star, mult, i, subdivided))
                continue
            prev = found[clash]
            if not (prev[3] or subdivided):
                raise GridTooCoarse(
                    f"grid dips {prev[2]} and {i} refine to the same root s={s_star:.12g}; "
                    f"reduce grid_step below {grid_step}"
                )
            # overlapping brackets: a subdivided dip already accounts for this root
            if mult > prev[1]:
                found[clash] = (prev[0], mult, prev[2], True)
    found.sort()

    roots: list[tuple[float, int]] = []
    z = zero_multiplicity(bc)
    if z > 0:
        roots.append((0.0, z))
    for s_star, mult, _, _ in found:
        lam = s_star * s_star
        if lam <= lambda_max + edge_tol + 2 * s_star * tol_root:
            roots.append((lam, min(mult, 2 * bc.m)))
    log.debug(
        f"[scan] {fmt('m', bc.m)} {fmt('dim_y', bc.Y.d)} {fmt('lambda_max', lambda_max)} "
        f"{fmt('grid', len(grid))} {fmt('roots', len(roots))} {fmt('regime_guaranteed', regime)}"
    )
    return SecularScan(
        s_grid=grid,
        sigma_curves=curves,
        roots=tuple(roots),
        tol_root=tol_root,
        tol_mult=tol_mult,
        regime_guaranteed=regime,
    )
