"""Reflection symmetry between (EP_Y) and (EP_{Y-perp}) with R = 0.

sqrt(lambda) -> |pi - sqrt(lambda)| maps the eigenvalues of one problem onto
the other with equal multiplicities whenever neither side sits at 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..logger_factory import get_logger
from ..utils.logfmt import fmt
from .scanner import GRID_STEP, TOL_MULT, TOL_ROOT, scan_eigenvalues
from .subspace import BoundaryCondition, Subspace, orthogonal_complement

log = get_logger("bc.duality")


@dataclass(frozen=True)
class DualityViolation:
    lam: float
    multiplicity: int
    partner: float
    partner_multiplicity: int


@dataclass(frozen=True)
class DualityReport:
    checked: int
    violations: tuple[DualityViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def duality_check(
    y: Subspace,
    lambda_max: float,
    *,
    grid_step: float = GRID_STEP,
    tol_root: float = TOL_ROOT,
    tol_mult: float = TOL_MULT,
    match_tol: float = 1e-7,
    threads: int = 1,
) -> DualityReport:
    """Every scanned eigenvalue of Y off the points k^2 pi^2 must reappear reflected for Y-perp."""
    scan_y = scan_eigenvalues(BoundaryCondition(y), lambda_max, grid_step, tol_root, tol_mult, threads=threads)
    scan_perp = scan_eigenvalues(
        BoundaryCondition(orthogonal_complement(y)), lambda_max, grid_step, tol_root, tol_mult, threads=threads
    )
    checked = 0
    violations = []
    for lam, mult in scan_y.roots:
        s = math.sqrt(lam)
        if lam <= 0:
            continue
        k = round(s / math.pi)
        if abs(s - k * math.pi) < grid_step:
            # sqrt(lambda) in pi Z, or a partner too close to 0 for the grid
            continue
        partner = (math.pi - s) ** 2
        if math.sqrt(partner) < 2 * grid_step or partner > lambda_max:
            continue
        checked += 1
        got = scan_perp.multiplicity_at(partner, match_tol * max(1.0, partner))
        if got != mult:
            violations.append(DualityViolation(lam, mult, partner, got))
    if violations:
        log.warning(f"[duality] {fmt('checked', checked)} {fmt('violations', len(violations))}")
    return DualityReport(checked, tuple(violations))
