"""Recover (n, N, c, c+, c-) from a CK or KC spectrum, plus isospectrality checks.

Only the eigenvalues 0, pi^2, 4 pi^2 and the count of eigenvalues in
(0, pi^2) are needed. The complexity and degree sequence are not spectral
invariants in general; the non-recoverability report shows a pair where they
differ while both spectra agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ck_kc_spectra import (
    LOOKUP_TOL,
    Condition,
    EigenClass,
    EigenvalueEntry,
    SpectrumWindow,
    ck_spectrum,
    classify,
    kc_spectrum,
)
from .errors import InconsistentSpectrum, WindowMismatch, WindowTooSmall
from .graph_core import Graph, analyze, degree_sequence, generate, spanning_tree_count
from .logger_factory import get_logger
from .spectral_matrices import MatrixKind, cluster_eigenvalues, hermitian_spectrum, matrix, spectrum_of_transition
from .utils.logfmt import fmt, fmt_many

log = get_logger("inverse_spectral")

PI_SQ = math.pi ** 2
FOUR_PI_SQ = 4.0 * PI_SQ
REPORT_WINDOW = (6 * math.pi) ** 2


@dataclass(frozen=True)
class RecoveredInvariants:
    n: int
    N: int
    c: int
    c_plus: int
    c_minus: int
    source_condition: Condition

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.N, self.c, self.c_plus, self.c_minus)


@dataclass(frozen=True)
class RegularRecovery:
    invariants: RecoveredInvariants
    degree: int
    complexity: int


@dataclass(frozen=True)
class PairSummary:
    name: str
    n: int
    N: int
    degree_sequence: tuple[int, ...]
    complexity: int
    transition_spectrum: tuple[tuple[float, int], ...]
    adjacency_spectrum: tuple[tuple[float, int], ...]


@dataclass(frozen=True)
class NonRecoverabilityReport:
    first: PairSummary
    second: PairSummary
    isospectral_ck: bool
    isospectral_kc: bool
    recovered: tuple[RecoveredInvariants, RecoveredInvariants]
    degree_sequences_differ: bool
    complexities_differ: bool
    star_circuit: tuple[PairSummary, PairSummary]
    star_circuit_transition_isospectral: bool
    star_circuit_isospectral_ck: bool
    star_circuit_isospectral_kc: bool
    regular_examples: tuple[tuple[str, RegularRecovery], ...] = field(default=())
    # regular recovery applied to the non-regular second graph
    regular_misread: RegularRecovery | None = None


# ---------- recovery ----------

def _whole(value: float, what: str) -> int:
    r = round(value)
    if abs(value - r) > 1e-9:
        raise InconsistentSpectrum(f"{what} = {value} is not an integer")
    return int(r)


def recover(spec: SpectrumWindow, tol: float = LOOKUP_TOL) -> RecoveredInvariants:
    if spec.lambda_max < FOUR_PI_SQ - tol:
        raise WindowTooSmall(f"recovery needs lambda_max >= 4 pi^2, got {spec.lambda_max}")
    m0 = spec.multiplicity_at(0.0, tol)
    m1 = spec.multiplicity_at(PI_SQ, tol)
    m4 = spec.multiplicity_at(FOUR_PI_SQ, tol)
    low = sum(e.multiplicity for e in spec.entries if tol < e.lam < PI_SQ - tol)

    if spec.condition is Condition.CK:
        c = m0
        c_minus = _whole((m4 - m1) / 2, "c-")
        c_plus = c - c_minus
        n = c + c_plus + low
        big_n = n - 2 * c + m4
    else:
        c_minus = _whole((m1 - m4) / 2, "c-")
        c_plus = m4 - m0
        c = c_plus + c_minus
        n = c + c_plus + low
        big_n = m0 + n - c_plus

    values = {"n": n, "N": big_n, "c": c, "c_plus": c_plus, "c_minus": c_minus}
    if any(v < 0 for v in values.values()) or n < 1:
        raise InconsistentSpectrum(f"recovered invariants are not admissible: {values}")
    log.debug(f"[recover] {fmt('condition', spec.condition.value)} {fmt_many(**values)}")
    return RecoveredInvariants(n, big_n, c, c_plus, c_minus, spec.condition)


def transition_spectrum_from_window(spec: SpectrumWindow, tol: float = LOOKUP_TOL) -> list[tuple[float, int]]:
    """sigma(Z) read back from a window: mu = +-cos sqrt(lambda) on (0, pi^2), with m(1) = c and m(-1) = c+."""
    inv = recover(spec, tol)
    sign = 1.0 if spec.condition is Condition.CK else -1.0
    values: list[tuple[float, int]] = []
    for e in spec.entries:
        if tol < e.lam < PI_SQ - tol:
            values.append((sign * math.cos(math.sqrt(e.lam)), e.multiplicity))
    if inv.c:
        values.append((1.0, inv.c))
    if inv.c_plus:
        values.append((-1.0, inv.c_plus))
    return sorted(values)


def recover_regular(spec: SpectrumWindow, tol: float = LOOKUP_TOL) -> RegularRecovery:
    """Degree and spanning-tree count of a connected regular graph from its spectrum.

    With degree r = 2N/n the Laplacian eigenvalues are r (1 - mu), so the
    complexity is prod_{mu != 1} r (1 - mu) / n.

    Regularity is assumed, not read from the spectrum: a non-regular graph
    whose 2N/n happens to be an integer gets a plausible but wrong answer.
    butler_grout_2 reads as degree 2 with kappa 8 although its kappa is 4.
    """
    inv = recover(spec, tol)
    if inv.c != 1:
        raise InconsistentSpectrum("regular recovery needs a connected graph")
    if (2 * inv.N) % inv.n:
        raise InconsistentSpectrum(f"2N/n = {2 * inv.N}/{inv.n} is not an integer degree")
    r = 2 * inv.N // inv.n
    product = 1.0
    seen_one = False
    for mu, mult in transition_spectrum_from_window(spec, tol):
        if mu == 1.0 and not seen_one:
            seen_one = True
            mult -= 1
        product *= (r * (1.0 - mu)) ** mult
    kappa = _whole_tolerant(product / inv.n)
    return RegularRecovery(inv, r, kappa)


def _whole_tolerant(value: float) -> int:
    r = round(value)
    if abs(value - r) > 1e-6 * max(1.0, abs(value)):
        raise InconsistentSpectrum(f"complexity {value} is not an integer")
    return int(r)


# ---------- external data ----------

def window_from_pairs(
    pairs: Iterable[tuple[float, int]],
    condition: str | Condition,
    lambda_max: float,
    tol: float = LOOKUP_TOL,
) -> SpectrumWindow:
    """Window from (lambda, multiplicity) pairs, e.g. a secular scan or a JSON document."""
    cond = Condition.parse(condition)
    entries: list[EigenvalueEntry] = []
    for lam, mult in sorted(pairs):
        if mult <= 0:
            continue
        base = classify(float(lam), cond, tol)
        entries.append(EigenvalueEntry(base.lam, base.sqrt_lambda, int(mult), base.klass, base.source_mu))
    merged: list[EigenvalueEntry] = []
    for e in entries:
        if merged and abs(merged[-1].lam - e.lam) <= tol:
            prev = merged[-1]
            merged[-1] = EigenvalueEntry(
                prev.lam, prev.sqrt_lambda, prev.multiplicity + e.multiplicity, prev.klass, prev.source_mu
            )
        else:
            merged.append(e)
    return SpectrumWindow(cond, float(lambda_max), tuple(merged))


def collate_window(
    values: Sequence[float],
    condition: str | Condition,
    lambda_max: float,
    tol: float = LOOKUP_TOL,
) -> SpectrumWindow:
    """Cluster a multiplicity-free eigenvalue list (repeats allowed) into a window."""
    return window_from_pairs(cluster_eigenvalues(values, tol), condition, lambda_max, tol)


# ---------- isospectrality ----------

def isospectral(spec1: SpectrumWindow, spec2: SpectrumWindow, tol: float = LOOKUP_TOL) -> bool:
    if spec1.condition is not spec2.condition:
        raise WindowMismatch(f"conditions differ: {spec1.condition.value} vs {spec2.condition.value}")
    if abs(spec1.lambda_max - spec2.lambda_max) > 1e-12 * max(1.0, spec1.lambda_max):
        raise WindowMismatch(f"lambda_max differs: {spec1.lambda_max} vs {spec2.lambda_max}")
    if len(spec1.entries) != len(spec2.entries):
        return False
    return all(
        abs(a.lam - b.lam) <= tol and a.multiplicity == b.multiplicity
        for a, b in zip(spec1.entries, spec2.entries)
    )


def _summary(name: str, g: Graph) -> PairSummary:
    zspec = spectrum_of_transition(g)
    aspec = hermitian_spectrum(matrix(g, MatrixKind.ADJACENCY), zspec.tol_cluster)
    return PairSummary(
        name=name,
        n=g.n,
        N=g.N,
        degree_sequence=tuple(degree_sequence(g)),
        complexity=spanning_tree_count(g),
        transition_spectrum=zspec.values,
        adjacency_spectrum=aspec.values,
    )


def _same_values(a: Sequence[tuple[float, int]], b: Sequence[tuple[float, int]], tol: float) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol and m == k for (x, m), (y, k) in zip(a, b))


def non_recoverability_report(lambda_max: float = REPORT_WINDOW) -> NonRecoverabilityReport:
    """Isospectral graphs that differ in complexity and degrees, and regular graphs where both are recovered."""
    g1 = generate("butler_grout_1")
    g2 = generate("butler_grout_2")
    ck1, ck2 = ck_spectrum(g1, lambda_max), ck_spectrum(g2, lambda_max)
    kc1, kc2 = kc_spectrum(g1, lambda_max), kc_spectrum(g2, lambda_max)
    first, second = _summary("butler_grout_1", g1), _summary("butler_grout_2", g2)

    circuit, star = generate("circuit", 4), generate("star", 3)
    sc = (_summary("circuit_4", circuit), _summary("star_3", star))
    regular = tuple(
        (name, recover_regular(ck_spectrum(generate(kind, size), lambda_max)))
        for name, kind, size in (("complete_4", "complete", 4), ("petersen", "petersen", None), ("cube_q3", "cube_q3", None))
    )
    report = NonRecoverabilityReport(
        first=first,
        second=second,
        isospectral_ck=isospectral(ck1, ck2),
        isospectral_kc=isospectral(kc1, kc2),
        recovered=(recover(ck1), recover(ck2)),
        degree_sequences_differ=first.degree_sequence != second.degree_sequence,
        complexities_differ=first.complexity != second.complexity,
        star_circuit=sc,
        star_circuit_transition_isospectral=_same_values(
            sc[0].transition_spectrum, sc[1].transition_spectrum, LOOKUP_TOL
        ),
        star_circuit_isospectral_ck=isospectral(ck_spectrum(circuit, lambda_max), ck_spectrum(star, lambda_max)),
        star_circuit_isospectral_kc=isospectral(kc_spectrum(circuit, lambda_max), kc_spectrum(star, lambda_max)),
        regular_examples=regular,
        regular_misread=recover_regular(ck2),
    )
    log.info(
        f"[non-recoverability] {fmt('isospectral_ck', report.isospectral_ck)} "
        f"{fmt('isospectral_kc', report.isospectral_kc)} {fmt('kappa', (first.complexity, second.complexity))}"
    )
    return report


def components_match(g: Graph, inv: RecoveredInvariants) -> bool:
    info = analyze(g)
    return inv.as_tuple() == (g.n, g.N, info.c, info.c_plus, info.c_minus)
