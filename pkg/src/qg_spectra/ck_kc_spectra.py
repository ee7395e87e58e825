"""Closed-form CK and KC spectra of -Delta on equilateral metric graphs.

Every eigenvalue comes from sigma(Z): an eigenvalue mu of Z strictly inside
(-1, 1) yields the immanent family (2 l pi +- arccos(+-mu))^2 with the
multiplicity of mu, and the points k^2 pi^2 carry multiplicities given by
integer formulas in N, n, c, c+.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import Disconnected, EmptyGraph, InconsistentSpectrum, WindowTooSmall
from .graph_core import ComponentInfo, Graph, analyze, contract_vertices
from .logger_factory import get_logger
from .spectral_matrices import RealSpectrum, spectrum_of_transition
from .utils.logfmt import fmt

log = get_logger("ck_kc_spectra")

WINDOW_EDGE_TOL = 1e-12
LOOKUP_TOL = 1e-9
FOUR_PI_SQ = 4.0 * math.pi ** 2


class Condition(str, Enum):
    CK = "CK"
    KC = "KC"

    @classmethod
    def parse(cls, value: str | "Condition") -> "Condition":
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().upper())


class EigenClass(str, Enum):
    ZERO = "zero"
    IMMANENT = "immanent"
    SINGULAR_COS_PLUS_ONE = "singular_cos_plus_one"
    SINGULAR_COS_MINUS_ONE = "singular_cos_minus_one"


@dataclass(frozen=True)
class EigenvalueEntry:
    lam: float
    sqrt_lambda: float
    multiplicity: int
    klass: EigenClass
    source_mu: float | None = None


@dataclass(frozen=True)
class SpectrumWindow:
    condition: Condition
    lambda_max: float
    entries: tuple[EigenvalueEntry, ...]
    graph_info: ComponentInfo | None = None

    def multiplicity_at(self, lam: float, tol: float = LOOKUP_TOL) -> int:
        return sum(e.multiplicity for e in self.entries if abs(e.lam - lam) <= tol)

    def expanded(self) -> list[float]:
        """Eigenvalues repeated by multiplicity, ascending."""
        return [e.lam for e in self.entries for _ in range(e.multiplicity)]

    def immanent(self) -> tuple[EigenvalueEntry, ...]:
        return tuple(e for e in self.entries if e.klass is EigenClass.IMMANENT)

    def count(self) -> int:
        return sum(e.multiplicity for e in self.entries)


@dataclass(frozen=True)
class CKKCComparison:
    full_equal: bool
    immanent_equal: bool
    unicyclic_bipartite: bool
    bipartite: bool
    consistent: bool
    lambda_max: float


@dataclass(frozen=True)
class ContractionReport:
    lambda1_original: float
    lambda1_contracted: float
    holds: bool
    contracted: Graph = field(repr=False)


# ---------- construction ----------

def _singular_counts(g: Graph, info: ComponentInfo) -> dict[str, int]:
    base = g.N - g.n
    return {
        "ck_zero": info.c,
        "kc_zero": base + info.c_plus,
        "plus_all": base + 2 * info.c,
        "plus_bip": base + 2 * info.c_plus,
    }


def _check_transition(spec: RealSpectrum, info: ComponentInfo) -> None:
    # Perron-Frobenius per component; -1 once per bipartite component
    m_one = spec.multiplicity(1.0)
    m_minus = spec.multiplicity(-1.0)
    if m_one != info.c or m_minus != info.c_plus:
        log.error(
            f"[transition-check] {fmt('m_one', m_one)} {fmt('c', info.c)} "
            f"{fmt('m_minus_one', m_minus)} {fmt('c_plus', info.c_plus)}"
        )
        raise InconsistentSpectrum(
            f"sigma(Z) has m(1)={m_one}, m(-1)={m_minus}; expected c={info.c}, c+={info.c_plus}"
        )


def _immanent_branch(theta: float, lambda_max: float, edge_tol: float) -> list[float]:
    """All s = 2 l pi +- theta (theta in (0, pi)) with s^2 <= lambda_max."""
    s_max = math.sqrt(lambda_max + edge_tol)
    out = []
    ell = 0
    while True:
        lo = 2 * ell * math.pi - theta
        hi = 2 * ell * math.pi + theta
        if ell > 0 and lo > s_max:
            break
        if ell > 0 and lo <= s_max:
            out.append(lo)
        if hi <= s_max:
            out.append(hi)
        ell += 1
    return out


def _singular_points(start_k: int, step: int, lambda_max: float, edge_tol: float) -> list[int]:
    ks = []
    k = start_k
    while (k * math.pi) ** 2 <= lambda_max + edge_tol:
        ks.append(k)
        k += step
    return ks


def _build_window(
    g: Graph,
    condition: Condition,
    lambda_max: float,
    tol: float | None,
    edge_tol: float,
) -> SpectrumWindow:
    if g.N == 0:
        raise EmptyGraph("spectra need at least one edge")
    if lambda_max <= 0:
        raise WindowTooSmall(f"lambda_max must be positive, got {lambda_max}")
    info = analyze(g)
    zspec = spectrum_of_transition(g, tol)
    _check_transition(zspec, info)
    counts = _singular_counts(g, info)
    entries: list[EigenvalueEntry] = []

    zero_m = counts["ck_zero"] if condition is Condition.CK else counts["kc_zero"]
    if zero_m > 0:
        entries.append(EigenvalueEntry(0.0, 0.0, zero_m, EigenClass.ZERO))

    for mu, mult in zspec.values:
        if mu in (1.0, -1.0):
            continue
        theta = math.acos(mu if condition is Condition.CK else -mu)
        for s in _immanent_branch(theta, lambda_max, edge_tol):
            entries.append(EigenvalueEntry(s * s, s, mult, EigenClass.IMMANENT, mu))

    # even multiples of pi carry cos = +1, odd multiples cos = -1
    even_m = counts["plus_all"] if condition is Condition.CK else counts["plus_bip"]
    odd_m = counts["plus_bip"] if condition is Condition.CK else counts["plus_all"]
    if even_m > 0:
        for k in _singular_points(2, 2, lambda_max, edge_tol):
            s = k * math.pi
            entries.append(EigenvalueEntry(s * s, s, even_m, EigenClass.SINGULAR_COS_PLUS_ONE))
    if odd_m > 0:
        for k in _singular_points(1, 2, lambda_max, edge_tol):
            s = k * math.pi
            entries.append(EigenvalueEntry(s * s, s, odd_m, EigenClass.SINGULAR_COS_MINUS_ONE))

    entries.sort(key=lambda e: e.lam)
    window = SpectrumWindow(condition, float(lambda_max), tuple(entries), info)
    log.debug(
        f"[{condition.value.lower()}-spectrum] {fmt('n', g.n)} {fmt('N', g.N)} "
        f"{fmt('lambda_max', lambda_max)} {fmt('entries', len(entries))} {fmt('count', window.count())}"
    )
    return window


def ck_spectrum(
    g: Graph, lambda_max: float, tol: float | None = None, *, edge_tol: float = WINDOW_EDGE_TOL
) -> SpectrumWindow:
    """Spectrum of -Delta under continuity + Kirchhoff on [0, lambda_max]."""
    return _build_window(g, Condition.CK, lambda_max, tol, edge_tol)


def kc_spectrum(
    g: Graph, lambda_max: float, tol: float | None = None, *, edge_tol: float = WINDOW_EDGE_TOL
) -> SpectrumWindow:
    """Spectrum of -Delta under the anti-Kirchhoff (delta-prime) coupling on [0, lambda_max]."""
    return _build_window(g, Condition.KC, lambda_max, tol, edge_tol)


def spectrum(
    g: Graph,
    condition: str | Condition,
    lambda_max: float,
    tol: float | None = None,
    *,
    edge_tol: float = WINDOW_EDGE_TOL,
) -> SpectrumWindow:
    return _build_window(g, Condition.parse(condition), lambda_max, tol, edge_tol)


def classify(lam: float, condition: str | Condition, tol: float = LOOKUP_TOL) -> EigenvalueEntry:
    """Classify an externally supplied eigenvalue (multiplicity 1)."""
    cond = Condition.parse(condition)
    if abs(lam) <= tol:
        return EigenvalueEntry(0.0, 0.0, 1, EigenClass.ZERO)
    s = math.sqrt(max(lam, 0.0))
    k = round(s / math.pi)
    if k > 0 and abs(lam - (k * math.pi) ** 2) <= tol * max(1.0, lam):
        klass = EigenClass.SINGULAR_COS_PLUS_ONE if k % 2 == 0 else EigenClass.SINGULAR_COS_MINUS_ONE
        return EigenvalueEntry((k * math.pi) ** 2, k * math.pi, 1, klass)
    mu = math.cos(s) if cond is Condition.CK else -math.cos(s)
    return EigenvalueEntry(float(lam), s, 1, EigenClass.IMMANENT, mu)


# ---------- comparisons and checks ----------

def _same_entries(a: Iterable[EigenvalueEntry], b: Iterable[EigenvalueEntry], tol: float) -> bool:
    la_, lb_ = list(a), list(b)
    if len(la_) != len(lb_):
        return False
    return all(abs(x.lam - y.lam) <= tol and x.multiplicity == y.multiplicity for x, y in zip(la_, lb_))


def compare_ck_kc(g: Graph, lambda_max: float, tol: float = LOOKUP_TOL) -> CKKCComparison:
    """Check that CK = KC exactly when G is unicyclic and bipartite, and immanent parts agree iff bipartite."""
    info = analyze(g)
    if info.c != 1:
        raise Disconnected("CK/KC comparison is stated for connected graphs")
    ck = ck_spectrum(g, lambda_max)
    kc = kc_spectrum(g, lambda_max)
    full = _same_entries(ck.entries, kc.entries, tol)
    imm = _same_entries(ck.immanent(), kc.immanent(), tol)
    uni_bip = info.unicyclic and info.bipartite
    # the full-spectrum test needs 0, pi^2 and 4 pi^2 inside the window
    full_decidable = lambda_max >= FOUR_PI_SQ - tol
    consistent = (imm == info.bipartite) and (not full_decidable or full == uni_bip)
    if not consistent:
        log.error(
            f"[compare-ck-kc] {fmt('full_equal', full)} {fmt('immanent_equal', imm)} "
            f"{fmt('unicyclic_bipartite', uni_bip)} {fmt('bipartite', info.bipartite)}"
        )
    return CKKCComparison(full, imm, uni_bip, info.bipartite, consistent, float(lambda_max))


def kernel_index(g: Graph) -> int:
    """dim Ker Delta^KC - dim Ker Delta^CK = N - n - c-."""
    info = analyze(g)
    value = (g.N - g.n + info.c_plus) - info.c
    if value != g.N - g.n - info.c_minus:
        raise InconsistentSpectrum("kernel index identity failed")
    return value


def weyl_ratio(spec: SpectrumWindow, k: int) -> float:
    """lambda_k / k^2 with eigenvalues repeated by multiplicity; k is 1-based."""
    if k < 1:
        raise WindowTooSmall(f"k must be >= 1, got {k}")
    vals = spec.expanded()
    if len(vals) < k:
        raise WindowTooSmall(f"window holds {len(vals)} eigenvalues, k={k} requested")
    return vals[k - 1] / (k * k)


def lowest_nontrivial(g: Graph, tol: float | None = None) -> float:
    """Smallest positive CK eigenvalue; 4 pi^2 always lies in the spectrum, so the window below it suffices."""
    window = ck_spectrum(g, FOUR_PI_SQ + 1.0, tol)
    return next(e.lam for e in window.entries if e.lam > 0)


def contraction_monotonicity(g1: Graph, v: int, w: int, tol: float = 1e-9) -> ContractionReport:
    if analyze(g1).c != 1:
        raise Disconnected("contraction comparison requires a connected graph")
    g2 = contract_vertices(g1, v, w)
    l1 = lowest_nontrivial(g1)
    l2 = lowest_nontrivial(g2)
    holds = l1 <= l2 + tol
    if not holds:
        log.warning(f"[contraction-monotonicity] {fmt('lambda1', l1)} {fmt('lambda1_contracted', l2)}")
    return ContractionReport(l1, l2, holds, g2)


def distinct_count_per_period(spec: SpectrumWindow, k: int, tol: float = LOOKUP_TOL) -> int:
    """Distinct eigenvalues in ((2k pi)^2, (2(k+1) pi)^2]."""
    lo = (2 * k * math.pi) ** 2
    hi = (2 * (k + 1) * math.pi) ** 2
    if spec.lambda_max < hi - tol:
        raise WindowTooSmall(f"window ends at {spec.lambda_max}, period {k} needs {hi}")
    return sum(1 for e in spec.entries if lo + tol < e.lam <= hi + tol)


def dual_partner(entry: EigenvalueEntry) -> float | None:
    """KC partner (pi - sqrt(lambda))^2 of an immanent CK eigenvalue in (0, pi^2)."""
    if entry.klass is not EigenClass.IMMANENT or entry.sqrt_lambda >= math.pi:
        return None
    return (math.pi - entry.sqrt_lambda) ** 2


def decoupled_bounds(n_edges: int, count: int) -> tuple[list[float], list[float]]:
    """First `count` Neumann and Dirichlet eigenvalues of n_edges uncoupled unit intervals."""
    neumann = [(math.pi * (i // n_edges)) ** 2 for i in range(count)]
    dirichlet = [(math.pi * (i // n_edges + 1)) ** 2 for i in range(count)]
    return neumann, dirichlet


def interlacing_violations(spec: SpectrumWindow, n_edges: int, k_max: int, tol: float = 1e-9) -> list[int]:
    """1-based indices k <= k_max where alpha_k <= lambda_k <= omega_k fails."""
    vals = spec.expanded()
    if len(vals) < k_max:
        raise WindowTooSmall(f"window holds {len(vals)} eigenvalues, k_max={k_max} requested")
    alpha, omega = decoupled_bounds(n_edges, k_max)
    return [k + 1 for k in range(k_max) if not (alpha[k] - tol <= vals[k] <= omega[k] + tol)]


def shifted_comparison(g: Graph, k_max: int, tol: float = 1e-9) -> list[int]:
    """Indices k where lambda_k^CK >= lambda_{k+N-n}^KC fails on a bipartite graph.

    Violations are reported and logged, never raised.
    """
    info = analyze(g)
    if not info.bipartite:
        return []
    shift = g.N - g.n
    need = k_max + max(shift, 0)
    lam_max = ((need // max(g.N, 1)) + 2) ** 2 * math.pi ** 2
    ck = ck_spectrum(g, lam_max).expanded()
    kc = kc_spectrum(g, lam_max).expanded()
    bad = []
    for k in range(1, k_max + 1):
        j = k + shift
        if j < 1 or j > len(kc) or k > len(ck):
            continue
        if ck[k - 1] < kc[j - 1] - tol:
            bad.append(k)
    if bad:
        log.warning(f"[shifted-comparison] {fmt('violations', len(bad))} {fmt('first', bad[0])}")
    return bad
