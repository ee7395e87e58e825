from __future__ import annotations

import math

import pytest

from conftest import FIXTURES
from qg_spectra.ck_kc_spectra import (
    FOUR_PI_SQ,
    Condition,
    EigenClass,
    ck_spectrum,
    classify,
    compare_ck_kc,
    contraction_monotonicity,
    decoupled_bounds,
    distinct_count_per_period,
    dual_partner,
    interlacing_violations,
    kc_spectrum,
    kernel_index,
    lowest_nontrivial,
    shifted_comparison,
    spectrum,
    weyl_ratio,
)
from qg_spectra.errors import Disconnected, EmptyGraph, WindowTooSmall
from qg_spectra.graph_core import analyze, from_edge_list, generate

PI = math.pi
PI_SQ = PI * PI
CONNECTED = {k: v for k, v in FIXTURES.items() if "+" not in k}


def _entries(window):
    return [(e.lam, e.multiplicity) for e in window.entries]


def _assert_entries(window, expected, tol=1e-9):
    got = _entries(window)
    assert len(got) == len(expected), got
    for (lam, m), (elam, em) in zip(got, expected):
        assert lam == pytest.approx(elam, abs=tol)
        assert m == em


# ---------- closed forms ----------

def test_ck_triangle():
    theta = 2 * PI / 3
    w = ck_spectrum(generate("circuit", 3), 4 * PI_SQ + 1)
    _assert_entries(w, [(0.0, 1), (theta ** 2, 2), ((2 * PI - theta) ** 2, 2), (4 * PI_SQ, 2)])
    assert w.entries[0].klass is EigenClass.ZERO
    assert w.entries[1].klass is EigenClass.IMMANENT
    assert w.entries[1].source_mu == pytest.approx(-0.5)
    assert w.entries[-1].klass is EigenClass.SINGULAR_COS_PLUS_ONE


def test_kc_triangle():
    w = kc_spectrum(generate("circuit", 3), 4 * PI_SQ + 1)
    _assert_entries(w, [((PI / 3) ** 2, 2), (PI_SQ, 2), ((5 * PI / 3) ** 2, 2)])
    assert w.entries[1].klass is EigenClass.SINGULAR_COS_MINUS_ONE


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_complete_graph_tables(n):
    g = generate("complete", n)
    lam_max = 9 * PI_SQ
    base = n * (n - 3) // 2
    ck = ck_spectrum(g, lam_max)
    kc = kc_spectrum(g, lam_max)

    theta_ck = math.acos(-1.0 / (n - 1))
    theta_kc = math.acos(1.0 / (n - 1))
    assert ck.multiplicity_at(0.0) == 1
    assert kc.multiplicity_at(0.0) == base
    for k in (1, 2, 3):
        lam = (k * PI) ** 2
        if k % 2 == 0:
            assert ck.multiplicity_at(lam) == base + 2
            assert kc.multiplicity_at(lam) == base
        else:
            assert ck.multiplicity_at(lam) == base
            assert kc.multiplicity_at(lam) == base + 2
    for theta, w in ((theta_ck, ck), (theta_kc, kc)):
        for s in (theta, 2 * PI - theta, 2 * PI + theta):
            if s * s <= lam_max:
                assert w.multiplicity_at(s * s) == n - 1
        for e in w.immanent():
            assert e.multiplicity == n - 1
    for e in ck.immanent():
        assert math.cos(e.sqrt_lambda) == pytest.approx(-1.0 / (n - 1))
    for e in kc.immanent():
        assert math.cos(e.sqrt_lambda) == pytest.approx(1.0 / (n - 1))


def test_window_edge_is_inclusive():
    w = ck_spectrum(generate("circuit", 4), 4 * PI_SQ)
    assert w.entries[-1].lam == pytest.approx(4 * PI_SQ)


def test_entries_are_sorted_and_positive():
    for g in FIXTURES.values():
        for w in (ck_spectrum(g, 20.0 * PI_SQ), kc_spectrum(g, 20.0 * PI_SQ)):
            lams = [e.lam for e in w.entries]
            assert lams == sorted(lams)
            assert all(e.multiplicity > 0 for e in w.entries)
            assert lams[-1] <= w.lambda_max + 1e-12


def test_spectrum_dispatch():
    g = generate("circuit", 5)
    assert _entries(spectrum(g, "kc", 50.0)) == _entries(kc_spectrum(g, 50.0))
    assert spectrum(g, Condition.CK, 50.0).condition is Condition.CK


def test_spectrum_errors():
    with pytest.raises(EmptyGraph):
        ck_spectrum(generate("path", 1), 10.0)
    with pytest.raises(WindowTooSmall):
        ck_spectrum(generate("path", 2), 0.0)


def test_single_edge():
    # Neumann interval: (k pi)^2, all simple
    w = ck_spectrum(generate("path", 2), 9 * PI_SQ)
    _assert_entries(w, [(0.0, 1), (PI_SQ, 1), (4 * PI_SQ, 1), (9 * PI_SQ, 1)])
    # Dirichlet interval
    w = kc_spectrum(generate("path", 2), 9 * PI_SQ)
    _assert_entries(w, [(PI_SQ, 1), (4 * PI_SQ, 1), (9 * PI_SQ, 1)])


# ---------- structural comparisons ----------

@pytest.mark.parametrize("name", sorted(CONNECTED))
def test_compare_ck_kc_equivalences(name):
    g = FIXTURES[name]
    info = analyze(g)
    cmp = compare_ck_kc(g, 9 * PI_SQ)
    assert cmp.consistent
    assert cmp.full_equal == (info.unicyclic and info.bipartite)
    assert cmp.immanent_equal == info.bipartite


def test_compare_requires_connected():
    with pytest.raises(Disconnected):
        compare_ck_kc(FIXTURES["C3+C4"], 50.0)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_kernel_index(name):
    g = FIXTURES[name]
    info = analyze(g)
    lam = 4 * PI_SQ
    m_ck = ck_spectrum(g, lam).multiplicity_at(0.0)
    m_kc = kc_spectrum(g, lam).multiplicity_at(0.0)
    assert m_kc - m_ck == g.N - g.n - info.c_minus == kernel_index(g)
    if info.forest:
        assert kernel_index(g) == -1


@pytest.mark.parametrize("name", ["C3", "K4"])
@pytest.mark.parametrize("condition", ["ck", "kc"])
def test_weyl_asymptotics(name, condition):
    g = FIXTURES[name]
    k = 500
    lam_max = ((k / g.N + 2) * PI) ** 2
    ratio = weyl_ratio(spectrum(g, condition, lam_max), k)
    assert ratio == pytest.approx(PI_SQ / g.N ** 2, rel=0.05)


def test_weyl_ratio_window_too_small():
    w = ck_spectrum(generate("circuit", 3), 10.0)
    with pytest.raises(WindowTooSmall):
        weyl_ratio(w, 100)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_interlacing_with_decoupled_intervals(name):
    g = FIXTURES[name]
    k_max = 50
    lam_max = ((k_max // g.N + 2) * PI) ** 2
    assert interlacing_violations(ck_spectrum(g, lam_max), g.N, k_max) == []


def test_decoupled_bounds():
    neumann, dirichlet = decoupled_bounds(2, 5)
    assert neumann == pytest.approx([0, 0, PI_SQ, PI_SQ, 4 * PI_SQ])
    assert dirichlet == pytest.approx([PI_SQ, PI_SQ, 4 * PI_SQ, 4 * PI_SQ, 9 * PI_SQ])


@pytest.mark.parametrize("name", ["P3", "C4", "C8", "cube", "BG2", "K13"])
def test_shifted_comparison_on_bipartite_graphs(name):
    assert shifted_comparison(FIXTURES[name], 30) == []


def test_shifted_comparison_skips_non_bipartite():
    assert shifted_comparison(generate("complete", 4), 30) == []


# ---------- lowest eigenvalue and contraction ----------

def test_lowest_nontrivial():
    assert lowest_nontrivial(generate("path", 2)) == pytest.approx(PI_SQ)
    assert lowest_nontrivial(generate("circuit", 4)) == pytest.approx(PI_SQ / 4)


CONTRACTIONS = [
    (generate("path", 4), 0, 3),
    (generate("path", 5), 0, 4),
    (generate("path", 5), 0, 3),
    (generate("path", 6), 0, 5),
    (generate("path", 6), 1, 4),
    (generate("path", 7), 0, 6),
    (generate("circuit", 6), 0, 3),
    (generate("circuit", 7), 0, 3),
    (generate("circuit", 8), 0, 4),
    # star with one leaf extended: 0-1, 0-2, 0-3, 3-4
    (from_edge_list(5, [(0, 1), (0, 2), (0, 3), (3, 4)]), 1, 4),
]


@pytest.mark.parametrize("g, v, w", CONTRACTIONS)
def test_contraction_raises_lowest_eigenvalue(g, v, w):
    report = contraction_monotonicity(g, v, w)
    assert report.holds
    assert report.lambda1_original <= report.lambda1_contracted + 1e-9
    assert report.contracted.N == g.N
    assert report.contracted.n == g.n - 1


def test_contraction_requires_connected():
    with pytest.raises(Disconnected):
        contraction_monotonicity(FIXTURES["C3+C4"], 0, 4)


# ---------- distance-transitive graphs ----------

@pytest.mark.parametrize("name, d", [("petersen", 2), ("K4", 1)])
@pytest.mark.parametrize("condition", ["ck", "kc"])
@pytest.mark.parametrize("k", [0, 1])
def test_distinct_count_per_period(name, d, condition, k):
    w = spectrum(FIXTURES[name], condition, (4 * PI) ** 2 + 1)
    assert distinct_count_per_period(w, k) == 2 * (d + 1)


def test_distinct_count_bipartite_collapse():
    # +-1 in sigma(Z) land on the singular points, so only 2d remain
    w = ck_spectrum(generate("circuit", 4), (4 * PI) ** 2)
    assert distinct_count_per_period(w, 0) == 4


def test_distinct_count_window_too_small():
    with pytest.raises(WindowTooSmall):
        distinct_count_per_period(ck_spectrum(generate("complete", 4), FOUR_PI_SQ), 1)


# ---------- classification and pairing ----------

def test_classify():
    assert classify(0.0, "ck").klass is EigenClass.ZERO
    assert classify(PI_SQ, "ck").klass is EigenClass.SINGULAR_COS_MINUS_ONE
    assert classify(4 * PI_SQ, "kc").klass is EigenClass.SINGULAR_COS_PLUS_ONE
    e = classify((PI / 3) ** 2, "kc")
    assert e.klass is EigenClass.IMMANENT
    assert e.source_mu == pytest.approx(-0.5)


@pytest.mark.parametrize("name", sorted(CONNECTED))
def test_ck_kc_pairing_below_pi_squared(name):
    g = FIXTURES[name]
    ck = ck_spectrum(g, PI_SQ)
    kc = kc_spectrum(g, PI_SQ)
    for e in ck.entries:
        partner = dual_partner(e)
        if partner is None:
            continue
        assert kc.multiplicity_at(partner, 1e-9) == e.multiplicity
