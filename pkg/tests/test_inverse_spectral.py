from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest

from conftest import FIXTURES
from qg_spectra.ck_kc_spectra import ck_spectrum, kc_spectrum, spectrum
from qg_spectra.errors import InconsistentSpectrum, WindowMismatch, WindowTooSmall
from qg_spectra.graph_core import analyze, from_edge_list, generate, spanning_tree_count
from qg_spectra.inverse_spectral import (
    REPORT_WINDOW,
    collate_window,
    components_match,
    isospectral,
    non_recoverability_report,
    recover,
    recover_regular,
    transition_spectrum_from_window,
    window_from_pairs,
)
from qg_spectra.spectral_matrices import spectrum_of_transition

PI_SQ = math.pi ** 2
WINDOW = 4 * PI_SQ + 1


# ---------- recovery ----------

@pytest.mark.parametrize("name", sorted(FIXTURES))
@pytest.mark.parametrize("condition", ["ck", "kc"])
def test_recover_round_trip(name, condition):
    g = FIXTURES[name]
    inv = recover(spectrum(g, condition, WINDOW))
    info = analyze(g)
    assert inv.as_tuple() == (g.n, g.N, info.c, info.c_plus, info.c_minus)
    assert components_match(g, inv)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_recover_agrees_for_both_conditions(name):
    g = FIXTURES[name]
    assert recover(ck_spectrum(g, WINDOW)).as_tuple() == recover(kc_spectrum(g, WINDOW)).as_tuple()


def test_recover_examples():
    assert recover(ck_spectrum(generate("complete", 4), WINDOW)).as_tuple() == (4, 6, 1, 0, 1)
    assert recover(kc_spectrum(generate("circuit", 8), WINDOW)).as_tuple() == (8, 8, 1, 1, 0)
    assert recover(kc_spectrum(generate("circuit", 3), WINDOW)).as_tuple() == (3, 3, 1, 0, 1)


def test_recover_accepts_window_ending_at_four_pi_squared():
    inv = recover(ck_spectrum(generate("circuit", 5), 4 * PI_SQ))
    assert inv.n == 5


def test_recover_window_too_small():
    with pytest.raises(WindowTooSmall):
        recover(ck_spectrum(generate("circuit", 5), 30.0))


def test_recover_inconsistent_input():
    # m(4 pi^2) - m(pi^2) odd under CK
    w = window_from_pairs([(0.0, 1), (PI_SQ, 2), (4 * PI_SQ, 1)], "ck", WINDOW)
    with pytest.raises(InconsistentSpectrum):
        recover(w)
    # c+ = c - c- < 0
    w = window_from_pairs([(0.0, 1), (4 * PI_SQ, 4)], "ck", WINDOW)
    with pytest.raises(InconsistentSpectrum):
        recover(w)


# ---------- external data ----------

def test_collate_window_from_raw_values():
    g = generate("complete", 4)
    w = ck_spectrum(g, WINDOW)
    rebuilt = collate_window(w.expanded(), "ck", WINDOW)
    assert isospectral(w, rebuilt)
    assert recover(rebuilt).as_tuple() == (4, 6, 1, 0, 1)


def test_window_from_pairs_merges_duplicates():
    w = window_from_pairs([(PI_SQ, 1), (PI_SQ + 1e-12, 2), (0.0, 0)], "kc", 10.0)
    assert [(e.lam, e.multiplicity) for e in w.entries] == [(pytest.approx(PI_SQ), 3)]


@pytest.mark.parametrize("name", ["C3", "C4", "K4", "petersen", "BG2", "paw", "C3+C4"])
@pytest.mark.parametrize("condition", ["ck", "kc"])
def test_transition_spectrum_from_window(name, condition):
    g = FIXTURES[name]
    got = transition_spectrum_from_window(spectrum(g, condition, WINDOW))
    expected = spectrum_of_transition(g).values
    assert len(got) == len(expected)
    for (mu, m), (emu, em) in zip(got, expected):
        assert m == em
        assert mu == pytest.approx(emu, abs=1e-9)


@pytest.mark.parametrize("kind, size, degree, kappa", [
    ("complete", 4, 3, 16),
    ("complete", 5, 4, 125),
    ("circuit", 8, 2, 8),
    ("petersen", None, 3, 2000),
    ("cube_q3", None, 3, 384),
])
def test_recover_regular(kind, size, degree, kappa):
    rr = recover_regular(kc_spectrum(generate(kind, size), WINDOW))
    assert rr.degree == degree
    assert rr.complexity == kappa


def test_recover_regular_rejects_disconnected():
    with pytest.raises(InconsistentSpectrum):
        recover_regular(ck_spectrum(FIXTURES["C3+C4"], WINDOW))


def test_recover_regular_cannot_see_irregularity():
    # same spectrum as the 8-circuit, so it reads as 2-regular with kappa 8
    g = generate("butler_grout_2")
    rr = recover_regular(ck_spectrum(g, WINDOW))
    assert (rr.degree, rr.complexity) == (2, 8)
    assert spanning_tree_count(g) == 4


# ---------- isospectrality ----------

@pytest.mark.parametrize("condition", ["ck", "kc"])
def test_butler_grout_pair_is_isospectral(condition):
    a = spectrum(generate("butler_grout_1"), condition, WINDOW)
    b = spectrum(generate("butler_grout_2"), condition, WINDOW)
    assert isospectral(a, b)
    assert recover(a).as_tuple() == recover(b).as_tuple() == (8, 8, 1, 1, 0)


@pytest.mark.parametrize("condition", ["ck", "kc"])
def test_star_and_circuit_are_not_isospectral(condition):
    a = spectrum(generate("circuit", 4), condition, WINDOW)
    b = spectrum(generate("star", 3), condition, WINDOW)
    assert not isospectral(a, b)


def test_isospectral_window_mismatch():
    g = generate("circuit", 4)
    with pytest.raises(WindowMismatch):
        isospectral(ck_spectrum(g, WINDOW), kc_spectrum(g, WINDOW))
    with pytest.raises(WindowMismatch):
        isospectral(ck_spectrum(g, WINDOW), ck_spectrum(g, WINDOW + 1))


def test_ck_isospectral_iff_kc_isospectral():
    names = sorted(k for k in FIXTURES if "+" not in k)
    for a, b in itertools.combinations(names, 2):
        ga, gb = FIXTURES[a], FIXTURES[b]
        same_ck = isospectral(ck_spectrum(ga, WINDOW), ck_spectrum(gb, WINDOW))
        same_kc = isospectral(kc_spectrum(ga, WINDOW), kc_spectrum(gb, WINDOW))
        assert same_ck == same_kc, (a, b)


UNICYCLIC = {
    "C3": generate("circuit", 3),
    "C4": generate("circuit", 4),
    "C5": generate("circuit", 5),
    "C8": generate("circuit", 8),
    "paw": from_edge_list(4, [(0, 1), (1, 2), (2, 0), (2, 3)]),
    "triangle_tail": from_edge_list(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
    "triangle_two_pendants": from_edge_list(5, [(0, 1), (1, 2), (2, 0), (2, 3), (2, 4)]),
    "triangle_split_pendants": from_edge_list(5, [(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]),
    "BG1": generate("butler_grout_1"),
    "BG2": generate("butler_grout_2"),
}


def test_unicyclic_non_bipartite_isospectral_pairs_are_isomorphic():
    windows = {k: ck_spectrum(g, WINDOW) for k, g in UNICYCLIC.items()}
    for a, b in itertools.combinations(sorted(UNICYCLIC), 2):
        ga, gb = UNICYCLIC[a].to_networkx(), UNICYCLIC[b].to_networkx()
        if nx.is_bipartite(ga) and nx.is_bipartite(gb):
            continue
        if isospectral(windows[a], windows[b]):
            assert nx.is_isomorphic(ga, gb), (a, b)


def test_bipartite_unicyclic_pair_is_isospectral_but_not_isomorphic():
    assert isospectral(ck_spectrum(UNICYCLIC["BG1"], WINDOW), ck_spectrum(UNICYCLIC["BG2"], WINDOW))
    assert not nx.is_isomorphic(UNICYCLIC["BG1"].to_networkx(), UNICYCLIC["BG2"].to_networkx())


# ---------- report ----------

def test_non_recoverability_report():
    report = non_recoverability_report()
    assert report.isospectral_ck and report.isospectral_kc
    assert (report.first.complexity, report.second.complexity) == (8, 4)
    assert report.degree_sequences_differ
    assert report.complexities_differ
    assert report.first.degree_sequence == (2,) * 8
    assert report.second.degree_sequence == (4, 2, 2, 2, 2, 2, 1, 1)
    assert [r.as_tuple() for r in report.recovered] == [(8, 8, 1, 1, 0)] * 2

    circuit, star = report.star_circuit
    assert report.star_circuit_transition_isospectral
    assert not report.star_circuit_isospectral_ck
    assert not report.star_circuit_isospectral_kc
    assert [m for _, m in circuit.transition_spectrum] == [1, 2, 1]
    assert circuit.adjacency_spectrum[0][0] == pytest.approx(-2.0)
    assert star.adjacency_spectrum[-1][0] == pytest.approx(math.sqrt(3.0))

    regular = dict(report.regular_examples)
    assert regular["complete_4"].complexity == 16
    assert regular["petersen"].complexity == 2000
    assert regular["cube_q3"].degree == 3

    misread = report.regular_misread
    assert (misread.degree, misread.complexity) == (2, 8)
    assert misread.complexity != report.second.complexity


def test_report_window_default():
    assert REPORT_WINDOW == pytest.approx(36 * PI_SQ)
