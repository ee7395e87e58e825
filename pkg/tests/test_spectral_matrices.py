from __future__ import annotations

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import FIXTURES
from qg_spectra.ck_kc_spectra import ck_spectrum, kc_spectrum
from qg_spectra.errors import EmptyGraph, IsolatedVertex
from qg_spectra.graph_core import analyze, from_edge_list, generate
from qg_spectra.spectral_matrices import (
    MatrixKind,
    cluster_eigenvalues,
    default_cluster_tol,
    endpoint_evaluation,
    hermitian_spectrum,
    incidence_parts,
    matrix,
    nullity,
    s1_projector,
    s2_matrix,
    signed_incidence,
    spectrum_of_transition,
    transition_matrix,
)

CONNECTED = {k: v for k, v in FIXTURES.items() if "+" not in k}


def _pairs_close(got, expected, tol=1e-10):
    assert len(got) == len(expected), (got, expected)
    for (v, m), (ev, em) in zip(got, expected):
        assert m == em
        assert v == pytest.approx(ev, abs=tol)


# ---------- matrices ----------

def test_signed_incidence_orientation():
    d = signed_incidence(from_edge_list(3, [(0, 1), (2, 1)]))
    assert_allclose(d, [[-1, 0], [1, 1], [0, -1]])
    dplus, dminus = incidence_parts(from_edge_list(3, [(0, 1), (2, 1)]))
    assert_allclose(dplus - dminus, d)
    assert (dplus >= 0).all() and (dminus >= 0).all()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_transition_matrix_is_row_stochastic(name):
    z = transition_matrix(FIXTURES[name])
    assert_allclose(z.sum(axis=1), np.ones(FIXTURES[name].n))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_laplacian_relations(name):
    g = FIXTURES[name]
    d = signed_incidence(g)
    u = np.abs(d)
    assert_allclose(d @ d.T, matrix(g, MatrixKind.COMBINATORIAL_LAPLACIAN))
    assert_allclose(u @ u.T, matrix(g, "signless_laplacian"))
    assert_allclose(matrix(g, "degree") - matrix(g, "adjacency"), matrix(g, "combinatorial_laplacian"))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_incidence_nullities(name):
    g = FIXTURES[name]
    info = analyze(g)
    assert nullity(signed_incidence(g)) == g.N - g.n + info.c
    assert nullity(np.abs(signed_incidence(g))) == g.N - g.n + info.c_plus


def test_nullity_of_empty_matrix():
    assert nullity(np.zeros((0, 0))) == 0
    assert nullity(np.zeros((3, 2))) == 2


def test_transition_needs_edges_and_degrees():
    with pytest.raises(EmptyGraph):
        spectrum_of_transition(generate("path", 1))
    with pytest.raises(IsolatedVertex):
        transition_matrix(from_edge_list(3, [(0, 1)]))


# ---------- spectra ----------

def test_cluster_eigenvalues_merges_close_values():
    assert cluster_eigenvalues([0.5, 0.0, 1e-12, 0.5 + 1e-11], 1e-9) == [
        (pytest.approx(5e-13), 2),
        (pytest.approx(0.5), 2),
    ]


def test_spectrum_of_transition_c4():
    spec = spectrum_of_transition(generate("circuit", 4))
    _pairs_close(spec.values, [(-1.0, 1), (0.0, 2), (1.0, 1)])
    assert spec.dimension == 4


def test_spectrum_of_transition_complete():
    for n in range(3, 7):
        spec = spectrum_of_transition(generate("complete", n))
        _pairs_close(spec.values, [(-1.0 / (n - 1), n - 1), (1.0, 1)])


def test_spectrum_of_transition_petersen():
    spec = spectrum_of_transition(generate("petersen"))
    _pairs_close(spec.values, [(-2.0 / 3.0, 4), (1.0 / 3.0, 5), (1.0, 1)])


@pytest.mark.parametrize("name", ["BG1", "BG2"])
def test_butler_grout_transition_spectrum(name):
    r = math.sqrt(2.0) / 2.0
    spec = spectrum_of_transition(FIXTURES[name])
    _pairs_close(spec.values, [(-1.0, 1), (-r, 2), (0.0, 2), (r, 2), (1.0, 1)])


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_endpoints_are_snapped(name):
    g = FIXTURES[name]
    info = analyze(g)
    spec = spectrum_of_transition(g)
    assert spec.multiplicity(1.0) == info.c
    assert spec.multiplicity(-1.0) == info.c_plus
    assert all(-1.0 <= v <= 1.0 for v in spec.distinct())
    assert spec.dimension == g.n


def test_star_and_circuit_share_transition_spectrum():
    a = spectrum_of_transition(generate("circuit", 4)).values
    b = spectrum_of_transition(generate("star", 3)).values
    _pairs_close(a, b)
    # the adjacency spectra differ
    ac = hermitian_spectrum(matrix(generate("circuit", 4), "adjacency"), 1e-9).values
    ast = hermitian_spectrum(matrix(generate("star", 3), "adjacency"), 1e-9).values
    _pairs_close(ac, [(-2.0, 1), (0.0, 2), (2.0, 1)])
    _pairs_close(ast, [(-math.sqrt(3.0), 1), (0.0, 2), (math.sqrt(3.0), 1)])


def test_normalized_laplacian_matches_transition():
    g = generate("petersen")
    lap = hermitian_spectrum(matrix(g, "normalized_laplacian"), 1e-9)
    z = spectrum_of_transition(g)
    _pairs_close(sorted((1.0 - v, m) for v, m in z.values), lap.values)


def test_default_cluster_tol_scales_with_n():
    assert default_cluster_tol(0) == pytest.approx(1e-9)
    assert default_cluster_tol(50) == pytest.approx(5e-8)


# ---------- endpoint matrices ----------

@pytest.mark.parametrize("name", sorted(CONNECTED))
def test_s2_and_s1(name):
    g = FIXTURES[name]
    s2 = s2_matrix(g)
    s1 = s1_projector(g)
    assert s2.shape == (2 * g.N, 2 * g.N)
    assert_allclose(s2, s2.T)
    assert_allclose(s1 @ s1, s1, atol=1e-10)
    assert_allclose(s1 @ s2, np.zeros_like(s2), atol=1e-10)
    assert nullity(s2) == 2 * g.N - g.n
    assert nullity(s1) == g.n


def test_s2_entries_mark_shared_vertices():
    # edge 0 = (0, 1), edge 1 = (1, 2); coordinates tail0, tail1, head0, head1
    s2 = s2_matrix(generate("path", 3))
    expected = np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 1, 0],
            [0, 1, 1, 0],
            [0, 0, 0, 1],
        ],
        dtype=float,
    )
    assert_allclose(s2, expected)


def test_endpoint_evaluation_is_tail_first():
    e = endpoint_evaluation(from_edge_list(2, [(1, 0)]))
    assert_allclose(e, [[0, 1], [1, 0]])


# ---------- orientation and bipartite symmetry ----------

def _reoriented(g, seed=None):
    """All edges reversed, or a seeded random subset when `seed` is given."""
    rng = np.random.default_rng(seed)
    flip = np.ones(g.N, dtype=bool) if seed is None else rng.random(g.N) < 0.5
    pairs = [(h, t) if f else (t, h) for (t, h), f in zip(g.edges, flip)]
    return from_edge_list(g.n, pairs), int(flip.sum())


def _same_window(a, b):
    assert len(a.entries) == len(b.entries)
    for x, y in zip(a.entries, b.entries):
        assert x.lam == pytest.approx(y.lam, abs=1e-12)
        assert (x.multiplicity, x.klass) == (y.multiplicity, y.klass)


@pytest.mark.parametrize("seed", [None, 3, 11])
@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_reorientation_keeps_spectra(name, seed):
    g = FIXTURES[name]
    h, flipped = _reoriented(g, seed)
    _pairs_close(spectrum_of_transition(h).values, spectrum_of_transition(g).values)
    assert_allclose(transition_matrix(h), transition_matrix(g))
    lam = 4 * math.pi ** 2 + 1
    _same_window(ck_spectrum(h, lam), ck_spectrum(g, lam))
    _same_window(kc_spectrum(h, lam), kc_spectrum(g, lam))
    if flipped:
        assert not np.array_equal(signed_incidence(h), signed_incidence(g))
    if seed is None:
        assert_allclose(signed_incidence(h), -signed_incidence(g))


BIPARTITE = ["P2", "P3", "P5", "K13", "C4", "C8", "cube", "BG1", "BG2"]


@pytest.mark.parametrize("name", BIPARTITE)
def test_bipartite_transition_spectrum_is_symmetric(name):
    g = FIXTURES[name]
    assert analyze(g).c_minus == 0
    spec = spectrum_of_transition(g)
    for v, m in spec.values:
        assert spec.multiplicity(-v, 1e-9) == m, (v, spec.values)


@pytest.mark.parametrize("name", ["C3", "C5", "K4", "petersen", "paw"])
def test_odd_cycles_break_the_symmetry(name):
    spec = spectrum_of_transition(FIXTURES[name])
    assert spec.multiplicity(-1.0, 1e-9) == 0
