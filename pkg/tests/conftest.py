from __future__ import annotations

import pytest

from qg_spectra.graph_core import Graph, disjoint_union, from_edge_list, generate


def _fixtures() -> dict[str, Graph]:
    return {
        "P2": generate("path", 2),
        "P3": generate("path", 3),
        "P5": generate("path", 5),
        "K13": generate("star", 3),
        "C3": generate("circuit", 3),
        "C4": generate("circuit", 4),
        "C5": generate("circuit", 5),
        "C8": generate("circuit", 8),
        "K4": generate("complete", 4),
        "K5": generate("complete", 5),
        "petersen": generate("petersen"),
        "cube": generate("cube_q3"),
        "BG1": generate("butler_grout_1"),
        "BG2": generate("butler_grout_2"),
        # triangle with a pendant edge: unicyclic, not bipartite
        "paw": from_edge_list(4, [(0, 1), (1, 2), (2, 0), (2, 3)]),
        "C3+C4": disjoint_union(generate("circuit", 3), generate("circuit", 4)),
        "C4+K4": disjoint_union(generate("circuit", 4), generate("complete", 4)),
    }


FIXTURES = _fixtures()


@pytest.fixture(autouse=True)
def _no_env_tolerance(monkeypatch):
    monkeypatch.delenv("QG_SPECTRA_TOL", raising=False)


@pytest.fixture
def graphs() -> dict[str, Graph]:
    return dict(FIXTURES)


@pytest.fixture
def connected_graphs() -> dict[str, Graph]:
    return {k: v for k, v in FIXTURES.items() if "+" not in k}
