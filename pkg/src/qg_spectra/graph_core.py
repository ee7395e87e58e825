"""Combinatorial graph model, structural invariants, generators and text I/O.

Each edge is an oriented pair (tail, head) identified with the interval
[0, 1], tail at 0 and head at 1. Graphs are simple: no self-loops and at
most one edge per unordered vertex pair.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    ContractionViolatesSimplicity,
    Disconnected,
    DuplicateEdge,
    GraphFormatError,
    InvalidSize,
    SelfLoop,
    VertexOutOfRange,
)
from .logger_factory import get_logger
from .utils.logfmt import fmt

log = get_logger("graph_core")

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        _validate(self.n, self.edges)

    @property
    def N(self) -> int:  # noqa: N802
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for t, h in self.edges:
            deg[t] += 1
            deg[h] += 1
        return deg

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class ComponentInfo:
    c: int
    c_plus: int
    c_minus: int
    component_id: tuple[int, ...]
    corank: int

    @property
    def connected(self) -> bool:
        return self.c == 1

    @property
    def bipartite(self) -> bool:
        return self.c_minus == 0

    @property
    def forest(self) -> bool:
        return self.corank == 0

    @property
    def unicyclic(self) -> bool:
        return self.c == 1 and self.corank == 1


class GraphKind(str, Enum):
    PATH = "path"
    CIRCUIT = "circuit"
    STAR = "star"
    COMPLETE = "complete"
    PETERSEN = "petersen"
    CUBE_Q3 = "cube_q3"
    BUTLER_GROUT_1 = "butler_grout_1"
    BUTLER_GROUT_2 = "butler_grout_2"

    @classmethod
    def parse(cls, value: str | "GraphKind") -> "GraphKind":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower()
        if v == "cycle":
            v = "circuit"
        try:
            return cls(v)
        except ValueError as exc:
            raise InvalidSize(f"unknown graph kind {value!r}") from exc


def _validate(n: int, edges: Sequence[Edge]) -> None:
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"vertex count must be an integer >= 1, got {n!r}")
    seen: dict[frozenset[int], int] = {}
    for idx, (t, h) in enumerate(edges):
        if not (0 <= t < n and 0 <= h < n):
            raise VertexOutOfRange(f"edge {idx} ({t}, {h}) has a vertex outside [0, {n})")
        if t == h:
            raise SelfLoop(f"edge {idx} ({t}, {h}) is a self-loop")
        key = frozenset((t, h))
        if key in seen:
            raise DuplicateEdge(f"edge {idx} ({t}, {h}) duplicates edge {seen[key]}")
        seen[key] = idx


# ---------- construction ----------

def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    """Build a graph; the orientation of every pair is kept as given."""
    try:
        edges = tuple((int(p[0]), int(p[1])) for p in pairs)
    except (TypeError, ValueError, IndexError) as exc:
        raise GraphFormatError(f"edges must be integer pairs: {exc}") from exc
    return Graph(n=int(n), edges=edges)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """g1 keeps its numbering; g2's vertices are shifted by g1.n."""
    shifted = tuple((t + g1.n, h + g1.n) for t, h in g2.edges)
    return Graph(n=g1.n + g2.n, edges=g1.edges + shifted)


def _path(k: int) -> Graph:
    if k < 1:
        raise InvalidSize(f"path needs at least 1 vertex, got {k}")
    return Graph(n=k, edges=tuple((i, i + 1) for i in range(k - 1)))


def _circuit(k: int) -> Graph:
    if k < 3:
        raise InvalidSize(f"circuit needs at least 3 vertices, got {k}")
    return Graph(n=k, edges=tuple((i, (i + 1) % k) for i in range(k)))


def _star(k: int) -> Graph:
    if k < 1:
        raise InvalidSize(f"star needs at least 1 edge, got {k}")
    return Graph(n=k + 1, edges=tuple((0, i) for i in range(1, k + 1)))


def _complete(k: int) -> Graph:
    if k < 2:
        raise InvalidSize(f"complete graph needs at least 2 vertices, got {k}")
    return Graph(n=k, edges=tuple((i, j) for i in range(k) for j in range(i + 1, k)))


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(n=10, edges=tuple(outer + spokes + inner))


def _cube_q3() -> Graph:
    edges = [(v, v ^ (1 << b)) for v in range(8) for b in range(3) if v < v ^ (1 << b)]
    return Graph(n=8, edges=tuple(edges))


def _butler_grout_2() -> Graph:
    square = [(0, 1), (1, 2), (2, 3), (3, 0)]
    tails = [(0, 4), (4, 5), (0, 6), (6, 7)]
    return Graph(n=8, edges=tuple(square + tails))


def generate(kind: str | GraphKind, size: int | None = None) -> Graph:
    """Fixture generators with canonical numbering.

    - path k: vertices 0..k-1, edges (i, i+1).
    - circuit k: edges (i, i+1 mod k).
    - star k: center 0, leaves 1..k, edges (0, i).
    - complete k: edges (i, j) for i < j.
    - petersen: outer 0..4 circuit, spokes (i, i+5), inner pentagram (5+i, 5+(i+2) mod 5).
    - cube_q3: vertices 0..7, edges between labels differing in one bit.
    - butler_grout_1: circuit of length 8.
    - butler_grout_2: circuit 0-1-2-3-0 with paths 0-4-5 and 0-6-7 attached at 0.
    """
    k = GraphKind.parse(kind)
    if k in (GraphKind.PATH, GraphKind.CIRCUIT, GraphKind.STAR, GraphKind.COMPLETE):
        if size is None:
            raise InvalidSize(f"{k.value} requires a size")
        size = int(size)
    if k is GraphKind.PATH:
        g = _path(size)
    elif k is GraphKind.CIRCUIT:
        g = _circuit(size)
    elif k is GraphKind.STAR:
        g = _star(size)
    elif k is GraphKind.COMPLETE:
        g = _complete(size)
    elif k is GraphKind.PETERSEN:
        g = _petersen()
    elif k is GraphKind.CUBE_Q3:
        g = _cube_q3()
    elif k is GraphKind.BUTLER_GROUT_1:
        g = _circuit(8)
    else:
        g = _butler_grout_2()
    log.debug(f"[generate] {fmt('kind', k.value)} {fmt('n', g.n)} {fmt('N', g.N)}")
    return g


# ---------- invariants ----------

def analyze(g: Graph) -> ComponentInfo:
    ng = g.to_networkx()
    comps = sorted((sorted(c) for c in nx.connected_components(ng)), key=lambda c: c[0])
    component_id = [0] * g.n
    c_plus = 0
    for idx, comp in enumerate(comps):
        for v in comp:
            component_id[v] = idx
        if nx.is_bipartite(ng.subgraph(comp)):
            c_plus += 1
    c = len(comps)
    return ComponentInfo(
        c=c,
        c_plus=c_plus,
        c_minus=c - c_plus,
        component_id=tuple(component_id),
        corank=g.N - g.n + c,
    )


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees(), reverse=True)


def diameter(g: Graph) -> int:
    ng = g.to_networkx()
    if not nx.is_connected(ng):
        raise Disconnected("diameter is defined for connected graphs only")
    return int(nx.diameter(ng)) if g.n > 1 else 0


def contract_vertices(g: Graph, v: int, w: int) -> Graph:
    """Identify w with v; vertices above w shift down by one.

    N is unchanged; the contraction must not produce a loop or parallel edge.
    """
    for x in (v, w):
        if not 0 <= x < g.n:
            raise VertexOutOfRange(f"vertex {x} outside [0, {g.n})")
    if v == w:
        raise ContractionViolatesSimplicity(f"cannot contract vertex {v} with itself")

    def relabel(x: int) -> int:
        if x == w:
            x = v
        return x - 1 if x > w else x

    edges = []
    seen: dict[frozenset[int], int] = {}
    for idx, (t, h) in enumerate(g.edges):
        nt, nh = relabel(t), relabel(h)
        if nt == nh:
            raise ContractionViolatesSimplicity(f"edge {idx} ({t}, {h}) would become a self-loop")
        key = frozenset((nt, nh))
        if key in seen:
            raise ContractionViolatesSimplicity(
                f"edges {seen[key]} and {idx} would become parallel after contracting {v} and {w}"
            )
        seen[key] = idx
        edges.append((nt, nh))
    return Graph(n=g.n - 1, edges=tuple(edges))


def _bareiss_determinant(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    a = [row[:] for row in m]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                # exact by Sylvester's identity
                a[i][j] = num // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[size - 1][size - 1]


def spanning_tree_count(g: Graph) -> int:
    """Complexity kappa(G): any cofactor of L = D - A (matrix-tree theorem)."""
    if analyze(g).c != 1:
        raise Disconnected("spanning trees are counted on connected graphs only")
    deg = g.degrees()
    lap = [[0] * g.n for _ in range(g.n)]
    for i in range(g.n):
        lap[i][i] = deg[i]
    for t, h in g.edges:
        lap[t][h] -= 1
        lap[h][t] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_determinant(minor)


# ---------- text format ----------

def parse_edge_list(text: str) -> Graph:
    """First line "n N", then N lines "tail head" (0-based). Blank lines and # comments are skipped."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge-list input")
    try:
        head = lines[0].split()
        n, count = int(head[0]), int(head[1])
        pairs = [tuple(int(x) for x in ln.split()[:2]) for ln in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise GraphFormatError(f"malformed edge list: {exc}") from exc
    if len(pairs) != count or any(len(p) != 2 for p in pairs):
        raise GraphFormatError(f"header announces {count} edges, found {len(pairs)}")
    return from_edge_list(n, pairs)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.N}"]
    out.extend(f"{t} {h}" for t, h in g.edges)
    return "\n".join(out) + "\n"
