"""JSON documents and CSV tables exchanged by the command line front end.

Floats are rounded to a fixed number of significant digits before emission
so identical inputs give byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .bc import BoundaryCondition, SecularScan, Subspace
from .ck_kc_spectra import CKKCComparison, Condition, EigenClass, EigenvalueEntry, SpectrumWindow
from .errors import GraphFormatError
from .graph_core import Graph, from_edge_list
from .inverse_spectral import NonRecoverabilityReport, PairSummary, RecoveredInvariants, RegularRecovery
from .spectral_matrices import RealSpectrum

FLOAT_DIGITS = 15


def round_sig(x: float, digits: int = FLOAT_DIGITS) -> float:
    if not math.isfinite(x):
        return float(x)
    if x == 0:
        # -0.0 would print differently from 0.0
        return 0.0
    return float(f"{x:.{digits}g}")


class _Doc(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, by_alias=True) + "\n"


# ---------- graphs ----------

class GraphDocument(_Doc):
    n: int
    edges: list[tuple[int, int]]

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphDocument":
        return cls(n=g.n, edges=[tuple(e) for e in g.edges])

    def to_graph(self) -> Graph:
        return from_edge_list(self.n, self.edges)


def graph_to_json(g: Graph) -> str:
    return GraphDocument.from_graph(g).to_json()


def graph_from_json(text: str) -> Graph:
    try:
        doc = GraphDocument.model_validate(_loads(text, "graph"))
    except ValidationError as exc:
        raise GraphFormatError(f"invalid graph document: {exc.error_count()} error(s)") from exc
    return doc.to_graph()


# ---------- spectra ----------

class EntryDocument(_Doc):
    lam: float = Field(alias="lambda")
    multiplicity: int
    klass: EigenClass = Field(alias="class")
    source_mu: float | None = None


class SpectrumDocument(_Doc):
    condition: Condition
    lambda_max: float
    entries: list[EntryDocument]

    @classmethod
    def from_window(cls, w: SpectrumWindow, digits: int = FLOAT_DIGITS) -> "SpectrumDocument":
        return cls(
            condition=w.condition,
            lambda_max=round_sig(w.lambda_max, digits),
            entries=[
                EntryDocument(
                    lam=round_sig(e.lam, digits),
                    multiplicity=e.multiplicity,
                    klass=e.klass,
                    source_mu=None if e.source_mu is None else round_sig(e.source_mu, digits),
                )
                for e in w.entries
            ],
        )

    def to_window(self) -> SpectrumWindow:
        entries = tuple(
            EigenvalueEntry(e.lam, math.sqrt(max(e.lam, 0.0)), e.multiplicity, e.klass, e.source_mu)
            for e in sorted(self.entries, key=lambda d: d.lam)
        )
        return SpectrumWindow(self.condition, self.lambda_max, entries)


class ValueDocument(_Doc):
    value: float
    multiplicity: int


class RealSpectrumDocument(_Doc):
    kind: str
    values: list[ValueDocument]

    @classmethod
    def from_spectrum(cls, kind: str, spec: RealSpectrum, digits: int = FLOAT_DIGITS) -> "RealSpectrumDocument":
        return cls(kind=kind, values=[ValueDocument(value=round_sig(v, digits), multiplicity=m) for v, m in spec.values])


def spectrum_from_json(text: str) -> SpectrumWindow:
    try:
        return SpectrumDocument.model_validate(_loads(text, "spectrum")).to_window()
    except ValidationError as exc:
        raise GraphFormatError(f"invalid spectrum document: {exc.error_count()} error(s)") from exc


# ---------- matrices ----------

class MatrixDocument(_Doc):
    kind: str
    rows: int
    cols: int
    data: list[list[float]]
    nullity: int | None = None

    @classmethod
    def from_array(cls, kind: str, m: np.ndarray, digits: int = FLOAT_DIGITS) -> "MatrixDocument":
        return cls(
            kind=kind,
            rows=int(m.shape[0]),
            cols=int(m.shape[1]) if m.ndim > 1 else 1,
            data=[[round_sig(float(x), digits) for x in row] for row in np.atleast_2d(m)],
        )


# ---------- general boundary conditions ----------

ComplexPair = tuple[float, float]


def _to_complex(rows: Sequence[Sequence[ComplexPair]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


class SubspaceDocument(_Doc):
    """Spanning vectors of Y as [re, im] pairs, plus an optional Hermitian coupling R."""

    vectors: list[list[ComplexPair]]
    ambient_dim: int | None = None
    coupling: list[list[ComplexPair]] | None = None

    @classmethod
    def from_subspace(cls, y: Subspace, digits: int = FLOAT_DIGITS) -> "SubspaceDocument":
        vecs = [[(round_sig(z.real, digits), round_sig(z.imag, digits)) for z in v] for v in y.to_vectors()]
        return cls(vectors=vecs, ambient_dim=y.ambient_dim)

    def to_boundary_condition(self) -> BoundaryCondition:
        dims = {len(v) for v in self.vectors}
        if self.ambient_dim is not None:
            dims.add(self.ambient_dim)
        if len(dims) != 1:
            raise GraphFormatError(f"subspace vectors disagree on the ambient dimension: {sorted(dims)}")
        dim = dims.pop()
        y = Subspace.span(_to_complex(self.vectors) if self.vectors else np.zeros((0, dim)), dim)
        r = None if self.coupling is None else _to_complex(self.coupling)
        return BoundaryCondition(y, r)


def boundary_condition_from_json(text: str) -> BoundaryCondition:
    try:
        return SubspaceDocument.model_validate(_loads(text, "subspace")).to_boundary_condition()
    except ValidationError as exc:
        raise GraphFormatError(f"invalid subspace document: {exc.error_count()} error(s)") from exc


class RootDocument(_Doc):
    lam: float = Field(alias="lambda")
    multiplicity: int


class ScanDocument(_Doc):
    roots: list[RootDocument]
    regime_guaranteed: bool

    @classmethod
    def from_scan(cls, scan: SecularScan, digits: int = FLOAT_DIGITS) -> "ScanDocument":
        return cls(
            roots=[RootDocument(lam=round_sig(lam, digits), multiplicity=m) for lam, m in scan.roots],
            regime_guaranteed=scan.regime_guaranteed,
        )

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, int]], regime_guaranteed: bool = True,
                   digits: int = FLOAT_DIGITS) -> "ScanDocument":
        return cls(
            roots=[RootDocument(lam=round_sig(lam, digits), multiplicity=m) for lam, m in pairs],
            regime_guaranteed=regime_guaranteed,
        )


# ---------- recovery and comparison ----------

class RecoveredDocument(_Doc):
    source_condition: Condition
    n: int
    N: int
    c: int
    c_plus: int
    c_minus: int

    @classmethod
    def from_invariants(cls, inv: RecoveredInvariants) -> "RecoveredDocument":
        return cls(
            source_condition=inv.source_condition,
            n=inv.n, N=inv.N, c=inv.c, c_plus=inv.c_plus, c_minus=inv.c_minus,
        )


class ComparisonDocument(_Doc):
    lambda_max: float
    full_equal: bool
    immanent_equal: bool
    unicyclic_bipartite: bool
    bipartite: bool
    consistent: bool

    @classmethod
    def from_comparison(cls, cmp: CKKCComparison, digits: int = FLOAT_DIGITS) -> "ComparisonDocument":
        return cls(
            lambda_max=round_sig(cmp.lambda_max, digits),
            full_equal=cmp.full_equal,
            immanent_equal=cmp.immanent_equal,
            unicyclic_bipartite=cmp.unicyclic_bipartite,
            bipartite=cmp.bipartite,
            consistent=cmp.consistent,
        )


class IsospectralDocument(_Doc):
    condition: Condition
    lambda_max: float
    isospectral: bool


class PairDocument(_Doc):
    name: str
    n: int
    N: int
    degree_sequence: list[int]
    complexity: int
    transition_spectrum: list[ValueDocument]
    adjacency_spectrum: list[ValueDocument]

    @classmethod
    def from_summary(cls, s: PairSummary, digits: int = FLOAT_DIGITS) -> "PairDocument":
        def values(pairs: Sequence[tuple[float, int]]) -> list[ValueDocument]:
            return [ValueDocument(value=round_sig(v, digits), multiplicity=m) for v, m in pairs]

        return cls(
            name=s.name, n=s.n, N=s.N,
            degree_sequence=list(s.degree_sequence),
            complexity=s.complexity,
            transition_spectrum=values(s.transition_spectrum),
            adjacency_spectrum=values(s.adjacency_spectrum),
        )


class RegularDocument(_Doc):
    name: str
    recovered: RecoveredDocument
    degree: int
    complexity: int

    @classmethod
    def from_recovery(cls, name: str, rr: RegularRecovery) -> "RegularDocument":
        return cls(
            name=name,
            recovered=RecoveredDocument.from_invariants(rr.invariants),
            degree=rr.degree,
            complexity=rr.complexity,
        )


class NonRecoverabilityDocument(_Doc):
    first: PairDocument
    second: PairDocument
    isospectral_ck: bool
    isospectral_kc: bool
    recovered: list[RecoveredDocument]
    degree_sequences_differ: bool
    complexities_differ: bool
    star_circuit: list[PairDocument]
    star_circuit_transition_isospectral: bool
    star_circuit_isospectral_ck: bool
    star_circuit_isospectral_kc: bool
    regular_examples: list[RegularDocument]
    regular_misread: RegularDocument | None = None

    @classmethod
    def from_report(cls, r: NonRecoverabilityReport, digits: int = FLOAT_DIGITS) -> "NonRecoverabilityDocument":
        return cls(
            first=PairDocument.from_summary(r.first, digits),
            second=PairDocument.from_summary(r.second, digits),
            isospectral_ck=r.isospectral_ck,
            isospectral_kc=r.isospectral_kc,
            recovered=[RecoveredDocument.from_invariants(x) for x in r.recovered],
            degree_sequences_differ=r.degree_sequences_differ,
            complexities_differ=r.complexities_differ,
            star_circuit=[PairDocument.from_summary(s, digits) for s in r.star_circuit],
            star_circuit_transition_isospectral=r.star_circuit_transition_isospectral,
            star_circuit_isospectral_ck=r.star_circuit_isospectral_ck,
            star_circuit_isospectral_kc=r.star_circuit_isospectral_kc,
            regular_examples=[RegularDocument.from_recovery(name, rr) for name, rr in r.regular_examples],
            regular_misread=(
                RegularDocument.from_recovery(r.second.name, r.regular_misread) if r.regular_misread else None
            ),
        )


# ---------- CSV ----------

def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if x is None else x for x in row])
    return buf.getvalue()


def spectrum_csv(w: SpectrumWindow, digits: int = FLOAT_DIGITS) -> str:
    return _csv(
        ("lambda", "multiplicity", "class"),
        ((round_sig(e.lam, digits), e.multiplicity, e.klass.value) for e in w.entries),
    )


def plotdata(w: SpectrumWindow, digits: int = FLOAT_DIGITS) -> str:
    """Rows (lambda, cos sqrt(lambda), condition, multiplicity) for drawing eigenvalues against sigma(Z)."""
    return _csv(
        ("lambda", "cos_sqrt_lambda", "condition", "multiplicity"),
        (
            (round_sig(e.lam, digits), round_sig(math.cos(e.sqrt_lambda), digits), w.condition.value, e.multiplicity)
            for e in w.entries
        ),
    )


def roots_csv(pairs: Iterable[tuple[float, int]], digits: int = FLOAT_DIGITS) -> str:
    return _csv(("lambda", "multiplicity"), ((round_sig(lam, digits), m) for lam, m in pairs))


def real_spectrum_csv(spec: RealSpectrum, digits: int = FLOAT_DIGITS) -> str:
    return _csv(("value", "multiplicity"), ((round_sig(v, digits), m) for v, m in spec.values))


def matrix_csv(m: np.ndarray, digits: int = FLOAT_DIGITS) -> str:
    m = np.atleast_2d(m)
    return _csv([f"c{j}" for j in range(m.shape[1])], ([round_sig(float(x), digits) for x in row] for row in m))


def edges_csv(g: Graph) -> str:
    return _csv(("tail", "head"), g.edges)


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{what} input is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
