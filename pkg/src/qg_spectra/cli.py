"""qg-spectra command line: graphs in, spectra and reports out.

Domain errors exit with status 1 and a one-line ``error: <Code>: <message>``
on stderr; usage errors exit with status 2.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import click
from dotenv import load_dotenv

from . import __version__
from .bc import BoundaryCondition, ck_subspace, kc_subspace, loop_spectrum, scan_eigenvalues
from .ck_kc_spectra import Condition, compare_ck_kc, spectrum
from .config_service import ConfigService
from .errors import QGSpectraError, WindowMismatch
from .graph_core import Graph, GraphKind, format_edge_list, generate, parse_edge_list
from .inverse_spectral import REPORT_WINDOW, isospectral, non_recoverability_report, recover, recover_regular
from .logger_factory import configure_logging, get_logger, set_log_levels
from .report_renderer import ReportRenderer
from .serialization import (
    ComparisonDocument,
    GraphDocument,
    IsospectralDocument,
    MatrixDocument,
    NonRecoverabilityDocument,
    RealSpectrumDocument,
    RecoveredDocument,
    RegularDocument,
    ScanDocument,
    SpectrumDocument,
    boundary_condition_from_json,
    edges_csv,
    graph_from_json,
    matrix_csv,
    plotdata,
    real_spectrum_csv,
    roots_csv,
    round_sig,
    spectrum_csv,
    spectrum_from_json,
)
from .spectral_matrices import (
    MatrixKind,
    default_cluster_tol,
    hermitian_spectrum,
    matrix,
    nullity,
    s1_projector,
    s2_matrix,
    spectrum_of_transition,
)
from .utils.logfmt import fmt

log = get_logger("cli")

FORMATS = ("json", "csv", "plot", "text")
MATRIX_CHOICES = [k.value for k in MatrixKind] + ["s2", "s1_projector"]
SYMMETRIC_KINDS = {"adjacency", "degree", "combinatorial_laplacian", "normalized_laplacian", "signless_laplacian", "s2", "s1_projector"}


class DomainFailure(click.ClickException):
    exit_code = 1

    def __init__(self, exc: QGSpectraError):
        super().__init__(str(exc))
        self.code = exc.code

    def show(self, file=None) -> None:
        click.echo(f"error: {self.code}: {self.message}", err=True, file=file)


class _Group(click.Group):
    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except QGSpectraError as exc:
            log.debug(f"[cli-error] {fmt('code', exc.code)} {fmt('message', str(exc))}")
            raise DomainFailure(exc) from exc


@dataclass
class Session:
    cfg: ConfigService
    renderer: ReportRenderer

    def digits(self) -> int:
        return self.cfg.float_digits()

    def out_format(self, requested: str | None, allowed: Sequence[str]) -> str:
        chosen = (requested or self.cfg.output_format()).lower()
        if chosen not in allowed:
            if requested is None:
                return "json"
            raise click.BadParameter(f"{chosen!r} is not available here; choose from {', '.join(allowed)}",
                                     param_hint="'--format'")
        return chosen


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise click.FileError(out, hint=str(exc)) from exc
    else:
        click.echo(text, nl=False)


def _read_text(path: str) -> str:
    if path == "-":
        return click.get_text_stream("stdin").read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise click.FileError(path, hint=str(exc)) from exc


def load_graph(path: str) -> Graph:
    """JSON graph document, or the plain "n N" edge-list text."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_edge_list(text)


def output_options(formats: Sequence[str]) -> Callable:
    def wrap(fn: Callable) -> Callable:
        fn = click.option("--format", "out_fmt", type=click.Choice(formats, case_sensitive=False), default=None,
                          help="Output format (default from config, else json).")(fn)
        fn = click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
                          help="Write to this file instead of stdout.")(fn)
        return fn
    return wrap


def _positive(ctx, param, value):
    if value is not None and value <= 0:
        raise click.BadParameter("must be positive")
    return value


@click.group(cls=_Group)
@click.version_option(__version__, prog_name="qg-spectra")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              envvar="QG_SPECTRA_CONFIG", help="YAML config (defaults apply when absent).")
@click.option("--log-level", type=click.Choice(["ERROR", "WARNING", "INFO", "DEBUG", "FULL"], case_sensitive=False),
              default=None, help="Override the configured log level (FULL adds per-dip scan details).")
@click.pass_context
def cli(ctx: click.Context, config_path: str | None, log_level: str | None) -> None:
    """Spectra of the Laplacian on equilateral metric graphs."""
    load_dotenv()
    if config_path is None and Path("config.yaml").exists():
        config_path = "config.yaml"
    cfg = ConfigService(config_path)
    configure_logging(
        level=cfg.log_level(),
        tz=cfg.timezone(),
        lib_log_level=cfg.lib_log_level(),
        console_to_file=cfg.log_console(),
        error_file=cfg.log_errors(),
    )
    if log_level:
        set_log_levels(log_level)
    ctx.obj = Session(cfg=cfg, renderer=ReportRenderer())


# ---------- gen ----------

@cli.command()
@click.option("--kind", required=True, type=click.Choice([k.value for k in GraphKind] + ["cycle"], case_sensitive=False))
@click.option("--size", type=int, default=None, help="Vertices (path, circuit, complete) or leaves (star).")
@output_options(("json", "csv", "text"))
@click.pass_obj
def gen(session: Session, kind: str, size: int | None, out: str | None, out_fmt: str | None) -> None:
    """Generate a fixture graph."""
    g = generate(kind, size)
    how = session.out_format(out_fmt, ("json", "csv", "text"))
    if how == "csv":
        text = edges_csv(g)
    elif how == "text":
        text = format_edge_list(g)
    else:
        text = GraphDocument.from_graph(g).to_json()
    _emit(text, out)


# ---------- matrices ----------

@cli.command()
@click.option("--graph", "graph_path", required=True, help="Graph file (JSON or edge list), '-' for stdin.")
@click.option("--kind", type=click.Choice(MATRIX_CHOICES, case_sensitive=False), default="transition", show_default=True)
@click.option("--spectrum", "want_spectrum", is_flag=True, help="Emit the eigenvalues instead of the entries.")
@output_options(("json", "csv"))
@click.pass_obj
def matrices(session: Session, graph_path: str, kind: str, want_spectrum: bool, out: str | None,
             out_fmt: str | None) -> None:
    """Graph matrices (adjacency, incidence, Laplacians, transition, S2, S1) and their spectra."""
    g = load_graph(graph_path)
    kind = kind.lower()
    digits = session.digits()
    how = session.out_format(out_fmt, ("json", "csv"))
    tol = default_cluster_tol(g.n, session.cfg.cluster_tol())

    if want_spectrum:
        if kind == "transition":
            spec = spectrum_of_transition(g, tol)
        elif kind in SYMMETRIC_KINDS:
            spec = hermitian_spectrum(_build_matrix(g, kind), tol)
        else:
            raise click.BadParameter(f"{kind} is not square and symmetric", param_hint="'--kind'")
        text = real_spectrum_csv(spec, digits) if how == "csv" else \
            RealSpectrumDocument.from_spectrum(kind, spec, digits).to_json()
        _emit(text, out)
        return

    m = _build_matrix(g, kind)
    if how == "csv":
        _emit(matrix_csv(m, digits), out)
        return
    doc = MatrixDocument.from_array(kind, m, digits)
    doc.nullity = nullity(m)
    _emit(doc.to_json(), out)


def _build_matrix(g: Graph, kind: str):
    if kind == "s2":
        return s2_matrix(g)
    if kind == "s1_projector":
        return s1_projector(g)
    return matrix(g, kind)


# ---------- spectrum ----------

@cli.command("spectrum")
@click.option("--graph", "graph_path", required=True, help="Graph file (JSON or edge list), '-' for stdin.")
@click.option("--condition", type=click.Choice(["ck", "kc"], case_sensitive=False), default="ck", show_default=True)
@click.option("--lambda-max", type=float, required=True, callback=_positive)
@output_options(FORMATS)
@click.pass_obj
def spectrum_cmd(session: Session, graph_path: str, condition: str, lambda_max: float, out: str | None,
                 out_fmt: str | None) -> None:
    """Closed-form CK or KC spectrum on [0, lambda_max]."""
    g = load_graph(graph_path)
    window = spectrum(
        g, condition, lambda_max,
        default_cluster_tol(g.n, session.cfg.cluster_tol()),
        edge_tol=session.cfg.window_edge_tol(),
    )
    digits = session.digits()
    how = session.out_format(out_fmt, FORMATS)
    if how == "csv":
        text = spectrum_csv(window, digits)
    elif how == "plot":
        text = plotdata(window, digits)
    elif how == "text":
        text = session.renderer.render("spectrum", SpectrumDocument.from_window(window, digits), graph=g)
    else:
        text = SpectrumDocument.from_window(window, digits).to_json()
    _emit(text, out)


# ---------- scan ----------

def _emit_roots(session: Session, doc: ScanDocument, pairs, out: str | None, out_fmt: str | None) -> None:
    how = session.out_format(out_fmt, ("json", "csv", "text"))
    if how == "csv":
        _emit(roots_csv(pairs, session.digits()), out)
    elif how == "text":
        _emit(session.renderer.render("scan", doc), out)
    else:
        _emit(doc.to_json(), out)


@cli.command()
@click.option("--graph", "graph_path", default=None, help="Graph whose CK or KC subspace is scanned.")
@click.option("--bc", "bc_kind", type=click.Choice(["ck", "kc"], case_sensitive=False), default="ck", show_default=True)
@click.option("--subspace", "subspace_path", default=None, help="Subspace JSON ({vectors, coupling?}) instead of a graph.")
@click.option("--lambda-max", type=float, required=True, callback=_positive)
@click.option("--grid-step", type=float, default=None, callback=_positive)
@click.option("--tol-root", type=float, default=None, callback=_positive)
@click.option("--tol-mult", type=float, default=None, callback=_positive)
@click.option("--threads", type=click.IntRange(min=1), default=None)
@output_options(("json", "csv", "text"))
@click.pass_obj
def scan(session: Session, graph_path: str | None, bc_kind: str, subspace_path: str | None, lambda_max: float,
         grid_step: float | None, tol_root: float | None, tol_mult: float | None, threads: int | None,
         out: str | None, out_fmt: str | None) -> None:
    """Eigenvalues of a general (Y, R) condition by singular-value scanning."""
    if (graph_path is None) == (subspace_path is None):
        raise click.UsageError("give exactly one of --graph or --subspace")
    if subspace_path is not None:
        bc = boundary_condition_from_json(_read_text(subspace_path))
    else:
        g = load_graph(graph_path)
        y = ck_subspace(g) if bc_kind.lower() == "ck" else kc_subspace(g)
        bc = BoundaryCondition(y)
    cfg = session.cfg
    result = scan_eigenvalues(
        bc,
        lambda_max,
        grid_step or cfg.grid_step(),
        tol_root or cfg.root_tol(),
        tol_mult or cfg.mult_tol(),
        detect_threshold=cfg.detect_threshold(),
        edge_tol=cfg.window_edge_tol(),
        threads=threads or cfg.threads(),
    )
    _emit_roots(session, ScanDocument.from_scan(result, session.digits()), result.roots, out, out_fmt)


# ---------- loop ----------

def _parse_alpha(ctx, param, value: str) -> complex:
    try:
        return complex(value.strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise click.BadParameter(f"{value!r} is not a complex number") from exc


@cli.command()
@click.option("--alpha", required=True, callback=_parse_alpha, help="Coupling parameter, e.g. 2, -1, i, 1+i.")
@click.option("--lambda-max", type=float, required=True, callback=_positive)
@output_options(("json", "csv", "text"))
@click.pass_obj
def loop(session: Session, alpha: complex, lambda_max: float, out: str | None, out_fmt: str | None) -> None:
    """Closed-form spectrum of one interval whose endpoints are coupled by f(0) = alpha f(1)."""
    pairs = loop_spectrum(alpha, lambda_max, edge_tol=session.cfg.window_edge_tol())
    _emit_roots(session, ScanDocument.from_pairs(pairs, True, session.digits()), pairs, out, out_fmt)


# ---------- recover ----------

@cli.command("recover")
@click.option("--in", "in_path", required=True, help="Spectrum JSON as written by `spectrum`, '-' for stdin.")
@click.option("--condition", type=click.Choice(["ck", "kc"], case_sensitive=False), default=None,
              help="Assert the document's condition.")
@click.option("--regular", is_flag=True,
              help="Also recover degree and complexity, assuming a connected regular graph. "
                   "The spectrum cannot tell whether the graph is regular.")
@output_options(("json", "text"))
@click.pass_obj
def recover_cmd(session: Session, in_path: str, condition: str | None, regular: bool, out: str | None,
                out_fmt: str | None) -> None:
    """Recover n, N, c, c+ and c- from a spectrum window."""
    window = spectrum_from_json(_read_text(in_path))
    if condition is not None and Condition.parse(condition) is not window.condition:
        raise WindowMismatch(f"document holds a {window.condition.value} spectrum, --condition is {condition.upper()}")
    tol = session.cfg.lookup_tol()
    how = session.out_format(out_fmt, ("json", "text"))
    if regular:
        rr = recover_regular(window, tol)
        doc = RegularDocument.from_recovery(Path(in_path).stem if in_path != "-" else "stdin", rr)
        _emit(session.renderer.render("regular", doc) if how == "text" else doc.to_json(), out)
        return
    doc = RecoveredDocument.from_invariants(recover(window, tol))
    _emit(session.renderer.render("recovered", doc) if how == "text" else doc.to_json(), out)


# ---------- compare ----------

@cli.command()
@click.option("--graph", "graph_paths", multiple=True, required=True,
              help="One graph: CK vs KC. Twice: isospectrality of the two graphs.")
@click.option("--condition", type=click.Choice(["ck", "kc"], case_sensitive=False), default="ck", show_default=True)
@click.option("--lambda-max", type=float, default=None, callback=_positive,
              help="Window end (default (6 pi)^2).")
@output_options(("json", "text"))
@click.pass_obj
def compare(session: Session, graph_paths: tuple[str, ...], condition: str, lambda_max: float | None,
            out: str | None, out_fmt: str | None) -> None:
    """CK vs KC for one graph, or isospectrality of two graphs."""
    if len(graph_paths) > 2:
        raise click.BadParameter("at most two graphs", param_hint="'--graph'")
    lam = lambda_max or REPORT_WINDOW
    how = session.out_format(out_fmt, ("json", "text"))
    tol = session.cfg.lookup_tol()
    digits = session.digits()
    if len(graph_paths) == 1:
        doc = ComparisonDocument.from_comparison(compare_ck_kc(load_graph(graph_paths[0]), lam, tol), digits)
        name = "compare"
    else:
        g1, g2 = (load_graph(p) for p in graph_paths)
        same = isospectral(spectrum(g1, condition, lam), spectrum(g2, condition, lam), tol)
        doc = IsospectralDocument(condition=Condition.parse(condition), lambda_max=round_sig(lam, digits),
                                  isospectral=same)
        name = "isospectral"
    _emit(session.renderer.render(name, doc) if how == "text" else doc.to_json(), out)


# ---------- report ----------

@cli.command()
@click.option("--lambda-max", type=float, default=None, callback=_positive, help="Window end (default (6 pi)^2).")
@output_options(("json", "text"))
@click.pass_obj
def report(session: Session, lambda_max: float | None, out: str | None, out_fmt: str | None) -> None:
    """Isospectral pairs with different complexity, and regular graphs where it is recovered."""
    doc = NonRecoverabilityDocument.from_report(non_recoverability_report(lambda_max or REPORT_WINDOW),
                                                session.digits())
    how = session.out_format(out_fmt, ("json", "text"))
    _emit(session.renderer.render("report", doc) if how == "text" else doc.to_json(), out)


# ---------- entry points ----------

def run(argv: Sequence[str] | None = None) -> int:
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="qg-spectra", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run())
