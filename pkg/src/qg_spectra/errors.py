from __future__ import annotations


class QGSpectraError(Exception):
    """Base class for every domain error raised by the library.

    ``code`` is the error-case name printed by the command line front end.
    """

    @property
    def code(self) -> str:
        return type(self).__name__


# ---------- graph shape ----------

class GraphError(QGSpectraError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class InvalidSize(GraphError):
    pass


class ContractionViolatesSimplicity(GraphError):
    pass


class Disconnected(GraphError):
    pass


class IsolatedVertex(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class GraphFormatError(GraphError):
    """Unparseable graph, subspace or spectrum input."""


# ---------- spectra ----------

class WindowTooSmall(QGSpectraError):
    pass


class WindowMismatch(QGSpectraError):
    pass


class InconsistentSpectrum(QGSpectraError):
    pass


# ---------- boundary conditions ----------

class NonPositiveLambda(QGSpectraError, ValueError):
    pass


class NonHermitianR(QGSpectraError, ValueError):
    pass


class GridTooCoarse(QGSpectraError):
    pass
