from __future__ import annotations

from pathlib import Path

from jinja2 import BaseLoader, Environment
from pydantic import BaseModel

from .logger_factory import get_logger
from .utils.logfmt import fmt

TEMPLATE_DIR = Path(__file__).parent / "templates"


class ReportRenderer:
    """Plain-text views of the JSON documents, one jinja2 template per document kind.

    Templates are read from `template_dir` and re-read when their mtime changes.
    """

    def __init__(self, template_dir: str | Path | None = None):
        self._dir = Path(template_dir) if template_dir else TEMPLATE_DIR
        self._cache: dict[str, tuple[int, str]] = {}
        self.env = Environment(loader=BaseLoader(), keep_trailing_newline=True)
        self._log = get_logger("report")

    def _source(self, name: str) -> str:
        path = self._dir / f"{name}.txt.j2"
        try:
            mtime = path.stat().st_mtime_ns
        except OSError:
            self._log.warning(f"[template-missing] {fmt('path', path)}")
            return "{{ doc }}\n"
        cached = self._cache.get(name)
        if cached is None or cached[0] != mtime:
            self._cache[name] = (mtime, path.read_text(encoding="utf-8"))
        return self._cache[name][1]

    def render(self, name: str, doc: BaseModel, **extra) -> str:
        tmpl = self.env.from_string(self._source(name))
        out = tmpl.render(doc=doc, **extra)
        return out if out.endswith("\n") else out + "\n"
