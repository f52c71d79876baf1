"""Bundled sample diagrams.

The figure samples are frozen JSON files under ``data/``; ``ngon-<n>`` is
built on demand as a regular n-gon with side 1 and all overfolds.
"""

from __future__ import annotations

import re
from importlib import resources

from .bounds import regular_ngon_diagram
from .diagram import KnotDiagram, loads_diagram

_NGON = re.compile(r"^ngon-(\d+)$")


def _data_files():
    return resources.files("ribbonknots") / "data"


def sample_names() -> list[str]:
    names = sorted(p.name[:-5] for p in _data_files().iterdir() if p.name.endswith(".json"))
    return names + ["ngon-<n>"]


def load_sample(name: str) -> KnotDiagram:
    m = _NGON.match(name)
    if m:
        return regular_ngon_diagram(int(m.group(1)))
    path = _data_files() / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"unknown sample {name!r}; available: {', '.join(sample_names())}")
    return loads_diagram(path.read_text(encoding="utf-8"))
