"""Top level package for the q-Schur engine.

Subpackages are not imported at module import time: counting and table
builds pull in ``galois`` and ``joblib``, which the arithmetic helpers do not
need.  Submodules can still be accessed using the standard package notation
(e.g. ``from src.schur import frob``) or as attributes of :mod:`src`, in
which case they are imported lazily when first accessed.
"""

from __future__ import annotations

from importlib import import_module
from types import ModuleType
from typing import Dict

__version__ = "0.1.0"

# -- Lazy loading -----------------------------------------------------------

_LAZY_MODULES: Dict[str, str] = {
    "config": "src.config",
    "utils_io": "src.utils_io",
    "laurent": "src.algebra.laurent",
    "cartan": "src.algebra.cartan",
    "fields": "src.algebra.fields",
    "linalg": "src.algebra.linalg",
    "finite_field": "src.geometry.finite_field",
    "flaggeom": "src.geometry.flaggeom",
    "theta": "src.schur.theta",
    "table": "src.schur.table",
    "schur_algebra": "src.schur.algebra",
    "frob": "src.schur.frob",
    "gschur": "src.schur.gschur",
    "suites": "src.verify.suites",
    "report": "src.verify.report",
}


def __getattr__(name: str) -> ModuleType:
    """Import a submodule listed in ``_LAZY_MODULES`` on first access."""

    if name in _LAZY_MODULES:
        module = import_module(_LAZY_MODULES[name])
        globals()[name] = module
        return module
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = sorted(_LAZY_MODULES)
