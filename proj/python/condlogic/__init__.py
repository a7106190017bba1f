"""Workbench for conditional logics over selection-function frames.

The heavy lifting lives in the compiled ``_core`` module: parsing,
frame-validity checking, Hilbert-style proof checking, countermodel
search, and replay of the bundled derivation corpus.  This package
re-exports that surface and adds :func:`corpus_dir`, which locates the
corpus shipped with an installed wheel (or named by the
``CONDLOGIC_CORPUS_DIR`` environment variable when running from a build
tree).
"""

import os
from pathlib import Path

try:
    from . import _core as _impl
except ImportError:  # running uninstalled, module on sys.path from the build tree
    import _core as _impl  # type: ignore[no-redef]

__version__ = _impl.__version__

parse = _impl.parse
variables = _impl.variables
metavariables = _impl.metavariables
load_frame = _impl.load_frame
condition_profile = _impl.condition_profile
schema_valid = _impl.schema_valid
truth_set = _impl.truth_set
check_proof = _impl.check_proof
verify_corpus = _impl.verify_corpus
find_countermodel = _impl.find_countermodel
verify_countermodel = _impl.verify_countermodel
correspondence = _impl.correspondence
catalog = _impl.catalog


def corpus_dir() -> str:
    """Path to the bundled derivation corpus.

    Prefers the copy installed next to this package; falls back to the
    ``CONDLOGIC_CORPUS_DIR`` environment variable (set by the build-tree
    test harness).  Raises FileNotFoundError if neither exists.
    """
    bundled = Path(__file__).resolve().parent / "data" / "corpus"
    if (bundled / "manifest.json").is_file():
        return str(bundled)
    env = os.environ.get("CONDLOGIC_CORPUS_DIR")
    if env and (Path(env) / "manifest.json").is_file():
        return env
    raise FileNotFoundError("no bundled corpus found; set CONDLOGIC_CORPUS_DIR")


__all__ = [
    "__version__",
    "parse",
    "variables",
    "metavariables",
    "load_frame",
    "condition_profile",
    "schema_valid",
    "truth_set",
    "check_proof",
    "verify_corpus",
    "find_countermodel",
    "verify_countermodel",
    "correspondence",
    "catalog",
    "corpus_dir",
]
