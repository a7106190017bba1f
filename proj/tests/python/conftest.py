"""Test harness wiring for running against an uninstalled build tree.

The CMake ``python_smoke`` test sets:

  CONDLOGIC_BUILD_DIR   directory holding the freshly built ``_core`` module
  CONDLOGIC_SRC_DIR     repository root (for the pure-python package)
  CONDLOGIC_CORPUS_DIR  the shipped corpus data directory

When the package is properly installed none of this is needed and the
inserts are skipped.
"""

import os
import sys

build_dir = os.environ.get("CONDLOGIC_BUILD_DIR")
if build_dir and build_dir not in sys.path:
    sys.path.insert(0, build_dir)

src_dir = os.environ.get("CONDLOGIC_SRC_DIR")
if src_dir:
    pkg_root = os.path.join(src_dir, "python")
    if pkg_root not in sys.path:
        sys.path.insert(0, pkg_root)
