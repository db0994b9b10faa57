"""Exact calculator for measured multimatrix pairs and their universal algebras.

Thin wrapper over the compiled extension. Every operation returns a pair
``(exit_code, report)`` where the report is a plain dict mirroring the CLI
JSON: 0 means success/verified, 1 a mathematically meaningful verification
failure. Precondition and input errors raise ``ValueError``.
"""

import os

# In an installed tree the extension sits next to this file. During
# development the build system exports its output directory instead.
_module_dir = os.environ.get("QAUT_MODULE_DIR")
if _module_dir and _module_dir not in __path__:
    __path__.append(_module_dir)

from ._qaut import (  # noqa: E402
    certify_nonzero,
    check,
    confluence,
    fixture,
    fixture_names,
    fold,
    fusion,
    hilbert,
    hopf_axioms,
    present,
    qparam,
    run,
    verify_relations,
)

__all__ = [
    "certify_nonzero",
    "check",
    "confluence",
    "fixture",
    "fixture_names",
    "fold",
    "fusion",
    "hilbert",
    "hopf_axioms",
    "present",
    "qparam",
    "run",
    "verify_relations",
]
