"""Kernel selection for the relocatable-tree search.

The compiled Cython kernel is used when it was built; otherwise the
pure-Python twin runs.  Set SPANFACT_PURE_KERNEL=1 to force the fallback.
Both kernels implement the identical traversal, so results (size, witness,
node count, certificate) must not depend on the selection.
"""
from __future__ import annotations

import os

from . import _treekernel_py

try:
    from . import _treekernel as _compiled
except ImportError:
    _compiled = None


def active_kernel_name(force_pure: bool = False) -> str:
    if force_pure or _compiled is None or os.environ.get("SPANFACT_PURE_KERNEL") == "1":
        return "python"
    return "cython"


def run_search(n, f1_images, f2_images, node_cap, closure_cap, force_pure=False):
    """Dispatch to the active kernel; returns (size, witness, nodes, certified, kernel)."""
    name = active_kernel_name(force_pure)
    impl = _compiled if name == "cython" else _treekernel_py
    size, witness, nodes, certified = impl.run(
        n, f1_images, f2_images, node_cap, closure_cap
    )
    return size, witness, nodes, certified, name
