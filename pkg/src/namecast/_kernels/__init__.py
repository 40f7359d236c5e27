"""Kernel backend selection.

The hot training loops (SGD epochs, CART split scans) exist twice: a compiled
Cython extension (``_ckernels``) and a pure-Python twin (``_pykernels``) with
identical arithmetic.  The compiled one is preferred when importable; set
``NAMECAST_KERNELS=python`` to force the fallback.  Both produce bit-identical
models, which ``tests/test_kernels_parity.py`` asserts.
"""

import os

from . import _pykernels


def available_backends():
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.insert(0, "c")
    except ImportError:
        pass
    return names


def get_backend(name):
    if name == "python":
        return _pykernels
    if name == "c":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown kernel backend: {name!r}")


_forced = os.environ.get("NAMECAST_KERNELS", "").strip().lower()
if _forced and _forced not in ("c", "python"):
    raise ImportError(f"NAMECAST_KERNELS must be 'c' or 'python', got {_forced!r}")
if _forced:
    _impl = get_backend(_forced)
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

backend_name = _impl.backend_name
MAX_TREE_SAMPLES = _pykernels.MAX_TREE_SAMPLES

train_logistic = _impl.train_logistic
train_pegasos = _impl.train_pegasos
train_winnow = _impl.train_winnow
build_tree_dense = _impl.build_tree_dense
build_tree_sparse = _impl.build_tree_sparse
