"""Hot-loop kernels: compiled extension when built, pure Python otherwise.

Set ``IDEALTYPE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("IDEALTYPE_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

antichain_ideals = _impl.antichain_ideals
condition_flags = _impl.condition_flags
