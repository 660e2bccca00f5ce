"""Kernel backend selection: compiled core when built, NumPy fallback otherwise.

Set ``LOSCURE_BACKEND=python`` or ``=compiled`` to force a choice; the default
(``auto``) prefers the compiled core.
"""

import os

from . import _kernels_py

_requested = os.environ.get("LOSCURE_BACKEND", "auto").lower()

if _requested not in ("auto", "compiled", "python"):
    raise ValueError(f"unknown LOSCURE_BACKEND value {_requested!r}")

if _requested == "python":
    kernels = _kernels_py
    BACKEND_NAME = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]

        BACKEND_NAME = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "LOSCURE_BACKEND=compiled but the compiled core is not built; "
                "reinstall with Cython available or drop the override"
            ) from None
        kernels = _kernels_py
        BACKEND_NAME = "python"


def active_backend() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return BACKEND_NAME


def get_backend(name: str):
    """Return a specific kernel module ('compiled' or 'python'); used by the
    benchmark and the cross-backend tests."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels_cy

        return _kernels_cy
    raise ValueError(f"unknown backend {name!r}")
