"""Kernel backend selection: compiled extension if present, numpy otherwise.

Set TRICHAR_FORCE_FALLBACK=1 to ignore the compiled core (used by the
benchmark and the backend-parity tests).  ``BACKEND`` reports the choice.
"""

import os

from . import _fallback

if os.environ.get("TRICHAR_FORCE_FALLBACK") == "1":
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

affine_view_hist = _impl.affine_view_hist
affine_dvals = _impl.affine_dvals
form_counts = _impl.form_counts
weight_hist = _impl.weight_hist
quadric_counts = _impl.quadric_counts

__all__ = [
    "BACKEND",
    "affine_view_hist",
    "affine_dvals",
    "form_counts",
    "weight_hist",
    "quadric_counts",
]
