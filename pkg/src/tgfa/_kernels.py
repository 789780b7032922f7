"""Select the edit-distance kernel at import time.

Uses the compiled extension when it imported cleanly, the pure-Python
implementation otherwise. TGFA_PURE_PYTHON=1 forces the fallback (used
by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

__all__ = ["levenshtein", "KERNEL_BACKEND"]

if os.environ.get("TGFA_PURE_PYTHON") == "1":
    from tgfa._kernels_py import levenshtein

    KERNEL_BACKEND = "python"
else:
    try:
        from tgfa._speedups import levenshtein  # type: ignore[no-redef]

        KERNEL_BACKEND = "c"
    except ImportError:
        from tgfa._kernels_py import levenshtein  # type: ignore[no-redef]

        KERNEL_BACKEND = "python"
