"""Kernel backend selection.

The hot loops (Latin scans, orthogonality seen-table, construction cell
fills) live in a compiled Cython extension with a pure-Python twin.  The
compiled backend is preferred at import; set MOLSKIT_PURE_PYTHON=1 to
force the fallback (used by the benchmark and the parity tests).
"""

import os

from . import _kernels_py

if os.environ.get("MOLSKIT_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

latin_violation = _impl.latin_violation
orth_violation = _impl.orth_violation
fill_square_embed = _impl.fill_square_embed
fill_pair_embed = _impl.fill_pair_embed
