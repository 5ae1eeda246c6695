"""Kernel selection: compiled extension when built, pure Python otherwise.

Set VIRREP_KERNEL=pure to force the fallback (used by the benchmark and by
CI to exercise both paths).
"""

import os

from . import pure as _pure

if os.environ.get("VIRREP_KERNEL") == "pure":
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pure

BACKEND = "pure" if _impl is _pure else "compiled"

strip_content = _impl.strip_content
echelon_insert = _impl.echelon_insert
row_echelon = _impl.row_echelon
