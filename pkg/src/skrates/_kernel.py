"""Backend selection for the exhaustive enumeration kernel.

Prefers the compiled extension; falls back to pure Python when the extension
is absent or SKRATES_PURE_PYTHON is set. Both produce identical histograms.
"""

from __future__ import annotations

import os

from . import _exhaustive_py

if os.environ.get("SKRATES_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _exhaustive as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def joint_value_counts(key_masks, msg_masks, n_bits):
    if (
        _compiled is not None
        and n_bits <= 30
        and len(key_masks) + len(msg_masks) <= 22
    ):
        return _compiled.joint_value_counts(list(key_masks), list(msg_masks), n_bits)
    return _exhaustive_py.joint_value_counts(key_masks, msg_masks, n_bits)
