"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module is used. Set ``CONCORDANCE_LAB_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("CONCORDANCE_LAB_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]

bareiss_det = _impl.bareiss_det
tree_weight_sum = _impl.tree_weight_sum
magnus_expand_word = _impl.magnus_expand_word
magnus_offsets = _pykernels.magnus_offsets
