"""Backend selection for the bitmask kernels.

The compiled extension is used when it imports; set
``DAG_INCLUSION_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

if os.environ.get("DAG_INCLUSION_PURE_PYTHON"):
    from ._pykernels import ancestors, descendants, is_acyclic, reach, separated_mask

    BACKEND = "python"
else:
    try:
        from ._ckernels import ancestors, descendants, is_acyclic, reach, separated_mask

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import ancestors, descendants, is_acyclic, reach, separated_mask

        BACKEND = "python"

__all__ = ["BACKEND", "ancestors", "descendants", "is_acyclic", "reach", "separated_mask"]
