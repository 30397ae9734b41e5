"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``ACHOPF_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("ACHOPF_PURE_PYTHON") == "1":
    from achopf._core_py import *  # noqa: F401,F403
    from achopf._core_py import IMPLEMENTATION
else:
    try:
        from achopf._core import *  # noqa: F401,F403
        from achopf._core import IMPLEMENTATION
    except ImportError:
        from achopf._core_py import *  # noqa: F401,F403
        from achopf._core_py import IMPLEMENTATION

__all__ = ["free_reduce", "cyclic_reduce", "min_rotation", "canonical_form", "hom_table", "IMPLEMENTATION"]
