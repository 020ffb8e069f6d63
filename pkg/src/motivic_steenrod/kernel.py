"""Select the product kernel at import time.

The compiled ``_kernel`` extension is used when it was built; otherwise the
pure-Python implementation is used.  Setting ``MOTIVIC_STEENROD_PURE=1`` forces
the fallback (the benchmark and the kernel-agreement tests use both).
"""

import os

from . import _kernel_py

BACKEND = "python"
mul_terms = _kernel_py.mul_terms

if os.environ.get("MOTIVIC_STEENROD_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernel as _compiled
    except ImportError:
        _compiled = None
    if _compiled is not None:
        mul_terms = _compiled.mul_terms
        BACKEND = "cython"

python_mul_terms = _kernel_py.mul_terms


def compiled_mul_terms():
    """Return the compiled kernel or None if the extension is unavailable."""
    try:
        from . import _kernel as compiled
    except ImportError:
        return None
    return compiled.mul_terms
