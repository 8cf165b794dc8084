"""Backend selection for the quantifier sweep.

The compiled extension is used when it was built; setting the environment
variable ``ROUGHPROOF_PURE=1`` forces the pure-Python implementation.
"""

import os

from . import _sweep_py

BACKEND = "python"
sweep = _sweep_py.sweep

if os.environ.get("ROUGHPROOF_PURE") != "1":
    try:
        from . import _sweep as _compiled
    except ImportError:
        pass
    else:
        sweep = _compiled.sweep
        BACKEND = "cython"


def backends():
    """Mapping of available backend names to sweep functions."""
    out = {"python": _sweep_py.sweep}
    try:
        from . import _sweep as _compiled
    except ImportError:
        return out
    out["cython"] = _compiled.sweep
    return out
