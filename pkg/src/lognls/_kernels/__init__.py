"""Hot-kernel backend selection.

The compiled extension (built from ``_compiled.pyx``) is preferred when it
imported cleanly; otherwise the numpy fallback is used. Set
``LOGNLS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _numpy as _fallback

_impl = _fallback
if not os.environ.get("LOGNLS_PURE_PYTHON"):
    try:
        from . import _compiled as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "numpy"

MODULUS_FLOOR = _fallback.MODULUS_FLOOR
PHASE_OVERFLOW = _fallback.PHASE_OVERFLOW
REG_EXACT = _fallback.REG_EXACT
REG_SHIFTED = _fallback.REG_SHIFTED
REG_FLOOR = _fallback.REG_FLOOR

nl_phase = _impl.nl_phase
ch_sweep = _impl.ch_sweep
g1_sweep = _impl.g1_sweep
g2_sweep = _impl.g2_sweep

__all__ = [
    "BACKEND",
    "MODULUS_FLOOR",
    "PHASE_OVERFLOW",
    "REG_EXACT",
    "REG_SHIFTED",
    "REG_FLOOR",
    "nl_phase",
    "ch_sweep",
    "g1_sweep",
    "g2_sweep",
]
