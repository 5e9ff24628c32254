"""Hot-kernel dispatch: compiled Cython extension when available, numpy
fallback otherwise. Set ULTRAAD_PURE=1 to force the fallback."""

import os

from . import _reference

if os.environ.get("ULTRAAD_PURE"):
    _impl = _reference
    HAVE_NATIVE = False
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        HAVE_NATIVE = True
    except ImportError:
        _impl = _reference
        HAVE_NATIVE = False

BACKEND = "native" if HAVE_NATIVE else "reference"

bilinear_upsample = _impl.bilinear_upsample
auc_wins_ties = _impl.auc_wins_ties
box_downsample = _impl.box_downsample
