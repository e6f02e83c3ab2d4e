"""Backend selection for the hot loops.

The compiled extension ``rednets._kernels`` is used when it imports; setting
``REDNETS_PURE=1`` forces the numpy fallback. Both expose ``coord_values``,
``standard_product``, ``row_product`` and ``column_accumulate``.
"""

from __future__ import annotations

import os

from rednets import _fallback

try:
    from rednets import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if os.environ.get("REDNETS_PURE", "") not in ("", "0") or _compiled is None:
    default = _fallback
else:
    default = _compiled


def get_backend(name=None):
    """Return the backend module called ``name`` (``None`` for the default)."""
    if name is None:
        return default
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable; have {sorted(BACKENDS)}"
        ) from None


def has_compiled() -> bool:
    return _compiled is not None
