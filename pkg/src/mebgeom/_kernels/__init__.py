"""Hot inner loops behind a backend switch.

Set ``MEBGEOM_DISABLE_NUMBA=1`` before import to force the vectorized numpy
path. When numba is missing the numpy path is used automatically.
"""
import os

from . import _numpy

BACKEND = "numpy"
_impl = _numpy

if os.environ.get("MEBGEOM_DISABLE_NUMBA", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _numba as _impl  # noqa: F811

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is optional
        _impl = _numpy

pairwise_extremes = _impl.pairwise_extremes
first_outside = _impl.first_outside
directional_extents = _impl.directional_extents
best_support_ball = _impl.best_support_ball
max_barycentric_radius = _impl.max_barycentric_radius


def backends():
    """Modules implementing the kernels, keyed by name, for side-by-side checks."""
    out = {"numpy": _numpy}
    try:
        from . import _numba

        out["numba"] = _numba
    except ImportError:  # pragma: no cover
        pass
    return out
