"""Kernel selection: compiled extension if available, numpy fallback otherwise.

Set PARETOPLACE_NO_NATIVE=1 to force the fallback (used by the parity tests
and the benchmark). Both implementations return identical results; only
speed differs.
"""

import os

from . import fallback

if os.environ.get("PARETOPLACE_NO_NATIVE"):
    _impl = fallback
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = fallback

IMPLEMENTATION: str = _impl.IMPLEMENTATION
nd_ranks = _impl.nd_ranks
pareto_mask = _impl.pareto_mask

__all__ = ["IMPLEMENTATION", "nd_ranks", "pareto_mask", "fallback"]
