"""Kernel backend selection.

Imports the compiled extension when available, otherwise the pure-Python
twin. ``GIRTHFORGE_PURE=1`` forces the fallback (used by the benchmark
and the parity tests). Both backends compute identical results; only
speed differs.
"""

from __future__ import annotations

import os

if os.environ.get("GIRTHFORGE_PURE") == "1":
    from . import _fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on build toolchain
        from . import _fallback as _impl

BACKEND = _impl.backend_name()

girth_csr = _impl.girth_csr
bfs_dist_capped = _impl.bfs_dist_capped
bfs_ball = _impl.bfs_ball
btran = _impl.btran
ftran = _impl.ftran
price_dantzig = _impl.price_dantzig
price_bland = _impl.price_bland
ratio_lex = _impl.ratio_lex
pivot = _impl.pivot
