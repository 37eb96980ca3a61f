"""Effective domains: finite maps, costed enumerators, way-below structure,
exact real enclosures and complexity audits, backed by the C++ core."""

try:
    from ._effdom import *  # noqa: F401,F403
except ImportError:  # pragma: no cover - in-tree test runs
    import os
    import sys

    _ext_dir = os.environ.get("EFFDOM_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _effdom import *  # noqa: F401,F403
