"""Block-entropy censuses and sequence experiments (C++ core)."""

try:
    from ._seqent import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _seqent import *  # noqa: F401,F403  (in-tree build)

__version__ = "0.1.0"
