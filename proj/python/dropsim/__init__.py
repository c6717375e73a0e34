"""Packet-level TCP drop-rate simulator."""

try:
    from ._dropsim import *  # noqa: F401,F403  (installed layout)
    from ._dropsim import __version__  # noqa: F401
except ImportError:
    from _dropsim import *  # noqa: F401,F403  (in-tree build layout)
    from _dropsim import __version__  # noqa: F401
