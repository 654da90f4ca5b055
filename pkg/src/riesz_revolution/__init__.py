#!/usr/bin/env python3

__version__ = "unknown"
try:
    from ._version import __version__
except ImportError:
    # running from a source tree without a generated _version.py
    pass
