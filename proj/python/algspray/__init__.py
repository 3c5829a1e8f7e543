"""Residual checks for spray geometry on Lie algebroid prolongations.

Thin wrapper over the compiled extension; see the individual function
docstrings for the scenario text format and report schema.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # development layout: extension on PYTHONPATH next to the build tree
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
