"""Exact simulator of the EPR-pair quantum dialogue protocol.

Everything is re-exported from the compiled extension: the 1-4 qubit pure
state core, the dialogue state machines, the intercept-and-resend adversary
and the exact/Monte Carlo analysis entry points.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
