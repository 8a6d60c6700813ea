"""Welfare-optimal contracts on anonymized networks."""

from ._netcon import *  # noqa: F401,F403
from ._netcon import __version__  # noqa: F401
