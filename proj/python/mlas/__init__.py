"""Minimum-latency aggregation scheduling on unit disk graphs."""

from ._mlas import *  # noqa: F401,F403
from ._mlas import __doc__  # noqa: F401
