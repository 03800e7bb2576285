"""Convex-Neural RRT* grid planning."""

from ._cnrrt import *  # noqa: F401,F403
from ._cnrrt import __doc__  # noqa: F401

__version__ = "0.1.0"
