"""Exact piecewise-linear maps and certified topological entropy bounds."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, PLMap, Error  # noqa: F401


def tent():
    return PLMap([0, "1/2", 1], [0, 1, 0])
