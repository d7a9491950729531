"""Optimal constants and bound curves for magnetic interpolation inequalities."""

from ._magineq import *  # noqa: F401,F403
from ._magineq import __version__  # noqa: F401
