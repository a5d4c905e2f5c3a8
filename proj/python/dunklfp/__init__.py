"""Dunkl-type Fokker-Planck operators and sector solvers."""

from ._dunklfp import *  # noqa: F401,F403
from ._dunklfp import __doc__  # noqa: F401
