"""Dicke-narrowed EIT simulator: kinetics, lineshapes, Monte-Carlo oracle, fitting and imaging."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

HZ_TO_RAD = 2.0 * 3.141592653589793
