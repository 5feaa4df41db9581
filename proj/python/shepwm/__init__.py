"""Selective harmonic elimination PWM for cascaded H-bridge inverters."""

from ._shepwm import *  # noqa: F401,F403
from ._shepwm import __version__  # noqa: F401
