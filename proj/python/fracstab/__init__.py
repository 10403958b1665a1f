"""Stability analysis of two-component incommensurate fractional-order systems."""

from fracstab._core import *  # noqa: F401,F403
from fracstab._core import __version__  # noqa: F401
