"""Balanced truncation for continuous-time LTI state-space models."""

from ._baltrunc import *  # noqa: F401,F403
from ._baltrunc import __doc__  # noqa: F401

__version__ = "0.1.0"
