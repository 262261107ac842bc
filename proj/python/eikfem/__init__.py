"""Finite-element eikonal solver via the exponential transform."""

from ._eikfem import *  # noqa: F401,F403
from ._eikfem import __doc__  # noqa: F401
