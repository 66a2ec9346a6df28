"""Curvature functionals and inverse mean curvature flow in hyperbolic space."""

from ._core import *  # noqa: F401,F403
from ._core import ImcflabError, cli, run_flow, sphere_summary

__all__ = [name for name in dir() if not name.startswith("_")]
