"""Exact intersection theory, lct computations and certificate checking for
the secondary Burniat surface with K^2 = 5."""

from burniat5._core import *  # noqa: F401,F403
