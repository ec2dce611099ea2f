"""Numerics for quantum-classical correspondence estimates, with a regression report."""

__version__ = "0.1.0"

from ._kernels import BACKEND  # noqa: E402,F401
