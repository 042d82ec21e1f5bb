"""Exact lattice-point counts, saddle-point estimates and discrete maximal
function experiments on Z^d."""

from .errors import GuardError

__all__ = ["GuardError"]
