"""Exact real-computation toolkit: machines, straight-line programs, ETR passes and geometry."""
from . import exactnum, machine, realalgo, slp
from .errors import RealctError

__version__ = "0.1.0"
__all__ = ["exactnum", "machine", "realalgo", "slp", "RealctError", "__version__"]
