"""Construction, weight reduction, and analysis of CSS quantum LDPC codes over F2."""

__version__ = "0.1.0"

from .gf2 import BinaryMatrix

__all__ = ["BinaryMatrix", "__version__"]
