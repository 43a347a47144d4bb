"""Alexander polynomials of plane sextics via local ideals and evaluation maps."""

__version__ = "0.1.0"
