"""Fermat's equation x^p + y^p = z^p over real quadratic fields Q(sqrt d)."""

__version__ = "0.1.0"
