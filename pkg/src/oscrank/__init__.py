"""Exact oscillation ranks of maps on symbolic Stone spaces."""

__version__ = "0.1.0"
