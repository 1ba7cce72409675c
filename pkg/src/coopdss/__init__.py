"""Secure cooperative regenerating codes: constructions, bounds, secrecy checks, simulator."""

__version__ = "0.1.0"
