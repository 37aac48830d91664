"""Tiered tournament engine with simulation, archive analysis, and a live service."""

__version__ = "0.1.0"
