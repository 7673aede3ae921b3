"""Harmonic analysis of radial functions on the compact rank-one symmetric spaces.

Submodules are imported lazily so the CLI can set thread caps before numpy loads.
"""
__version__ = "0.1.0"
