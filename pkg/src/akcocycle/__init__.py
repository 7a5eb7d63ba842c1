"""Quasi-periodic SU(1,1)/SL(2,R) cocycle constructions and verification."""

__version__ = "0.1.0"
