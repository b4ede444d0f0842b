"""Exact verification of the Kulikov surface and morphism, and the S(C1, C2, P) classifier."""

__version__ = "0.1.0"
