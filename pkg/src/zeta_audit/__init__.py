"""Desk-scale numerics for zeta, prime sums, Perron integrals and explicit-bound audits."""

__version__ = "0.1.0"
