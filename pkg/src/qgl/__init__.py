"""Quantum GL(n) coordinate algebras and their realization by counting flags over F_q."""

__version__ = "0.1.0"
