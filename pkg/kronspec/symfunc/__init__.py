"""Symmetric-group characters, dimensions, Schur polynomials."""
