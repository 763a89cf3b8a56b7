"""Kronecker coefficients and the semigroup of nonzero triples."""
