"""kronspec - Kronecker coefficients and admissible bipartite spectra.

Exact symmetric-group characters and Kronecker coefficients, the semigroup of
nonzero triples, the polytope of admissible spectral triples, and numerical
cross-checks of the correspondence on sampled density operators.
"""

__version__ = "0.1.0"
