"""The polytope of admissible spectral triples."""
