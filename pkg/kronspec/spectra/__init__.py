"""Density operators, marginal spectra and estimation bounds."""
