"""Command-line tools for kronspec.

This package contains the ``kron`` Typer application, its run configuration,
the persistent character/coefficient cache and the falsification suites.
"""
