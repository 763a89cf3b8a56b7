"""Shared library for all kronspec modules."""
