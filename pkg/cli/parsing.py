"""Text formats accepted on the kron command line.

Spectra are comma-separated decimals or ``p/q`` rationals, parsed exactly
("0.7,0.3" becomes 7/10, 3/10). Spectral triples join three spectra with
semicolons: ``"1/2,1/2;1/2,1/2;1,0,0,0"``.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import ValidationError

from kronspec.shared.errors import InputError
from kronspec.shared.models import SpectralTriple, Spectrum


def parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed number {text!r}") from e


def parse_spectrum(text: str) -> Spectrum:
    """Parse a normalized, weakly decreasing probability vector.

    Raises:
        InputError: On malformed numbers or an invalid distribution.
    """
    values = tuple(parse_number(part) for part in text.split(","))
    try:
        return Spectrum(probs=values)
    except ValidationError as e:
        raise InputError(f"invalid spectrum {text!r}: {e.errors()[0]['msg']}") from e


def parse_spectral_triple(text: str) -> SpectralTriple:
    """Parse ``"rA;rB;rAB"``."""
    parts = text.split(";")
    if len(parts) != 3:
        raise InputError(f"a spectral triple needs three ';'-separated spectra, got {len(parts)}")
    ra, rb, rab = (parse_spectrum(part) for part in parts)
    return SpectralTriple(rA=ra, rB=rb, rAB=rab)


def format_float(value: float) -> str:
    """Twelve significant digits."""
    return f"{value:.12g}"


def format_value(value: Fraction | int | float) -> str:
    """``p/q`` for rationals, twelve significant digits for floats."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return format_float(value)
