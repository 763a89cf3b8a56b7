"""Hull JSON documents.

    {"bounds": [m, n, mnb], "max_boxes": K, "ambient_dim": D,
     "vertices": [["1/2", "1/2", ...], ...]}

Rationals are always written as "p/q"; plain integers and decimals are
accepted when reading.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from pydantic import ValidationError

from kronspec.polytope.src.hull import affine_dimension
from kronspec.shared.errors import InputError
from kronspec.shared.models import PolytopeV


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed rational {text!r}") from e


def hull_to_dict(poly: PolytopeV) -> dict[str, Any]:
    return {
        "bounds": list(poly.bounds),
        "max_boxes": poly.source_max_boxes,
        "ambient_dim": poly.ambient_dim,
        "vertices": [[format_rational(c) for c in point] for point in poly.points],
    }


def hull_to_json(poly: PolytopeV) -> str:
    return json.dumps(hull_to_dict(poly), indent=2) + "\n"


def hull_from_json(text: str) -> PolytopeV:
    """Parse a hull document; the affine dimension is recomputed.

    Raises:
        InputError: On malformed JSON or points violating the polytope invariants.
    """
    try:
        doc = json.loads(text)
        points = tuple(tuple(parse_rational(c) for c in vertex) for vertex in doc["vertices"])
        return PolytopeV(
            ambient_dim=doc["ambient_dim"],
            points=points,
            bounds=tuple(doc["bounds"]),
            source_max_boxes=doc["max_boxes"],
            affine_dim=affine_dimension(points),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise InputError(f"malformed hull document: {e}") from e
    except ValidationError as e:
        raise InputError(f"invalid hull document: {e.errors()[0]['msg']}") from e
