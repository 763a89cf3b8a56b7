"""KronSet JSON documents.

    {"bounds": [m, n, mnb], "max_boxes": K,
     "triples": [{"mu": "2,1", "nu": "2,1", "lambda": "2,1", "g": 1}, ...]}
"""

from __future__ import annotations

import json
from typing import Any

from pydantic import ValidationError

from kronspec.partitions.src.young import format_partition, parse_partition
from kronspec.shared.errors import InputError
from kronspec.shared.models import KronSet, KronTriple


def triple_to_dict(t: KronTriple) -> dict[str, Any]:
    return {
        "mu": format_partition(t.mu),
        "nu": format_partition(t.nu),
        "lambda": format_partition(t.lam),
        "g": t.g,
    }


def kron_set_to_dict(kron_set: KronSet) -> dict[str, Any]:
    return {
        "bounds": list(kron_set.row_bounds),
        "max_boxes": kron_set.max_boxes,
        "triples": [triple_to_dict(t) for t in kron_set.triples],
    }


def kron_set_to_json(kron_set: KronSet) -> str:
    """Serialize with a stable key order and a trailing newline."""
    return json.dumps(kron_set_to_dict(kron_set), indent=2) + "\n"


def kron_set_from_json(text: str) -> KronSet:
    """Parse a KronSet document.

    Raises:
        InputError: On malformed JSON or members violating the set invariants.
    """
    try:
        doc = json.loads(text)
        triples = tuple(
            KronTriple(
                mu=parse_partition(item["mu"]),
                nu=parse_partition(item["nu"]),
                lam=parse_partition(item["lambda"]),
                g=item["g"],
            )
            for item in doc["triples"]
        )
        return KronSet(row_bounds=tuple(doc["bounds"]), max_boxes=doc["max_boxes"], triples=triples)
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise InputError(f"malformed KronSet document: {e}") from e
    except ValidationError as e:
        raise InputError(f"invalid KronSet document: {e.errors()[0]['msg']}") from e
