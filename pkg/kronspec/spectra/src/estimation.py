"""Spectrum estimation from Schur-Weyl measurements.

Measuring the diagram lambda on k copies of a state with spectrum r yields
lambda with probability dim V_lambda * s_lambda(r), bounded by

    (k+1)^{d(d-1)/2} * exp(-k * D(lambda/k || r))

with natural-log relative entropy D. The helpers here evaluate that bound,
the Pinsker inequality and the convergence of the estimate lambda/k to r.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from numbers import Real

import numpy as np
import pandas as pd
from scipy.special import rel_entr

from kronspec.partitions.src.young import enumerate_partitions, l1_distance, normalize
from kronspec.shared.config import get_settings
from kronspec.shared.errors import FalsificationError, InputError
from kronspec.shared.models import Partition, PartitionLike, Spectrum, as_partition
from kronspec.symfunc.src.schur import schur_weyl_prob, weyl_distribution

logger = logging.getLogger(__name__)

Distribution = Spectrum | Sequence[Real]


def _floats(p: Distribution) -> np.ndarray:
    values = p.probs if isinstance(p, Spectrum) else p
    return np.array([float(x) for x in values], dtype=float)


def kl_divergence(p: Distribution, q: Distribution) -> float:
    """D(p || q) in nats; +inf when p puts mass where q has none.

    Raises:
        InputError: If the lengths differ.
    """
    a, b = _floats(p), _floats(q)
    if a.shape != b.shape:
        raise InputError(f"length mismatch: {len(a)} vs {len(b)}")
    return float(np.sum(rel_entr(a, b)))


def check_pinsker(
    p: Distribution, q: Distribution, slack: float | None = None, strict: bool = True
) -> bool:
    """True iff ||p - q||_1^2 / 2 <= D(p || q) + slack.

    Raises:
        FalsificationError: In strict mode when the inequality fails.
    """
    slack = get_settings().tol__pinsker_slack if slack is None else slack
    a, b = _floats(p), _floats(q)
    divergence = kl_divergence(a, b)
    l1 = float(np.abs(a - b).sum())
    holds = l1 ** 2 / 2 <= divergence + slack
    if not holds and strict:
        raise FalsificationError(
            "Pinsker inequality violated",
            {"p": a.tolist(), "q": b.tolist(), "l1": l1, "kl": divergence},
        )
    return holds


def _normalized_floats(lam: Partition, d: int) -> np.ndarray:
    return np.array([float(w) for w in normalize(lam).padded(d)], dtype=float)


def estimation_bound(lam: PartitionLike, r: Spectrum, k: int) -> float:
    """Upper bound on the probability of measuring ``lam`` on k copies.

    Returns 0 exactly when lambda/k puts weight on a zero entry of r.

    Raises:
        InputError: If ``|lam| != k`` or ``lam`` has more rows than ``r`` entries.
    """
    lam = as_partition(lam)
    if lam.size != k or k < 1:
        raise InputError(f"size mismatch: |lambda|={lam.size}, k={k}")
    d = r.dim
    if lam.length > d:
        raise InputError(f"diagram {lam} has more than {d} rows")
    divergence = kl_divergence(_normalized_floats(lam, d), r)
    if math.isinf(divergence):
        return 0.0
    return (k + 1) ** (d * (d - 1) / 2) * math.exp(-k * divergence)


def check_estimation_bound(
    lam: PartitionLike, r: Spectrum, k: int, slack: float | None = None, strict: bool = True
) -> bool:
    """True iff the measured probability of ``lam`` stays below ``estimation_bound``."""
    slack = get_settings().tol__bound_slack if slack is None else slack
    prob = float(schur_weyl_prob(lam, r, k))
    bound = estimation_bound(lam, r, k)
    holds = prob <= bound + slack
    if not holds and strict:
        raise FalsificationError(
            "estimation bound violated",
            {"lambda": str(as_partition(lam)), "r": [float(x) for x in r.probs], "k": k,
             "probability": prob, "bound": bound},
        )
    return holds


class Estimator(str, Enum):
    """How a single diagram is picked as the estimate for a given k.

    MODE: most probable measurement outcome.
    KL: diagram whose normalized rows minimize D(lambda/k || r), i.e. the one
        with the largest estimation bound.
    """
    MODE = "mode"
    KL = "kl"


def best_diagram(r: Spectrum, k: int, estimator: Estimator | str = Estimator.MODE) -> Partition:
    """Estimate for k copies; ties go to the first diagram in canonical order."""
    estimator = Estimator(estimator)
    if estimator is Estimator.MODE:
        lam, _ = max(weyl_distribution(r, k), key=lambda item: item[1])
        return lam
    return min(
        enumerate_partitions(k, r.dim),
        key=lambda lam: kl_divergence(_normalized_floats(lam, r.dim), r),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    diagram: Partition
    distance: float
    within_rate: bool


@dataclass(frozen=True)
class ConvergenceTable:
    """Distances ||lambda*/k - r||_1 per k and the smallest c with distance <= c/sqrt(k)."""
    rows: list[ConvergenceRow] = field(default_factory=list)
    rate_constant: float = 2.0
    fitted_constant: float = 0.0

    @property
    def all_within_rate(self) -> bool:
        return all(row.within_rate for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "k": [row.k for row in self.rows],
                "diagram": [str(row.diagram) for row in self.rows],
                "distance": [row.distance for row in self.rows],
                "within_rate": [row.within_rate for row in self.rows],
            }
        )


def estimation_convergence(
    r: Spectrum,
    k_list: Iterable[int],
    estimator: Estimator | str = Estimator.MODE,
    rate_constant: float | None = None,
) -> ConvergenceTable:
    """Track how fast the estimated diagram approaches ``r``.

    Args:
        r: True spectrum
        k_list: Copy counts (each >= 1)
        estimator: Diagram selection rule, see ``Estimator``
        rate_constant: c in the check distance <= c/sqrt(k)
    """
    c = get_settings().estimate__rate_constant if rate_constant is None else rate_constant
    rows = []
    for k in k_list:
        if k < 1:
            raise InputError(f"k must be >= 1, got {k}")
        lam = best_diagram(r, k, estimator)
        distance = float(l1_distance(normalize(lam).weights, r.probs))
        rows.append(ConvergenceRow(k=k, diagram=lam, distance=distance, within_rate=distance <= c / math.sqrt(k)))
    fitted = max((row.distance * math.sqrt(row.k) for row in rows), default=0.0)
    logger.info(f"Convergence over {len(rows)} values of k: fitted constant {fitted:.6g} (checked against {c})")
    return ConvergenceTable(rows=rows, rate_constant=c, fitted_constant=fitted)


def converse_delta(m: int, n: int, k: int) -> float:
    """3mn * sqrt(ln k / k), the spectral accuracy reached with k boxes; +inf for k <= 1."""
    if k <= 1:
        return math.inf
    return 3 * m * n * math.sqrt(math.log(k) / k)


def converse_kl_bound(m: int, n: int, k: int, d: int) -> float:
    """(d(d-1)/2 * ln(k+1) + m^2 n^2 * ln k) / k."""
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    return (d * (d - 1) / 2 * math.log(k + 1) + (m * n) ** 2 * math.log(k)) / k
