"""Integer scalings of rational admissible triples.

If p = sum_i x_i g_i over normalized triples g_i, k_i is a box count with a
nonzero triple T_i = k_i * g_i, L = lcm(k_i) and D the common denominator of
the x_i, then (L*D) * p = sum_i (D*x_i) * (L/k_i) * T_i is a sum of nonzero
triples and so nonzero. L*D is the default search limit when no explicit
limit is given. The search itself returns the smallest working m.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from kronspec.kronecker.src.coefficients import KronCache, kronecker_coefficient
from kronspec.shared.errors import InputError
from kronspec.shared.models import CaratheodoryCert, KronTriple, Partition, SpectralTriple

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingResult:
    """Smallest m with g(m*rA, m*rB, m*rAB) > 0."""
    m: int
    triple: KronTriple


def certificate_bound(cert: CaratheodoryCert) -> int:
    """L * D: lcm of the generators' box counts times the common weight denominator.

    Raises:
        InputError: If the certificate carries no box counts.
    """
    if not cert.boxes:
        raise InputError("certificate has no generator box counts to bound the search")
    weights = math.lcm(*(Fraction(x).denominator for x in cert.coefficients))
    return math.lcm(*cert.boxes) * weights


def _scaled_rows(spectrum: tuple, m: int) -> Partition | None:
    rows = [Fraction(p) * m for p in spectrum]
    if any(r.denominator != 1 for r in rows):
        return None
    return Partition(rows=tuple(int(r) for r in rows))


def find_scaling(
    p: SpectralTriple,
    cert: CaratheodoryCert | None = None,
    max_m: int | None = None,
    cache: KronCache | None = None,
) -> ScalingResult | None:
    """Smallest m <= ``max_m`` making m*p an integer triple with g > 0.

    Args:
        p: Rational spectral triple
        cert: Caratheodory certificate of ``p``; supplies the default search bound
        max_m: Explicit search bound; takes precedence over the certificate
        cache: Coefficient memo

    Returns:
        The scaling, or None when no m up to the bound works.

    Raises:
        InputError: If ``p`` is not rational or no bound is available.
    """
    if not p.exact:
        raise InputError("scaling search needs a rational triple")
    if max_m is not None:
        limit = max_m
    elif cert is not None:
        limit = certificate_bound(cert)
    else:
        raise InputError("find_scaling needs max_m or a certificate")
    if limit < 1:
        raise InputError(f"search bound must be positive, got {limit}")

    for m in range(1, limit + 1):
        rows = [_scaled_rows(s.probs, m) for s in (p.rA, p.rB, p.rAB)]
        if any(r is None for r in rows):
            continue
        mu, nu, lam = rows
        g = kronecker_coefficient(mu, nu, lam, cache=cache)
        if g > 0:
            logger.info(f"Scaling m={m} gives ({mu}|{nu}|{lam}) with g={g}")
            return ScalingResult(m=m, triple=KronTriple(mu=mu, nu=nu, lam=lam, g=g))
    logger.warning(f"No scaling with g > 0 found for m <= {limit}")
    return None
