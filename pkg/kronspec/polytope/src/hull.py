"""Vertex representation of the hull of normalized nonzero Kronecker triples.

Points are flattened as rA ++ rB ++ rAB with exact rationals. Membership of
rational points is decided by an exact LP; floating points (sampled spectra)
use a HiGHS LP that also gives the L1 distance to the hull:

    minimize  sum(s+ + s-)
    subject to V^T x + s+ - s- = p,  1^T x = 1,  x, s+, s- >= 0
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np
import sympy as sp
from scipy.optimize import linprog

from kronspec.kronecker.src.coefficients import KronCache, kronecker_coefficient
from kronspec.partitions.src.young import normalize
from kronspec.polytope.src.exact_lp import exact_feasible
from kronspec.shared.config import get_settings
from kronspec.shared.errors import ConsistencyError, InputError
from kronspec.shared.models import (
    CaratheodoryCert,
    KronSet,
    KronTriple,
    PolytopeV,
    RationalPoint,
    SpectralTriple,
    split_blocks,
)

logger = logging.getLogger(__name__)

Bounds = tuple[int, int, int]

# float distances above this are vertices without exact confirmation
SCREEN_MARGIN = 1e-7
SUPPORT_CUTOFF = 1e-12


def normalized_point(t: KronTriple, bounds: Bounds) -> RationalPoint:
    """Normalized rows of a triple, zero padded to the row bounds and flattened."""
    m, n, mnb = bounds
    return normalize(t.mu).padded(m) + normalize(t.nu).padded(n) + normalize(t.lam).padded(mnb)


def triple_point(p: SpectralTriple, bounds: Bounds) -> tuple[Real, ...]:
    """Flatten a spectral triple whose dimensions equal the hull bounds."""
    if p.dims != tuple(bounds):
        raise InputError(f"triple dimensions {p.dims} do not match hull bounds {tuple(bounds)}")
    return p.flatten()


def _float_distance(vertices: Sequence[RationalPoint], point: Sequence[Real]) -> tuple[float, np.ndarray]:
    """L1 distance from ``point`` to the hull of ``vertices`` and the optimal weights."""
    v = np.array([[float(c) for c in vertex] for vertex in vertices], dtype=float)
    p = np.array([float(c) for c in point], dtype=float)
    count, dim = v.shape
    a_eq = np.zeros((dim + 1, count + 2 * dim))
    a_eq[:dim, :count] = v.T
    a_eq[:dim, count:count + dim] = np.eye(dim)
    a_eq[:dim, count + dim:] = -np.eye(dim)
    a_eq[dim, :count] = 1.0
    b_eq = np.append(p, 1.0)
    cost = np.concatenate([np.zeros(count), np.ones(2 * dim)])
    result = linprog(cost, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if result.status != 0:
        raise ConsistencyError(f"hull distance LP failed: {result.message}")
    return max(float(result.fun), 0.0), result.x[:count]


def _exact_weights(vertices: Sequence[RationalPoint], point: RationalPoint) -> tuple[Fraction, ...] | None:
    matrix = [[vertex[i] for vertex in vertices] for i in range(len(point))]
    matrix.append([Fraction(1)] * len(vertices))
    return exact_feasible(matrix, list(point) + [Fraction(1)])


def _exact_combination(
    vertices: Sequence[RationalPoint], point: RationalPoint, hint: np.ndarray | None = None
) -> dict[int, Fraction] | None:
    """Exact convex weights (index -> weight) expressing ``point``, or None.

    The support of a floating solution ``hint`` is tried first; the full
    vertex list is the fallback.
    """
    if hint is not None:
        support = [i for i, w in enumerate(hint) if w > SUPPORT_CUTOFF]
        if support:
            weights = _exact_weights([vertices[i] for i in support], point)
            if weights is not None:
                return {support[j]: w for j, w in enumerate(weights) if w}
            logger.debug(f"Support of {len(support)} vertices failed exactly, solving the full LP")
    weights = _exact_weights(vertices, point)
    if weights is None:
        return None
    return {i: w for i, w in enumerate(weights) if w}


def affine_dimension(points: Sequence[RationalPoint]) -> int:
    """Exact rank of the differences to the first point."""
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = sp.Matrix([[sp.Rational(c.numerator, c.denominator) - sp.Rational(b.numerator, b.denominator)
                        for c, b in zip(p, base)] for p in points[1:]])
    return int(diffs.rank())


def build_polytope(kron_set: KronSet) -> PolytopeV:
    """Hull of the normalized triples of ``kron_set`` with interior points removed.

    A point is dropped when it is a convex combination of the remaining ones,
    decided exactly. The result approximates the admissible-triple polytope
    from inside, labelled with ``kron_set.max_boxes``.

    Raises:
        InputError: If the set is empty.
    """
    if not kron_set.triples:
        raise InputError("cannot build a polytope from an empty KronSet")
    bounds = kron_set.row_bounds
    candidates: list[RationalPoint] = list(dict.fromkeys(normalized_point(t, bounds) for t in kron_set.triples))
    logger.info(f"Eliminating redundant points among {len(candidates)} normalized triples")

    kept = list(candidates)
    index = 0
    while index < len(kept):
        point = kept[index]
        others = kept[:index] + kept[index + 1:]
        redundant = False
        if others:
            distance, weights = _float_distance(others, point)
            if distance <= SCREEN_MARGIN:
                redundant = _exact_combination(others, point, weights) is not None
        if redundant:
            kept.pop(index)
        else:
            index += 1

    affine_dim = affine_dimension(kept)
    logger.info(f"Hull for K={kron_set.max_boxes}: {len(kept)} vertices, affine dimension {affine_dim}")
    return PolytopeV(
        ambient_dim=sum(bounds),
        points=tuple(kept),
        bounds=bounds,
        source_max_boxes=kron_set.max_boxes,
        affine_dim=affine_dim,
    )


@dataclass(frozen=True)
class MembershipResult:
    """Whether a triple lies in the hull and its L1 distance to it (0 inside)."""
    inside: bool
    distance: float


def hull_distance(p: SpectralTriple, poly: PolytopeV) -> float:
    """Floating L1 distance from ``p`` to the hull."""
    distance, _ = _float_distance(poly.points, triple_point(p, poly.bounds))
    return distance


def membership(p: SpectralTriple, poly: PolytopeV, feasibility_tol: float | None = None) -> MembershipResult:
    """Decide membership: exactly for rational triples, within ``feasibility_tol`` otherwise."""
    tol = get_settings().tol__feasibility if feasibility_tol is None else feasibility_tol
    point = triple_point(p, poly.bounds)
    distance, weights = _float_distance(poly.points, point)
    if p.exact:
        inside = _exact_combination(poly.points, tuple(Fraction(c) for c in point), weights) is not None
    else:
        inside = distance <= tol
    return MembershipResult(inside=inside, distance=0.0 if inside else distance)


def vertex_boxes(vertex: RationalPoint, poly: PolytopeV, cache: KronCache | None = None) -> int:
    """Smallest k <= source_max_boxes with a nonzero triple normalizing to ``vertex``.

    Raises:
        ConsistencyError: If no such triple exists, i.e. ``vertex`` did not come from the hull's triples.
    """
    step = math.lcm(*(c.denominator for c in vertex))
    for k in range(step, poly.source_max_boxes + 1, step):
        mu, nu, lam = (tuple(int(c * k) for c in block) for block in split_blocks(vertex, poly.bounds))
        if kronecker_coefficient(mu, nu, lam, cache=cache) > 0:
            return k
    raise ConsistencyError(
        f"no nonzero triple with at most {poly.source_max_boxes} boxes normalizes to {format_point(vertex)}"
    )


def caratheodory(p: SpectralTriple, poly: PolytopeV) -> CaratheodoryCert:
    """Write a rational triple as a convex combination of at most t+1 vertices.

    Raises:
        InputError: If ``p`` is not rational or lies outside the hull.
        ConsistencyError: If the certificate does not reconstruct ``p``.
    """
    if not p.exact:
        raise InputError("a Caratheodory certificate needs a rational triple")
    point = tuple(Fraction(c) for c in triple_point(p, poly.bounds))
    _, hint = _float_distance(poly.points, point)
    weights = _exact_combination(poly.points, point, hint)
    if weights is None:
        raise InputError(f"triple {format_point(point)} lies outside the hull")
    order = sorted(weights)
    cert = CaratheodoryCert(
        generators=tuple(poly.points[i] for i in order),
        coefficients=tuple(weights[i] for i in order),
        boxes=tuple(vertex_boxes(poly.points[i], poly) for i in order),
    )
    if cert.reconstruct() != point:
        raise ConsistencyError("Caratheodory certificate does not reconstruct its point")
    if len(order) > poly.affine_dim + 1:
        raise ConsistencyError(f"certificate uses {len(order)} vertices, more than t+1={poly.affine_dim + 1}")
    return cert


def convex_combination_inside(
    p1: RationalPoint, p2: RationalPoint, weight: Fraction, poly: PolytopeV
) -> bool:
    """Whether weight*p1 + (1-weight)*p2 lies in the hull, decided exactly."""
    if not 0 <= weight <= 1:
        raise InputError(f"weight must lie in [0, 1], got {weight}")
    point = tuple(weight * a + (1 - weight) * b for a, b in zip(p1, p2))
    if len(point) != poly.ambient_dim:
        raise InputError(f"points of length {len(point)} in ambient dimension {poly.ambient_dim}")
    _, hint = _float_distance(poly.points, point)
    return _exact_combination(poly.points, point, hint) is not None


def format_point(point: Sequence[Fraction]) -> str:
    return ",".join(f"{c.numerator}/{c.denominator}" for c in point)
