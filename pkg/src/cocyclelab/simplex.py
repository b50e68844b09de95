"""Standard simplices, face maps, and exact-degree quadrature.

Points of the q-simplex are barycentric tuples (t_0, ..., t_q) with sum 1.
Integration is against the Lebesgue measure of the coordinate simplex
{t_1, ..., t_q >= 0, sum <= 1}, of volume 1/q!; for q = 1 this is the unit
interval with its usual length.

Rules are conical products of Gauss-Jacobi lines (Duffy mapping), which have
all-positive weights and integrate every polynomial of total degree up to
``exact_degree`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

__all__ = [
    "SimplexPoint",
    "QuadratureRule",
    "UnsupportedDegree",
    "IndexOutOfRange",
    "make_rule",
    "face_map",
    "integrate_over_simplex",
    "simplex_volume",
]


class UnsupportedDegree(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


_MAX_POINTS_PER_AXIS = 64


@dataclass(frozen=True)
class SimplexPoint:
    """Barycentric coordinates (t_0, ..., t_q) on the q-simplex."""

    coords: tuple

    def __post_init__(self):
        c = tuple(float(t) for t in self.coords)
        if abs(sum(c) - 1.0) > 1e-14:
            raise ValueError(f"barycentric coordinates sum to {sum(c)!r}, not 1")
        if min(c) < -1e-14 or max(c) > 1.0 + 1e-14:
            raise ValueError("barycentric coordinates outside [0, 1]")
        object.__setattr__(self, "coords", c)

    @property
    def q(self) -> int:
        return len(self.coords) - 1


def _fact(q: int) -> float:
    out = 1.0
    for i in range(2, q + 1):
        out *= i
    return out


def simplex_volume(q: int) -> float:
    return 1.0 / _fact(q)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes (barycentric, shape ``(m, q+1)``) and positive weights on the q-simplex.

    Weights sum to vol = 1/q! and the rule is exact for all polynomials of
    total degree <= ``exact_degree``.
    """

    q: int
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        nodes.setflags(write=False)
        weights.setflags(write=False)

    def points(self):
        return [SimplexPoint(tuple(row)) for row in self.nodes]


def make_rule(q: int, exact_degree: int) -> QuadratureRule:
    """Conical-product Gauss-Jacobi rule on the q-simplex.

    The Duffy map t_1 = x_1, t_2 = x_2 (1 - x_1), ..., with Jacobian
    prod_j (1 - x_j)^{q-j}, turns the simplex integral into a tensor product
    of weighted line integrals; Gauss-Jacobi with weight (1-x)^{q-j} on each
    axis makes the product rule exact.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    if exact_degree < 1:
        raise ValueError("exact_degree must be >= 1")
    if q == 0:
        return QuadratureRule(0, np.ones((1, 1)), np.ones(1), exact_degree)
    m = (exact_degree + 2) // 2  # 2m - 1 >= exact_degree
    if m > _MAX_POINTS_PER_AXIS:
        raise UnsupportedDegree(f"requested degree {exact_degree} exceeds the implemented family")
    axes = []
    for j in range(1, q + 1):
        alpha = float(q - j)
        x, w = roots_jacobi(m, alpha, 0.0)
        # roots_jacobi is on [-1, 1] with weight (1-x)^alpha; rescale to [0, 1].
        x01 = 0.5 * (x + 1.0)
        w01 = w / (2.0 ** (alpha + 1.0))
        axes.append((x01, w01))
    grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
    wgrids = np.meshgrid(*[a[1] for a in axes], indexing="ij")
    xs = [g.ravel() for g in grids]
    weight = np.ones_like(xs[0])
    for wg in wgrids:
        weight = weight * wg.ravel()
    coords = np.empty((xs[0].size, q + 1))
    rem = np.ones_like(xs[0])
    for j in range(q):
        coords[:, j + 1] = xs[j] * rem
        rem = rem * (1.0 - xs[j])
    coords[:, 0] = rem
    return QuadratureRule(q, coords, weight, exact_degree)


def face_map(j: int, p: SimplexPoint) -> SimplexPoint:
    """The j-th face inclusion: insert barycentric coordinate 0 at slot j."""
    q = p.q + 1
    if not 0 <= j <= q:
        raise IndexOutOfRange(f"face index {j} outside 0..{q}")
    c = list(p.coords)
    c.insert(j, 0.0)
    return SimplexPoint(tuple(c))


def integrate_over_simplex(f, rule: QuadratureRule) -> complex:
    """Weighted sum of ``f`` over the rule nodes.

    ``f`` takes a ``SimplexPoint``.  Exact on polynomials within the rule's
    degree; the summation order is fixed by the node order, so results are
    deterministic.
    """
    vals = np.array([f(SimplexPoint(tuple(row))) for row in rule.nodes])
    return complex(np.sum(rule.weights * vals))
