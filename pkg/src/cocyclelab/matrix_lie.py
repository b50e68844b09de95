"""Matrix Lie group/algebra primitives.

Group elements and algebra elements are thin validated wrappers around
complex square matrices; every operation also accepts bare ndarrays.  The
exponential/logarithm pair, the left-trivialized derivative of exp, the
symmetrized-trace invariant polynomials, and the Maurer-Cartan evaluations
here are the building blocks for all form constructions in the package.

All functions are pure; values are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import matfun

__all__ = [
    "LieError",
    "SpectrumOutOfDomain",
    "SingularGroupElement",
    "ArityMismatch",
    "AlgebraElement",
    "GroupElement",
    "InvariantPolynomial",
    "as_matrix",
    "exp_map",
    "log_map",
    "dexp",
    "eval_invariant_poly",
    "maurer_cartan",
    "adjoint",
    "random_algebra",
    "random_group",
]


class LieError(Exception):
    pass


class SpectrumOutOfDomain(LieError):
    """Principal logarithm does not exist for this spectrum."""


class SingularGroupElement(LieError):
    pass


class ArityMismatch(LieError):
    pass


def as_matrix(x) -> np.ndarray:
    """Unwrap ``AlgebraElement``/``GroupElement`` or pass ndarrays through."""
    if isinstance(x, (AlgebraElement, GroupElement)):
        return x.entries
    return np.asarray(x, dtype=np.complex128)


@dataclass(frozen=True)
class AlgebraElement:
    """Complex n x n matrix playing the role of a Lie algebra element."""

    entries: np.ndarray
    skew_hermitian: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("algebra element must be a square matrix")
        if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise ValueError("algebra element has non-finite entries")
        if self.skew_hermitian and np.abs(m + m.conj().T).max() > 1e-12:
            raise ValueError("matrix is not skew-Hermitian to 1e-12")
        object.__setattr__(self, "entries", m)
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class GroupElement:
    """Invertible complex n x n matrix; optionally flagged near-identity."""

    entries: np.ndarray
    near_identity: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("group element must be a square matrix")
        if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise ValueError("group element has non-finite entries")
        d = abs(np.linalg.det(m))
        if not (1e-6 <= d <= 1e6):
            raise SingularGroupElement(f"|det| = {d:.3e} outside [1e-6, 1e6]")
        if self.near_identity:
            lam = np.linalg.eigvals(m)
            if np.abs(lam - 1.0).max() >= 1.0:
                raise SpectrumOutOfDomain(
                    "near-identity flag requires the spectrum inside the unit disk around 1"
                )
        object.__setattr__(self, "entries", m)
        self.entries.setflags(write=False)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _sym_trace(mats: tuple[np.ndarray, ...]) -> complex:
    """(1/p!) sum over S_p of Tr of the product.

    Trace cyclicity: each cyclic class contains exactly one word starting
    with the first argument, so summing over permutations of the rest and
    dividing by (p-1)! is the full symmetrized trace.
    """
    p = len(mats)
    if p == 1:
        return complex(np.trace(mats[0]))
    total = 0.0 + 0.0j
    for perm in permutations(range(1, p)):
        prod = mats[0]
        for idx in perm:
            prod = prod @ mats[idx]
        total = total + np.trace(prod)
    return complex(total / math.factorial(p - 1))


@dataclass(frozen=True)
class InvariantPolynomial:
    """Degree-p symmetric Ad-invariant form: the symmetrized trace.

    P(X_1, ..., X_p) = (1/p!) sum_{tau in S_p} Tr(X_tau(1) ... X_tau(p)).
    """

    degree: int
    kind: str = "symmetrized_trace"

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if self.kind != "symmetrized_trace":
            raise ValueError(f"unknown invariant polynomial kind: {self.kind}")

    def __call__(self, *args) -> complex:
        return eval_invariant_poly(self, *args)


def eval_invariant_poly(poly: InvariantPolynomial, *args) -> complex:
    if len(args) != poly.degree:
        raise ArityMismatch(f"polynomial of degree {poly.degree} got {len(args)} arguments")
    return _sym_trace(tuple(as_matrix(a) for a in args))


def exp_map(x) -> GroupElement:
    """Matrix exponential."""
    return GroupElement(matfun.expm(as_matrix(x)))


def log_map(g, chart_radius: float | None = None) -> AlgebraElement:
    """Principal matrix logarithm of a near-identity element.

    Raises ``SpectrumOutOfDomain`` when an eigenvalue is outside the disk of
    radius 1 around 1, and optionally enforces ``||log g|| < chart_radius``.
    """
    m = as_matrix(g)
    lam = np.linalg.eigvals(m)
    if np.abs(lam - 1.0).max() >= 1.0:
        raise SpectrumOutOfDomain(
            f"eigenvalue at distance {np.abs(lam - 1.0).max():.3f} from 1; principal log chart requires < 1"
        )
    out = matfun.logm_ni(m, check=False)
    if chart_radius is not None and np.linalg.norm(out) >= chart_radius:
        raise SpectrumOutOfDomain(
            f"||log g|| = {np.linalg.norm(out):.3f} outside chart radius {chart_radius}"
        )
    return AlgebraElement(out)


def dexp(x, v) -> AlgebraElement:
    """Left-trivialized derivative of exp: exp(-X) d/ds exp(X + sV)|_0.

    dexp(0, V) = V, and dexp(X, X) = X.
    """
    xm, vm = as_matrix(x), as_matrix(v)
    val, frech = matfun.expm_frechet(xm, vm)
    return AlgebraElement(np.linalg.solve(val, frech))


def maurer_cartan(g, v, side: str = "left") -> AlgebraElement:
    """Maurer-Cartan evaluation: g^{-1} v (left form) or v g^{-1} (right form)."""
    gm, vm = as_matrix(g), as_matrix(v)
    if abs(np.linalg.det(gm)) < 1e-12:
        raise SingularGroupElement("group element is numerically singular")
    if side == "left":
        return AlgebraElement(np.linalg.solve(gm, vm))
    if side == "right":
        return AlgebraElement(np.linalg.solve(gm.T, vm.T).T)
    raise ValueError("side must be 'left' or 'right'")


def adjoint(g, x) -> AlgebraElement:
    """Ad_g X = g X g^{-1}."""
    gm, xm = as_matrix(g), as_matrix(x)
    return AlgebraElement(gm @ np.linalg.solve(gm.T, xm.T).T)


def random_algebra(rng: np.random.Generator, n: int, scale: float, real_form: str = "gl") -> np.ndarray:
    """Random algebra element, Frobenius norm approximately ``scale``.

    ``real_form`` selects gl(n, C), sl(n) (traceless), or su(n)
    (traceless skew-Hermitian).
    """
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    if real_form == "su":
        m = 0.5 * (m - m.conj().T)
        m = m - np.trace(m) / n * np.eye(n)
    elif real_form == "sl":
        m = m - np.trace(m) / n * np.eye(n)
    elif real_form != "gl":
        raise ValueError(f"unknown real form: {real_form}")
    nrm = np.linalg.norm(m)
    if nrm == 0.0:
        return m
    return m * (scale / nrm)


def random_group(rng: np.random.Generator, n: int, scale: float, real_form: str = "gl") -> np.ndarray:
    """Random near-identity group element exp(X) with ||X|| = scale."""
    return matfun.expm(random_algebra(rng, n, scale, real_form))
