"""Forward-mode directional derivatives (jets) of matrix-valued expressions.

A jet carries a value together with first derivatives along a set of named
directions and, optionally, mixed second derivatives along ordered pairs of
directions.  All payloads are numpy stacks, so one jet describes a whole
batch of points (samples x quadrature nodes) at once.

Only the operations needed by the simplex and form evaluations are provided:
products, inverses, scalar scaling, and the matrix exp/log.  Derivatives of
exp and log are exact (block embeddings and integral representations in
:mod:`cocyclelab.matfun`), not finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matfun

__all__ = ["SJet", "MJet", "mj_const", "sj_const", "mj_mul", "mj_inv", "mj_exp", "mj_log", "mj_scale"]


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass
class SJet:
    """Scalar jet: value plus derivatives, all broadcastable arrays."""

    val: np.ndarray
    d1: dict = field(default_factory=dict)
    d2: dict = field(default_factory=dict)

    def __add__(self, other):
        if isinstance(other, SJet):
            return SJet(
                self.val + other.val,
                _dict_add(self.d1, other.d1),
                _dict_add(self.d2, other.d2),
            )
        return SJet(self.val + other, dict(self.d1), dict(self.d2))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return SJet(-self.val, {k: -v for k, v in self.d1.items()}, {k: -v for k, v in self.d2.items()})

    def __sub__(self, other):
        if isinstance(other, SJet):
            return self + (-other)
        return SJet(self.val - other, dict(self.d1), dict(self.d2))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SJet):
            return SJet(
                self.val * other,
                {k: v * other for k, v in self.d1.items()},
                {k: v * other for k, v in self.d2.items()},
            )
        a, b = self, other
        d1 = {}
        for k in set(a.d1) | set(b.d1):
            d1[k] = _get(a.d1, k) * b.val + a.val * _get(b.d1, k)
        d2 = {}
        for x, y in set(a.d2) | set(b.d2) | _cross_pairs(a.d1, b.d1):
            d2[(x, y)] = (
                _get(a.d2, (x, y)) * b.val
                + a.val * _get(b.d2, (x, y))
                + _get(a.d1, x) * _get(b.d1, y)
                + _get(a.d1, y) * _get(b.d1, x)
            )
        return SJet(a.val * b.val, d1, d2)

    def __rmul__(self, other):
        return self.__mul__(other)

    def reciprocal(self):
        inv = 1.0 / self.val
        d1 = {k: -(inv * inv) * v for k, v in self.d1.items()}
        d2 = {}
        for x, y in set(self.d2) | _cross_pairs(self.d1, self.d1):
            d2[(x, y)] = -(inv * inv) * _get(self.d2, (x, y)) + 2.0 * inv**3 * _get(
                self.d1, x
            ) * _get(self.d1, y)
        return SJet(inv, d1, d2)

    def __truediv__(self, other):
        if isinstance(other, SJet):
            return self * other.reciprocal()
        return self * (1.0 / other)


def _get(d: dict, k):
    return d.get(k, 0.0)


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out[k] + v if k in out else v
    return out


def _cross_pairs(d1a: dict, d1b: dict) -> set:
    out = set()
    for x in d1a:
        for y in d1b:
            out.add(_pair(x, y))
    return out


@dataclass
class MJet:
    """Matrix jet: stacks ``(..., n, n)`` for value and derivatives."""

    val: np.ndarray
    d1: dict = field(default_factory=dict)
    d2: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.val.shape[-1]


def sj_const(x) -> SJet:
    return SJet(np.asarray(x, dtype=np.float64))


def mj_const(m: np.ndarray) -> MJet:
    return MJet(np.asarray(m, dtype=np.complex128))


def _mzero(shape):
    return np.zeros(shape, dtype=np.complex128)


def mj_mul(a: MJet, b: MJet) -> MJet:
    val = a.val @ b.val
    d1 = {}
    for k in set(a.d1) | set(b.d1):
        t = 0.0
        if k in a.d1:
            t = t + a.d1[k] @ b.val
        if k in b.d1:
            t = t + a.val @ b.d1[k]
        d1[k] = t
    d2 = {}
    for x, y in set(a.d2) | set(b.d2) | _cross_pairs(a.d1, b.d1) | _cross_pairs(b.d1, a.d1):
        t = 0.0
        if (x, y) in a.d2:
            t = t + a.d2[(x, y)] @ b.val
        if (x, y) in b.d2:
            t = t + a.val @ b.d2[(x, y)]
        if x in a.d1 and y in b.d1:
            t = t + a.d1[x] @ b.d1[y]
        if y in a.d1 and x in b.d1:
            t = t + a.d1[y] @ b.d1[x]
        d2[(x, y)] = t
    return MJet(val, d1, d2)


def mj_inv(a: MJet) -> MJet:
    inv = np.linalg.inv(a.val)
    d1 = {k: -inv @ v @ inv for k, v in a.d1.items()}
    d2 = {}
    for x, y in set(a.d2) | _cross_pairs(a.d1, a.d1):
        t = 0.0
        if (x, y) in a.d2:
            t = t - inv @ a.d2[(x, y)] @ inv
        if x in a.d1 and y in a.d1:
            t = t + inv @ a.d1[x] @ inv @ a.d1[y] @ inv
            t = t + inv @ a.d1[y] @ inv @ a.d1[x] @ inv
        d2[(x, y)] = t
    return MJet(inv, d1, d2)


def mj_scale(s: SJet, a: MJet) -> MJet:
    """Product of a scalar jet with a matrix jet."""
    sv = np.asarray(s.val)[..., None, None]
    val = sv * a.val
    d1 = {}
    for k in set(s.d1) | set(a.d1):
        t = 0.0
        if k in s.d1:
            t = t + np.asarray(s.d1[k])[..., None, None] * a.val
        if k in a.d1:
            t = t + sv * a.d1[k]
        d1[k] = t
    d2 = {}
    for x, y in set(s.d2) | set(a.d2) | _cross_pairs(s.d1, a.d1) | _cross_pairs(a.d1, s.d1):
        t = 0.0
        if (x, y) in s.d2:
            t = t + np.asarray(s.d2[(x, y)])[..., None, None] * a.val
        if (x, y) in a.d2:
            t = t + sv * a.d2[(x, y)]
        if x in s.d1 and y in a.d1:
            t = t + np.asarray(s.d1[x])[..., None, None] * a.d1[y]
        if y in s.d1 and x in a.d1:
            t = t + np.asarray(s.d1[y])[..., None, None] * a.d1[x]
        d2[(x, y)] = t
    return MJet(val, d1, d2)


def _broadcast_stack(a: MJet) -> MJet:
    """Broadcast value and derivative stacks to a common leading shape."""
    arrs = [a.val] + list(a.d1.values()) + list(a.d2.values())
    shape = np.broadcast_shapes(*[x.shape for x in arrs])
    val = np.broadcast_to(a.val, shape)
    d1 = {k: np.broadcast_to(v, shape) for k, v in a.d1.items()}
    d2 = {k: np.broadcast_to(v, shape) for k, v in a.d2.items()}
    return MJet(val, d1, d2)


def mj_exp(a: MJet) -> MJet:
    a = _broadcast_stack(a)
    val = matfun.expm(a.val)
    d1 = {}
    frech = {}
    for k, e in a.d1.items():
        _, l = matfun.expm_frechet(a.val, e)
        frech[k] = l
        d1[k] = l
    d2 = {}
    pairs = set(a.d2) | _cross_pairs(a.d1, a.d1)
    for x, y in pairs:
        t = 0.0
        if x in a.d1 and y in a.d1:
            t = t + matfun.expm_frechet2(a.val, a.d1[x], a.d1[y])
        if (x, y) in a.d2:
            _, l = matfun.expm_frechet(a.val, a.d2[(x, y)])
            t = t + l
        d2[(x, y)] = t
    return MJet(val, d1, d2)


def mj_log(a: MJet, nodes: int = 24, check: bool = True) -> MJet:
    a = _broadcast_stack(a)
    pairs = set(a.d2) | _cross_pairs(a.d1, a.d1)
    d2in = {p: a.d2.get(p) for p in pairs}
    val, d1, d2 = matfun.logm_ni_frechet(a.val, a.d1, d2in, nodes=nodes, check=check)
    return MJet(val, d1, d2)
