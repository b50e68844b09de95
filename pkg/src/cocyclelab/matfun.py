"""Batched matrix functions: exp, principal log, and their directional derivatives.

Everything here works on stacks of square matrices with arbitrary leading
(broadcast) dimensions, which is what makes the form evaluations in the rest
of the package fast: a whole grid of sample points x quadrature nodes goes
through a single call.

The exponential is a scaling-and-squaring Pade approximant with the degree
chosen from the largest 1-norm in the stack.  The logarithm and its Frechet
derivatives use the integral representations

    log A           = int_0^1 (A - I) [s (A - I) + I]^{-1} ds
    Dlog_A[E]       = int_0^1 B_s^{-1} E B_s^{-1} ds,        B_s = I + s (A - I)
    D2log_A[E, F]   = -int_0^1 s (B_s^{-1} F B_s^{-1} E B_s^{-1}
                                + B_s^{-1} E B_s^{-1} F B_s^{-1}) ds

evaluated with Gauss-Legendre quadrature.  The integrands are analytic with
poles at s = 1/(1 - lambda) for eigenvalues lambda of A; for the near-identity
matrices handled here (spectrum within distance ~0.8 of 1) a modest node
count is accurate to machine precision.

Frechet derivatives of exp use block-triangular embeddings:
expm([[A, E], [0, A]]) carries Dexp_A[E] in its top-right block, and the
ordered 3x3-block embedding yields the second derivative.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "expm",
    "expm_frechet",
    "expm_frechet2",
    "logm_ni",
    "logm_ni_frechet",
    "LogDomainError",
]

# Higham's theta bounds for Pade degrees 3, 5, 7, 9, 13 (double precision).
_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}

_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ),
    13: (
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ),
}


class LogDomainError(ValueError):
    """Matrix is outside the domain where the principal log is computed."""


def _one_norm_max(a: np.ndarray) -> float:
    """Largest 1-norm over the stack."""
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=-2).max())


def _eye_like(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    return np.broadcast_to(np.eye(n, dtype=a.dtype), a.shape)


def _pade(a: np.ndarray, m: int) -> np.ndarray:
    b = _PADE_B[m]
    n = a.shape[-1]
    ident = np.eye(n, dtype=a.dtype)
    a2 = a @ a
    if m == 13:
        a4 = a2 @ a2
        a6 = a4 @ a2
        u = a @ (
            a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
            + b[7] * a6
            + b[5] * a4
            + b[3] * a2
            + b[1] * ident
        )
        v = (
            a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
            + b[6] * a6
            + b[4] * a4
            + b[2] * a2
            + b[0] * ident
        )
    else:
        powers = [ident, a2]
        while 2 * len(powers) < m + 1:
            powers.append(powers[-1] @ a2)
        u = sum(b[2 * k + 1] * powers[k] for k in range((m + 1) // 2))
        u = a @ u
        v = sum(b[2 * k] * powers[k] for k in range(m // 2 + 1))
    return np.linalg.solve(v - u, v + u)


def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a stack ``(..., n, n)``."""
    a = np.asarray(a)
    if a.dtype != np.complex128:
        a = a.astype(np.complex128)
    norm = _one_norm_max(a)
    if not np.isfinite(norm):
        raise ValueError("non-finite entries in expm input")
    for m in (3, 5, 7, 9):
        if norm <= _THETA[m]:
            return _pade(a, m)
    s = max(0, int(np.ceil(np.log2(norm / _THETA[13]))))
    r = _pade(a / (2.0**s), 13)
    for _ in range(s):
        r = r @ r
    return r


def _block2(a: np.ndarray, e: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    a, e = np.broadcast_arrays(a, e)
    blk = np.zeros(a.shape[:-2] + (2 * n, 2 * n), dtype=np.complex128)
    blk[..., :n, :n] = a
    blk[..., :n, n:] = e
    blk[..., n:, n:] = a
    return blk


def expm_frechet(a: np.ndarray, e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(exp(a), Dexp_a[e])`` for stacks."""
    n = np.asarray(a).shape[-1]
    big = expm(_block2(a, e))
    return big[..., :n, :n], big[..., :n, n:]


def expm_frechet2(a: np.ndarray, e: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Second derivative ``d^2/ds dr exp(a + s e + r f)`` at ``s = r = 0``.

    Uses two ordered 3x3-block exponentials; the (0, 2) block of the ordered
    embedding sums the words with e strictly left of f, so the symmetric
    second derivative is the sum of both orders.
    """
    a = np.asarray(a)
    n = a.shape[-1]
    a, e, f = np.broadcast_arrays(a, e, f)
    out = 0.0
    for x, y in ((e, f), (f, e)):
        blk = np.zeros(a.shape[:-2] + (3 * n, 3 * n), dtype=np.complex128)
        blk[..., :n, :n] = a
        blk[..., n : 2 * n, n : 2 * n] = a
        blk[..., 2 * n :, 2 * n :] = a
        blk[..., :n, n : 2 * n] = x
        blk[..., n : 2 * n, 2 * n :] = y
        out = out + expm(blk)[..., :n, 2 * n :]
    return out


def _gauss_legendre_01(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def _check_log_domain(a: np.ndarray, radius: float = 0.85) -> None:
    """Guard that the integral representation of log converges fast.

    Cheap Frobenius test first; only matrices failing it get an eigenvalue
    check against the disk ``|lambda - 1| <= radius``.
    """
    e = a - _eye_like(a)
    fro = np.linalg.norm(e, axis=(-2, -1))
    bad = fro > radius
    if not np.any(bad):
        return
    lam = np.linalg.eigvals(np.asarray(a)[bad] if a.ndim > 2 else a)
    if np.abs(lam - 1.0).max() > radius:
        raise LogDomainError(
            "matrix spectrum too far from the identity for the principal log "
            f"(max |lambda - 1| = {np.abs(lam - 1.0).max():.3f} > {radius})"
        )


def logm_ni(a: np.ndarray, nodes: int = 24, check: bool = True) -> np.ndarray:
    """Principal log of a stack of near-identity matrices."""
    a = np.asarray(a, dtype=np.complex128)
    if check:
        _check_log_domain(a)
    e = a - _eye_like(a)
    s, w = _gauss_legendre_01(nodes)
    out = np.zeros_like(e)
    ident = _eye_like(a)
    for si, wi in zip(s, w):
        out = out + wi * np.linalg.solve(ident + si * e, e)
    return out


def logm_ni_frechet(
    a: np.ndarray,
    d1: dict,
    d2: dict | None = None,
    nodes: int = 24,
    check: bool = True,
):
    """Log with first (and optionally mixed second) directional derivatives.

    ``d1`` maps direction keys to derivative stacks of ``a``; ``d2`` maps
    ordered key pairs ``(x, y)`` to mixed second derivatives of ``a``.
    Returns ``(log a, d1 of log, d2 of log)`` with the same keys.
    """
    a = np.asarray(a, dtype=np.complex128)
    if check:
        _check_log_domain(a)
    e = a - _eye_like(a)
    s, w = _gauss_legendre_01(nodes)
    val = np.zeros_like(e)
    out1 = {k: 0.0 for k in d1}
    pairs = list(d2.keys()) if d2 else []
    out2 = {k: 0.0 for k in pairs}
    for si, wi in zip(s, w):
        binv = np.linalg.inv(_eye_like(a) + si * e)
        val = val + wi * (e @ binv)
        mid = {k: binv @ np.asarray(v, dtype=np.complex128) @ binv for k, v in d1.items()}
        for k, m in mid.items():
            out1[k] = out1[k] + wi * m
        for x, y in pairs:
            term = 0.0
            if (x, y) in d2 and d2[(x, y)] is not None:
                term = binv @ np.asarray(d2[(x, y)], dtype=np.complex128) @ binv
            if x in d1 and y in d1:
                term = term - si * (
                    mid[y] @ np.asarray(d1[x]) @ binv + mid[x] @ np.asarray(d1[y]) @ binv
                )
            out2[(x, y)] = out2[(x, y)] + wi * term
    return val, out1, out2
