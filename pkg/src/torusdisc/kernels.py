"""Classical trigonometric kernels, built directly in coefficient space.

Dirichlet D_j, Fejer K_j, de la Vallee Poussin V_j, the dyadic block
kernels A_s assembled from V differences, and truncated Bernoulli kernels
F_r whose coefficients decay like |k|^{-r}.  Multivariate versions are
tensor products (see trig.tensor).
"""

from __future__ import annotations

import numpy as np

from .trig import TrigPoly, tensor


class DivergenceError(ValueError):
    """A requested series or tail bound does not converge."""


def dirichlet(j):
    """D_j(x) = sum_{|k| <= j} e^{ikx}."""
    j = int(j)
    if j < 0:
        raise ValueError("order must be >= 0")
    return TrigPoly((j,), np.ones(2 * j + 1, dtype=complex))


def fejer(j):
    """K_j(x) = j^{-1} sum_{k=0}^{j-1} D_k(x); coefficients 1 - |k|/j, |k| < j."""
    j = int(j)
    if j < 1:
        raise ValueError("order must be >= 1")
    k = np.arange(-(j - 1), j)
    return TrigPoly((j - 1,), (1.0 - np.abs(k) / j).astype(complex))


def vallee_poussin(j):
    """V_j(x) = j^{-1} sum_{l=j}^{2j-1} D_l(x), degree 2j - 1.

    Coefficient at k counts how many of the averaged Dirichlet kernels
    cover |k|: 1 for |k| <= j, then a linear ramp down to 0 at |k| = 2j.
    """
    j = int(j)
    if j < 1:
        raise ValueError("order must be >= 1")
    k = np.abs(np.arange(-(2 * j - 1), 2 * j))
    coeffs = (2 * j - np.maximum(j, k)) / j
    return TrigPoly((2 * j - 1,), coeffs.astype(complex))


def block_kernel(s):
    """Univariate dyadic block kernel A_s.

    A_0 = 1, A_1 = V_1 - 1, A_s = V_{2^{s-1}} - V_{2^{s-2}} for s >= 2; for
    s >= 2 the nonzero coefficients sit in 2^{s-2} < |k| < 2^s.
    """
    s = int(s)
    if s < 0:
        raise ValueError("block index must be >= 0")
    if s == 0:
        return TrigPoly((0,), np.ones(1, dtype=complex))
    if s == 1:
        v = vallee_poussin(1)
        return v - TrigPoly.constant(1.0)
    return vallee_poussin(2 ** (s - 1)) - vallee_poussin(2 ** (s - 2))


def block_kernel_nd(s):
    """Tensor-product block kernel A_s for a multi-index s."""
    return tensor(*[block_kernel(sj) for sj in np.atleast_1d(s)])


def bernoulli_tail_bound(r, trunc, dim=1):
    """Upper bound on the l2 mass of discarded Bernoulli coefficients.

    Per coordinate: sum_{|k| > K} k^{-2r} <= 2 K^{1-2r} / (2r - 1), valid for
    2r > 1; composed across coordinates through the kept per-coordinate mass.
    """
    if 2 * r <= 1:
        raise DivergenceError("tail bound requires 2r > 1")
    trunc = int(trunc)
    tau = 2.0 * trunc ** (1.0 - 2.0 * r) / (2.0 * r - 1.0)
    k = np.arange(1, trunc + 1, dtype=float)
    sigma = 1.0 + 2.0 * np.sum(k ** (-2.0 * r))
    return float((sigma + tau) ** dim - sigma ** dim)


def bernoulli(r, trunc, dim=1, with_tail=True):
    """Truncated Bernoulli kernel F_r on |k_j| <= K, tensorized to dim.

    F_r(x) = 1 + 2 sum_{k>=1} k^{-r} cos(kx - r pi/2), so the coefficient at
    k > 0 is k^{-r} e^{-i r pi/2} and conjugate-symmetric at -k.  Returns
    (poly, tail) where tail bounds the l2 mass of the dropped coefficients
    (None when with_tail is false).
    """
    if r <= 0:
        raise ValueError("smoothness r must be > 0")
    trunc = int(trunc)
    if trunc < 1:
        raise ValueError("truncation must be >= 1")
    k = np.arange(1, trunc + 1, dtype=float)
    pos = k ** (-r) * np.exp(-1j * r * np.pi / 2.0)
    coeffs = np.concatenate([np.conj(pos[::-1]), [1.0 + 0j], pos])
    f = TrigPoly((trunc,), coeffs)
    if dim > 1:
        f = tensor(*([f] * int(dim)))
    tail = bernoulli_tail_bound(r, trunc, dim) if with_tail else None
    return f, tail
