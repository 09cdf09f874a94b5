"""Dyadic block analysis and mixed-smoothness class machinery.

Blocks are indexed by s in N_0^d; the block window in each coordinate is the
coefficient profile of the univariate kernel A_s (support {0} for s = 0,
{-1, 1} for s = 1, and 2^{s-2} < |k| < 2^s for s >= 2).  The H-class
seminorm is sup_s 2^{r ||s||_1} ||A_s(f)||_p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .kernels import block_kernel
from .trig import TrigPoly, lp_norm, product

SOBOLEV_W = "sobolev_w"
HOELDER_H = "hoelder_h"
FOURIER_HULL = "fourier_hull"
FAMILIES = (SOBOLEV_W, HOELDER_H, FOURIER_HULL)


class UndefinedRatioError(ZeroDivisionError):
    """Quasi-algebra ratio with a vanishing denominator."""


@dataclass(frozen=True)
class BlockIndex:
    """Dyadic block address s in N_0^d."""

    s: tuple

    def __post_init__(self):
        s = tuple(int(x) for x in (self.s if np.iterable(self.s) else (self.s,)))
        if any(x < 0 for x in s):
            raise ValueError("block components must be >= 0")
        object.__setattr__(self, "s", s)

    @property
    def dim(self):
        return len(self.s)

    @property
    def l1(self):
        return sum(self.s)


@dataclass(frozen=True)
class ClassSpec:
    """Function-class descriptor: family, smoothness r, L_p, radius B, bound M."""

    family: str
    r: float
    p: float
    B: float = 1.0
    M: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.r <= 0:
            raise ValueError("smoothness r must be > 0")
        if self.p < 1:
            raise ValueError("integrability p must be >= 1")
        if self.B <= 0:
            raise ValueError("radius B must be > 0")
        if self.M < 0:
            raise ValueError("uniform bound M must be >= 0")

    @property
    def continuous(self):
        """r > 1/p: members are continuous and uniformly bounded."""
        return self.r > 1.0 / self.p


def _as_multi(s, dim=None):
    if isinstance(s, BlockIndex):
        s = s.s
    s = tuple(int(x) for x in (s if np.iterable(s) else (s,)))
    if dim is not None and len(s) != dim:
        raise ValueError(f"block index has {len(s)} components, expected {dim}")
    return s


def block_support_min(s):
    """Smallest |k| carrying a nonzero coefficient of the univariate A_s."""
    return 0 if s == 0 else (1 if s == 1 else 2 ** (s - 2) + 1)


def _profile_in_box(s, n):
    """Indices (into a 0..2n coefficient axis) and window values of A_s."""
    ker = block_kernel(s)
    deg = ker.box[0]
    k = np.arange(-min(deg, n), min(deg, n) + 1)
    vals = ker.coeffs[k + deg]
    keep = vals != 0
    return (k[keep] + n), vals[keep]


def blocks_for_box(box):
    """All block indices whose window intersects the coefficient box."""
    ranges = []
    for n in box:
        smax = 0
        while block_support_min(smax + 1) <= n:
            smax += 1
        ranges.append(range(smax + 1))
    return [BlockIndex(s) for s in itertools.product(*ranges)]


def _gathered(f, s):
    """(index arrays, windowed sub-coefficients) of f on block s, or None."""
    idx, prof = [], []
    for sj, n in zip(s, f.box):
        i, v = _profile_in_box(sj, n)
        if i.size == 0:
            return None
        idx.append(i)
        prof.append(v)
    sub = f.coeffs[np.ix_(*idx)].copy()
    for ax, v in enumerate(prof):
        sub *= v.reshape((1,) * ax + (-1,) + (1,) * (len(s) - ax - 1))
    return idx, sub


def block_project(f, s):
    """A_s(f): coefficientwise product with the block window of s.

    Returned on the intersection box min(f box, 2^{s_j} - 1).
    """
    s = _as_multi(s, f.dim)
    out_box = tuple(min(n, 2 ** sj - 1) if sj else 0 for sj, n in zip(s, f.box))
    out = TrigPoly.zeros(out_box)
    g = _gathered(f, s)
    if g is None:
        return out
    idx, sub = g
    c = np.zeros(out.coeffs.shape, dtype=complex)
    shifted = [i - n + m for i, n, m in zip(idx, f.box, out_box)]
    c[np.ix_(*shifted)] = sub
    return TrigPoly(out_box, c)


def _profile_segments(s, n):
    """Contiguous runs of the in-box window of A_s: list of (slice, values).

    Slices address a 0..2n coefficient axis; the window support has at most
    two runs (the negative and positive shells), so slice-based access stays
    cheap where generic fancy indexing would copy through an index array.
    """
    idx, vals = _profile_in_box(s, n)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) != 1) + 1
    out = []
    for chunk_i, chunk_v in zip(np.split(idx, breaks), np.split(vals, breaks)):
        out.append((slice(int(chunk_i[0]), int(chunk_i[-1]) + 1), chunk_v))
    return out


def reconstruct(f, cap):
    """Sum of block projections over s <= cap componentwise, on f's box."""
    cap = _as_multi(cap, f.dim)
    acc = np.zeros(f.coeffs.shape, dtype=complex)
    segs = [[_profile_segments(s, n) for s in range(c + 1)]
            for c, n in zip(cap, f.box)]
    for s in itertools.product(*[range(c + 1) for c in cap]):
        for parts in itertools.product(*[segs[j][sj] for j, sj in enumerate(s)]):
            sub = f.coeffs[tuple(sl for sl, _ in parts)].copy()
            for ax, (_, v) in enumerate(parts):
                sub *= v.reshape((1,) * ax + (-1,) + (1,) * (f.dim - ax - 1))
            acc[tuple(sl for sl, _ in parts)] += sub
    return TrigPoly(f.box, acc)


def block_norm(f, s, p, oversample=8):
    """||A_s(f)||_p; exact via Parseval for p = 2."""
    s = _as_multi(s, f.dim)
    g = _gathered(f, s)
    if g is None:
        return 0.0
    if p == 2:
        return float(np.sqrt(np.sum(np.abs(g[1]) ** 2)))
    return float(lp_norm(block_project(f, s), p, oversample=oversample))


def h_seminorm(f, r, p, oversample=8):
    """sup over blocks of 2^{r ||s||_1} ||A_s(f)||_p.

    Only blocks intersecting f's box are scanned; all others project to zero.
    Membership of f in the class of radius B holds iff the result is <= B.
    """
    best = 0.0
    for b in blocks_for_box(f.box):
        nrm = block_norm(f, b.s, p, oversample=oversample)
        if nrm:
            best = max(best, 2.0 ** (r * b.l1) * nrm)
    return best


def mixed_difference(f, t, l, e=None):
    """l-th mixed finite difference with steps t_j over the coordinates in e.

    In coefficient space each coordinate j in e multiplies the coefficient by
    (e^{i k_j t_j} - 1)^l; e = None means all coordinates, e = () the identity.
    """
    if l < 1:
        raise ValueError("difference order must be >= 1")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.shape != (f.dim,):
        raise ValueError("step vector dimension mismatch")
    e = tuple(range(f.dim)) if e is None else tuple(sorted(set(int(j) for j in e)))
    c = f.coeffs.copy()
    for j in e:
        k = np.arange(-f.box[j], f.box[j] + 1)
        mult = (np.exp(1j * k * t[j]) - 1.0) ** l
        c *= mult.reshape((1,) * j + (-1,) + (1,) * (f.dim - j - 1))
    return TrigPoly(f.box, c)


def _block_template_axes(s, n):
    """Per-coordinate frequency arrays of the block's full support, within n."""
    axes = []
    for sj in s:
        if sj == 0:
            k = np.array([0])
        elif sj == 1:
            k = np.array([-1, 1])
        else:
            pos = np.arange(2 ** (sj - 2) + 1, 2 ** sj)
            k = np.concatenate([-pos[::-1], pos])
        k = k[np.abs(k) <= n]
        axes.append(k)
    return axes


def sample_h_ball(spec, block_cap, seed, dim=None, oversample=8):
    """Boundary sample of the unit H-class ball.

    Builds f = sum_{||s||_inf <= cap} 2^{-r ||s||_1} g_s where g_s carries
    random Rademacher signs (real and imaginary, conjugate-symmetrized) on
    the full in-block frequency template, normalized to ||g_s||_2 = 1, then
    rescales f by its computed seminorm so that h_seminorm(f, r, p) = 1
    exactly.  Deterministic given the seed.
    """
    if spec.family != HOELDER_H:
        raise ValueError("sampler is defined for the Hoelder-type family only")
    if not spec.continuous:
        raise ValueError("sampler requires r > 1/p (continuous members)")
    d = int(dim) if dim is not None else 2
    cap = int(block_cap)
    n = 2 ** cap - 1
    rng = np.random.default_rng(seed)
    acc = np.zeros((2 * n + 1,) * d, dtype=complex)
    for s in itertools.product(range(cap + 1), repeat=d):
        axes = _block_template_axes(s, n)
        shape = tuple(a.size for a in axes)
        raw = (rng.choice([-1.0, 1.0], size=shape)
               + 1j * rng.choice([-1.0, 1.0], size=shape))
        flip = tuple(slice(None, None, -1) for _ in s)
        sym = 0.5 * (raw + np.conj(raw[flip]))  # real-valued polynomial
        if spec.p == 2:
            nrm = np.sqrt(np.sum(np.abs(sym) ** 2))
        else:
            nb = tuple(int(np.max(np.abs(a))) for a in axes)
            sub = np.zeros(tuple(2 * x + 1 for x in nb), dtype=complex)
            sub[np.ix_(*[a + x for a, x in zip(axes, nb)])] = sym
            nrm = float(lp_norm(TrigPoly(nb, sub), spec.p, oversample=oversample))
        if nrm == 0.0:
            continue
        scale = 2.0 ** (-spec.r * sum(s)) / nrm
        acc[np.ix_(*[a + n for a in axes])] += scale * sym
    f = TrigPoly((n,) * d, acc)
    h = h_seminorm(f, spec.r, spec.p, oversample=oversample)
    return f * (1.0 / h)


def quasi_algebra_ratio(f, g, r, p, oversample=8):
    """h_seminorm(fg) / (h_seminorm(f) h_seminorm(g)) via exact convolution."""
    if not (f.is_real() and g.is_real()):
        raise ValueError("quasi-algebra ratio is defined for real polynomials")
    hf = h_seminorm(f, r, p, oversample=oversample)
    hg = h_seminorm(g, r, p, oversample=oversample)
    if hf == 0.0 or hg == 0.0:
        raise UndefinedRatioError("seminorm denominator vanishes")
    fg = product(f, g)
    return h_seminorm(fg, r, p, oversample=oversample) / (hf * hg)
