"""Cubature rules on the torus and exact worst-case integration errors.

Rank-1 lattice rules (Korobov, Fibonacci) are stored with exact integer
node data, so dual-lattice membership k.a = 0 (mod m) is decided in integer
arithmetic.  Worst-case errors over the p = 2 convolution classes and the
Fourier-hull classes reduce to weighted sums over the dual lattice; the sums
over the truncation box are accumulated by residue class and the infinite
remainder is evaluated in closed form with Hurwitz zeta functions, so each
report brackets the untruncated quantity as [value, value + tail].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import zeta

from .dyadic import FOURIER_HULL, SOBOLEV_W, ClassSpec
from .kernels import DivergenceError

MAX_FIBONACCI_INDEX = 90  # b_91 overflows a signed 64-bit integer


@dataclass(frozen=True)
class LatticeInfo:
    """Rank-1 lattice descriptor: modulus m and generator a."""

    modulus: int
    generator: tuple

    def __post_init__(self):
        m = int(self.modulus)
        a = tuple(int(x) % m if m > 1 else 0 for x in self.generator)
        if m < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "modulus", m)
        object.__setattr__(self, "generator", a)

    def node_integers(self):
        """Integer node coordinates (mu * a_j) mod m for mu = 1..m."""
        mu = np.arange(1, self.modulus + 1, dtype=np.int64)
        return (mu[:, None] * np.asarray(self.generator, dtype=np.int64)) % self.modulus


@dataclass(frozen=True)
class CubatureRule:
    """m nodes on [0, 2pi)^d with weights; optionally a lattice descriptor."""

    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    lattice: LatticeInfo | None = None

    def __post_init__(self):
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=float))
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape[0] < 1 or weights.shape != (nodes.shape[0],):
            raise ValueError("need m >= 1 nodes with one weight each")
        if self.lattice is not None:
            regen = 2.0 * np.pi * self.lattice.node_integers() / self.lattice.modulus
            if regen.shape != nodes.shape or not np.allclose(regen, nodes, atol=1e-12):
                raise ValueError("lattice descriptor does not regenerate the nodes")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def m(self):
        return self.nodes.shape[0]

    @property
    def dim(self):
        return self.nodes.shape[1]

    @property
    def equal_weight(self):
        return bool(np.all(self.weights == 1.0 / self.m))


@dataclass(frozen=True)
class ErrorReport:
    """Worst-case error value with truncation box, tail bound, and method."""

    value: float
    trunc: tuple
    tail: float
    method: str  # 'dual_closed_form' | 'truncated_sum' | 'empirical'

    def __post_init__(self):
        if self.tail < 0:
            raise ValueError("tail bound must be >= 0")

    @property
    def upper(self):
        return self.value + self.tail


def fibonacci_number(n):
    n = int(n)
    if n < 0:
        raise ValueError("index must be >= 0")
    if n > MAX_FIBONACCI_INDEX:
        raise OverflowError(f"b_{n} exceeds the exact 64-bit integer range")
    b, c = 1, 1
    for _ in range(n):
        b, c = c, b + c
    return b


def korobov_rule(m, a):
    """Equal-weight rank-1 rule with nodes 2 pi {mu a / m}, mu = 1..m."""
    m = int(m)
    if m < 1:
        raise ValueError("m must be >= 1")
    info = LatticeInfo(m, tuple(np.atleast_1d(a)))
    nodes = 2.0 * np.pi * info.node_integers() / m
    return CubatureRule(nodes, np.full(m, 1.0 / m), lattice=info)


def fibonacci_rule(n):
    """The d = 2 rule with m = b_n points and generator (1, b_{n-1})."""
    n = int(n)
    if n < 2:
        raise ValueError("index must be >= 2")
    return korobov_rule(fibonacci_number(n), (1, fibonacci_number(n - 1)))


def random_rule(m, d, seed):
    """m i.i.d. uniform nodes with equal weights (Monte Carlo baseline)."""
    rng = np.random.default_rng(seed)
    nodes = rng.uniform(0.0, 2.0 * np.pi, size=(int(m), int(d)))
    return CubatureRule(nodes, np.full(int(m), 1.0 / int(m)))


def rule_from_nodes(nodes, weights=None):
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    if weights is None:
        weights = np.full(nodes.shape[0], 1.0 / nodes.shape[0])
    return CubatureRule(nodes, weights)


def default_trunc(d):
    """Per-coordinate dual-enumeration bound keeping work around a second."""
    return 1024 if d <= 2 else (64 if d == 3 else 16)


def _as_trunc(trunc, d):
    if trunc is None:
        trunc = default_trunc(d)
    t = tuple(int(x) for x in (trunc if np.iterable(trunc) else (trunc,) * d))
    if len(t) != d or any(x < 1 for x in t):
        raise ValueError("truncation box must have d positive components")
    return t


def dual_lattice(rule, trunc):
    """All k with |k_j| <= K and k.a = 0 (mod m), as an (n, d) int array."""
    if rule.lattice is None:
        raise ValueError("rule has no lattice descriptor")
    m, a = rule.lattice.modulus, rule.lattice.generator
    t = _as_trunc(trunc, rule.dim)
    res = np.zeros((1,) * rule.dim, dtype=np.int64)
    for j, (K, aj) in enumerate(zip(t, a)):
        k = np.arange(-K, K + 1, dtype=np.int64)
        shape = (1,) * j + (2 * K + 1,) + (1,) * (rule.dim - j - 1)
        res = (res + (k * aj).reshape(shape)) % m
    ks = np.argwhere(res % m == 0)
    return ks - np.asarray(t, dtype=np.int64)


def apply_rule(rule, f):
    """The weighted node sum sum_j lambda_j f(xi^j)."""
    if f.dim != rule.dim:
        raise ValueError("dimension mismatch")
    vals = f.evaluate(rule.nodes)
    out = complex(vals @ rule.weights)
    return out.real if abs(out.imag) < 1e-14 else out


def character_sum(rule, trunc=None, ks=None):
    """G(k) = sum_j lambda_j e^{i k.xi^j} by direct node summation.

    With ``trunc`` the full box |k_j| <= K_j is returned as an ndarray
    (factorized per-coordinate exponentials, summed over nodes); with ``ks``
    an (n, d) frequency list is evaluated row by row.  No congruence
    arithmetic is used, so this doubles as the brute-force oracle for
    lattice rules.
    """
    if (trunc is None) == (ks is None):
        raise ValueError("pass exactly one of trunc, ks")
    if ks is not None:
        ks = np.atleast_2d(np.asarray(ks, dtype=float))
        out = np.empty(ks.shape[0], dtype=complex)
        chunk = max(1, int(2 ** 22 // max(1, rule.m)))
        for lo in range(0, ks.shape[0], chunk):
            out[lo:lo + chunk] = np.exp(1j * (ks[lo:lo + chunk] @ rule.nodes.T)) @ rule.weights
        return out
    t = _as_trunc(trunc, rule.dim)
    E = [np.exp(1j * np.outer(np.arange(-K, K + 1), rule.nodes[:, j]))
         for j, K in enumerate(t)]
    acc = E[0] * rule.weights  # (B_1, m)
    for j in range(1, rule.dim - 1):
        acc = (acc[..., None, :] * E[j]).reshape(-1, rule.m)
    if rule.dim == 1:
        return acc.sum(axis=1)
    G = acc.reshape(-1, rule.m) @ E[-1].T
    return G.reshape(tuple(2 * K + 1 for K in t))


# -- dual-lattice weighted sums by residue class ---------------------------


def _residue_box_sums(m, a, trunc, exponent):
    """Per-coordinate sums of max(1,|k|)^-e over |k| <= K, by residue of k a_j."""
    out = []
    for K, aj in zip(trunc, a):
        k = np.arange(-K, K + 1, dtype=np.int64)
        w = np.maximum(1.0, np.abs(k).astype(float)) ** (-exponent)
        buckets = np.zeros(m)
        np.add.at(buckets, (k * aj) % m, w)
        out.append(buckets)
    return out


def _residue_full_sums(m, a, exponent):
    """Same sums over all of Z, in closed form via Hurwitz zeta."""
    base = np.zeros(m)
    base[0] = 1.0 + 2.0 * m ** (-exponent) * zeta(exponent)
    if m > 1:
        c = np.arange(1, m)
        base[1:] = m ** (-exponent) * (zeta(exponent, c / m) + zeta(exponent, (m - c) / m))
    out = []
    for aj in a:
        buckets = np.zeros(m)
        if aj % m == 0:
            # every k maps to residue 0
            buckets[0] = base.sum()
        else:
            inv = pow(int(aj), -1, m) if m > 1 else 0
            # residue rho is hit by k = rho * a^{-1} mod m
            idx = (np.arange(m) * inv) % m if m > 1 else np.zeros(1, dtype=int)
            buckets = base[idx]
        out.append(buckets)
    return out


def _combine_residues(buckets):
    """Value at residue 0 of the cyclic convolution of the per-axis buckets."""
    m = buckets[0].shape[0]
    T = np.zeros(m)
    T[0] = 1.0
    for b in buckets:
        T = np.fft.irfft(np.fft.rfft(T) * np.fft.rfft(b), n=m)
    return float(T[0])


def dual_weight_sum(m, a, exponent, trunc=None, full=False):
    """sum over nonzero dual k of prod_j max(1,|k_j|)^(-exponent).

    Truncated to the box when full is false, over all of Z^d otherwise
    (requires exponent > 1 for convergence).
    """
    if full and exponent <= 1:
        raise DivergenceError("full dual sum requires exponent > 1")
    d = len(a)
    m = int(m)
    if m == 1:
        # every frequency is dual
        if full:
            sums = [1.0 + 2.0 * zeta(exponent)] * d
        else:
            t = _as_trunc(trunc, d)
            sums = [1.0 + 2.0 * np.sum(np.arange(1.0, K + 1) ** (-exponent)) for K in t]
        return float(np.prod(sums) - 1.0)
    if full:
        buckets = _residue_full_sums(m, a, exponent)
    else:
        buckets = _residue_box_sums(m, a, _as_trunc(trunc, d), exponent)
    return _combine_residues(buckets) - 1.0


def _check_convergence(spec):
    if spec.family == SOBOLEV_W:
        if spec.p != 2:
            raise ValueError("closed-form worst case needs the p = 2 convolution class")
        if 2.0 * spec.r <= 1.0:
            raise DivergenceError("SobolevW worst case requires 2r > 1")
        return 2.0 * spec.r
    if spec.family == FOURIER_HULL:
        if spec.r <= 1.0:
            raise DivergenceError("FourierHull worst case requires r > 1")
        return spec.r
    raise ValueError(f"unsupported family {spec.family!r} for worst-case error")


def worst_case_error(rule, spec, trunc=None):
    """Worst-case integration error of a fixed rule over a class.

    With G(k) the rule's exponential sums and w(k) = prod max(1,|k_j|)^{-r}:
    the p = 2 convolution class gives sqrt(sum_{k != 0} w^2 |G|^2 + |1-G(0)|^2),
    the Fourier hull gives B (sum_{k != 0} w |G| + |1-G(0)|).  Lattice rules
    with equal weights use the exact dual-lattice path with a closed-form
    infinite tail; other rules use a truncated direct sum with the |G| <= 1
    bound outside the box.
    """
    exponent = _check_convergence(spec)
    t = _as_trunc(trunc, rule.dim)
    if rule.lattice is not None and rule.equal_weight:
        m, a = rule.lattice.modulus, rule.lattice.generator
        s_box = dual_weight_sum(m, a, exponent, trunc=t)
        s_full = dual_weight_sum(m, a, exponent, full=True)
        s_full = max(s_full, s_box)  # guard roundoff in the closed form
        if spec.family == SOBOLEV_W:
            value = float(np.sqrt(s_box))
            tail = float(np.sqrt(s_full)) - value
        else:
            value = spec.B * s_box
            tail = spec.B * (s_full - s_box)
        return ErrorReport(value, t, max(tail, 0.0), "dual_closed_form")

    G = character_sum(rule, trunc=t)
    w = np.ones(())
    for j, K in enumerate(t):
        wj = np.maximum(1.0, np.abs(np.arange(-K, K + 1)).astype(float)) ** (-spec.r)
        w = np.multiply.outer(w, wj) if j else wj
    center = tuple(t)
    G0 = G[center]
    absG = np.abs(G)
    lam = float(np.sum(np.abs(rule.weights)))
    if spec.family == SOBOLEV_W:
        total = np.sum((w * absG) ** 2) - (w[center] * absG[center]) ** 2
        value = float(np.sqrt(total + abs(1.0 - G0) ** 2))
        out_mass = _outside_box_mass(t, 2.0 * spec.r)
        tail = lam * float(np.sqrt(out_mass))
    else:
        total = np.sum(w * absG) - w[center] * absG[center]
        value = spec.B * float(total + abs(1.0 - G0))
        tail = spec.B * lam * _outside_box_mass(t, spec.r)
    return ErrorReport(value, t, tail, "truncated_sum")


def _outside_box_mass(trunc, exponent):
    """sum of prod max(1,|k_j|)^-e over k outside the box, in closed form."""
    full = [1.0 + 2.0 * zeta(exponent)] * len(trunc)
    box = [1.0 + 2.0 * float(np.sum(np.arange(1.0, K + 1) ** (-exponent)))
           for K in trunc]
    return float(np.prod(full) - np.prod(box))


# -- component-by-component generator search -------------------------------


def _is_prime(m):
    if m < 2:
        return False
    for q in range(2, int(m ** 0.5) + 1):
        if m % q == 0:
            return False
    return True


def cbc_search(m, d, r, trunc=None):
    """Greedy component-by-component generator for the Fourier-hull dual sum.

    a_1 = 1; each later component scans a_j in 1..m-1 exhaustively and keeps
    the value minimizing the truncated dual sum of the rule built from the
    components so far, ties broken by the smallest a_j.  Deterministic.
    """
    m = int(m)
    if not _is_prime(m):
        raise ValueError("m must be prime")
    if r <= 1.0:
        raise DivergenceError("dual sum requires r > 1")
    d = int(d)
    t = _as_trunc(trunc, d)

    K0 = max(t)
    k = np.arange(-K0, K0 + 1, dtype=np.int64)
    w = np.maximum(1.0, np.abs(k).astype(float)) ** (-r)
    base = np.zeros(m)
    np.add.at(base, k % m, w)  # residue buckets for generator value 1

    a = [1]
    T = base.copy()  # residue-class sums for the components chosen so far
    rho = np.arange(m)
    for _ in range(1, d):
        best_a, best_score = None, None
        for cand in range(1, m):
            inv = pow(cand, -1, m)
            score = float(T @ base[((-rho) * inv) % m])
            if best_score is None or score < best_score - 1e-15:
                best_a, best_score = cand, score
        a.append(best_a)
        T = np.fft.irfft(np.fft.rfft(T) * np.fft.rfft(base[(rho * pow(best_a, -1, m)) % m]), n=m)
    return tuple(a)


# -- Monte Carlo baseline --------------------------------------------------


@dataclass(frozen=True)
class MCBaseline:
    """Empirical equal-weight MC integration errors vs the Hoeffding bound."""

    m: int
    trials: int
    M: float
    errors: np.ndarray = field(repr=False)
    etas: tuple = ()
    bounds: tuple = ()
    exceedance: tuple = ()


def hoeffding_bound(m, eta, M):
    """2 exp(-m eta^2 / (8 M^2)) for |f| <= M."""
    return 2.0 * np.exp(-m * eta ** 2 / (8.0 * M ** 2))


def mc_baseline(f, m, trials, etas, M, seed, oversample=8):
    """Distribution of |mean(f) - MC average| over random m-point sets.

    The uniform bound ||f||_inf <= M is certified on an oversampled grid
    before sampling; exceedance frequencies are reported per eta next to the
    Hoeffding bound.
    """
    from .trig import lp_norm

    sup = float(lp_norm(f, np.inf, oversample=oversample))
    if sup > M * (1.0 + 1e-9):
        raise ValueError(f"grid-certified sup |f| = {sup:.6g} exceeds M = {M}")
    mean = f.integral().real
    rng = np.random.default_rng(seed)
    m, trials = int(m), int(trials)
    errors = np.empty(trials)
    batch = max(1, int(2 ** 20 // m))
    for lo in range(0, trials, batch):
        n = min(batch, trials - lo)
        pts = rng.uniform(0.0, 2.0 * np.pi, size=(n * m, f.dim))
        vals = f.evaluate(pts).real.reshape(n, m)
        errors[lo:lo + n] = np.abs(mean - vals.mean(axis=1))
    etas = tuple(float(e) for e in np.atleast_1d(etas))
    bounds = tuple(float(hoeffding_bound(m, e, M)) for e in etas)
    exceed = tuple(float(np.mean(errors >= e)) for e in etas)
    return MCBaseline(m, trials, float(M), errors, etas, bounds, exceed)
