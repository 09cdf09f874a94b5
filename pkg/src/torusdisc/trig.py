"""Trigonometric polynomials on the torus [0, 2pi)^d.

The measure is always the normalized one, dmu = dx / (2pi)^d, so the
exponentials e^{i k.x} are orthonormal and the mean of a polynomial is its
zero coefficient.  Coefficients live on a dense box |k_j| <= N_j stored as a
complex ndarray of shape (2 N_1 + 1, ..., 2 N_d + 1) with k = 0 in the middle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve


class AliasingError(ValueError):
    """Grid too small to resolve the requested coefficient box."""


class NormValue(float):
    """A norm value carrying a flag: exact (Parseval) or quadrature."""

    exact: bool

    def __new__(cls, value, exact):
        obj = super().__new__(cls, value)
        obj.exact = bool(exact)
        return obj


def _as_box(box):
    box = tuple(int(n) for n in (box if np.iterable(box) else (box,)))
    if any(n < 0 for n in box):
        raise ValueError(f"degree bounds must be >= 0, got {box}")
    return box


@dataclass(frozen=True)
class TrigPoly:
    """Fourier coefficients of a trigonometric polynomial on a degree box."""

    box: tuple
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        box = _as_box(self.box)
        object.__setattr__(self, "box", box)
        coeffs = np.asarray(self.coeffs, dtype=complex)
        expected = tuple(2 * n + 1 for n in box)
        if coeffs.shape != expected:
            raise ValueError(
                f"coefficient array shape {coeffs.shape} does not match box "
                f"{box} (expected {expected})"
            )
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self):
        return len(self.box)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, box):
        box = _as_box(box)
        return cls(box, np.zeros(tuple(2 * n + 1 for n in box), dtype=complex))

    @classmethod
    def constant(cls, value, dim=1):
        c = np.full((1,) * dim, value, dtype=complex)
        return cls((0,) * dim, c)

    @classmethod
    def exponential(cls, k):
        """The single exponential e^{i k.x}."""
        k = np.atleast_1d(np.asarray(k, dtype=int))
        box = tuple(abs(int(kj)) for kj in k)
        c = np.zeros(tuple(2 * n + 1 for n in box), dtype=complex)
        c[tuple(int(kj) + n for kj, n in zip(k, box))] = 1.0
        return cls(box, c)

    @classmethod
    def from_coeff_dict(cls, box, entries):
        """Build from {k tuple: coefficient}."""
        box = _as_box(box)
        c = np.zeros(tuple(2 * n + 1 for n in box), dtype=complex)
        for k, v in entries.items():
            k = tuple(np.atleast_1d(np.asarray(k, dtype=int)))
            if len(k) != len(box) or any(abs(kj) > n for kj, n in zip(k, box)):
                raise ValueError(f"index {k} outside box {box}")
            c[tuple(kj + n for kj, n in zip(k, box))] = v
        return cls(box, c)

    # -- indexing ----------------------------------------------------------

    def coeff(self, k):
        """Coefficient at frequency k (zero outside the box)."""
        k = np.atleast_1d(np.asarray(k, dtype=int))
        if k.shape != (self.dim,):
            raise ValueError(f"frequency must have {self.dim} components")
        if any(abs(int(kj)) > n for kj, n in zip(k, self.box)):
            return 0.0 + 0.0j
        return complex(self.coeffs[tuple(int(kj) + n for kj, n in zip(k, self.box))])

    def freq_axes(self):
        """Per-coordinate frequency arrays -N_j..N_j."""
        return [np.arange(-n, n + 1) for n in self.box]

    # -- arithmetic --------------------------------------------------------

    def pad_to(self, box):
        box = _as_box(box)
        if len(box) != self.dim:
            raise ValueError("dimension mismatch")
        if any(n < m for n, m in zip(box, self.box)):
            raise ValueError("cannot pad to a smaller box")
        c = np.zeros(tuple(2 * n + 1 for n in box), dtype=complex)
        sl = tuple(slice(n - m, n + m + 1) for n, m in zip(box, self.box))
        c[sl] = self.coeffs
        return TrigPoly(box, c)

    def _binary(self, other, op):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        box = tuple(max(a, b) for a, b in zip(self.box, other.box))
        return TrigPoly(box, op(self.pad_to(box).coeffs, other.pad_to(box).coeffs))

    def __add__(self, other):
        if np.isscalar(other):
            other = TrigPoly.constant(other, self.dim)
        return self._binary(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        if np.isscalar(other):
            other = TrigPoly.constant(other, self.dim)
        return self._binary(other, np.subtract)

    def __rsub__(self, other):
        return (-1.0) * self + other

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return TrigPoly(self.box, self.coeffs * scalar)

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugate: coefficients flipped and conjugated."""
        flipped = self.coeffs[tuple(slice(None, None, -1) for _ in self.box)]
        return TrigPoly(self.box, np.conj(flipped))

    def is_real(self, tol=1e-12):
        """Conjugate symmetry check coeff(-k) == conj(coeff(k))."""
        flipped = self.coeffs[tuple(slice(None, None, -1) for _ in self.box)]
        return bool(np.max(np.abs(self.coeffs - np.conj(flipped))) <= tol)

    def integral(self):
        """Mean against the normalized measure: the k = 0 coefficient."""
        return complex(self.coeffs[tuple(self.box)])

    # -- sampling and evaluation ------------------------------------------

    def sample(self, grid_shape):
        """Values on the uniform grid x_t = 2 pi t / M_j, via zero-padded FFT."""
        grid_shape = tuple(int(m) for m in (grid_shape if np.iterable(grid_shape)
                                            else (grid_shape,) * self.dim))
        if len(grid_shape) != self.dim:
            raise ValueError("grid dimension mismatch")
        if any(m < 1 for m in grid_shape):
            raise ValueError("grid sizes must be >= 1")
        spec = np.zeros(grid_shape, dtype=complex)
        idx = np.ix_(*[np.arange(-n, n + 1) % m for n, m in zip(self.box, grid_shape)])
        # grids smaller than the box alias coefficients on purpose only via
        # explicit add.at; plain assignment would silently drop mass
        np.add.at(spec, idx, self.coeffs)
        return np.fft.ifftn(spec) * np.prod(grid_shape)

    def evaluate(self, points):
        """Sum_k c_k e^{i k.x} at arbitrary torus points, shape (n, d) or (d,)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise ValueError(f"points must have {self.dim} coordinates")
        kflat = np.stack(np.meshgrid(*self.freq_axes(), indexing="ij"),
                         axis=-1).reshape(-1, self.dim)
        cflat = self.coeffs.reshape(-1)
        out = np.empty(pts.shape[0], dtype=complex)
        chunk = max(1, int(2 ** 22 // max(1, kflat.shape[0])))
        for lo in range(0, pts.shape[0], chunk):
            phase = pts[lo:lo + chunk] @ kflat.T
            out[lo:lo + chunk] = np.exp(1j * phase) @ cflat
        return out


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on the uniform tensor grid x_t = 2 pi t / M_j."""

    shape: tuple
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        shape = tuple(int(m) for m in self.shape)
        if any(m < 1 for m in shape):
            raise ValueError("grid sizes must be >= 1")
        values = np.asarray(self.values)
        if values.shape != shape:
            raise ValueError("sample array shape does not match declared grid")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", values)

    @property
    def dim(self):
        return len(self.shape)


def forward_coeffs(g, box):
    """Fourier coefficients of grid samples, 1/(grid size) normalized.

    Requires M_j >= 2 N_j + 1 in every coordinate, otherwise the discrete
    transform aliases and an AliasingError is raised.
    """
    if not isinstance(g, GridFunction):
        g = GridFunction(np.shape(g), np.asarray(g))
    box = _as_box(box)
    if len(box) != g.dim:
        raise ValueError("box dimension does not match grid dimension")
    if any(m < 2 * n + 1 for m, n in zip(g.shape, box)):
        raise AliasingError(
            f"grid {g.shape} too small for box {box}: need M_j >= 2 N_j + 1"
        )
    spec = np.fft.fftn(g.values) / np.prod(g.shape)
    idx = np.ix_(*[np.arange(-n, n + 1) % m for n, m in zip(box, g.shape)])
    return TrigPoly(box, spec[idx])


def evaluate(f, points):
    return f.evaluate(points)


def evaluate_many(polys, points):
    """Evaluate many polynomials sharing one box: returns (len(polys), n)."""
    polys = list(polys)
    box = polys[0].box
    if any(p.box != box for p in polys):
        raise ValueError("all polynomials must share the same box")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = len(box)
    kflat = np.stack(np.meshgrid(*[np.arange(-n, n + 1) for n in box],
                                 indexing="ij"), axis=-1).reshape(-1, d)
    C = np.stack([p.coeffs.reshape(-1) for p in polys])
    out = np.empty((len(polys), pts.shape[0]), dtype=complex)
    chunk = max(1, int(2 ** 23 // max(1, kflat.shape[0])))
    for lo in range(0, pts.shape[0], chunk):
        E = np.exp(1j * (kflat @ pts[lo:lo + chunk].T))
        out[:, lo:lo + chunk] = C @ E
    return out


def lp_norm(f, p, oversample=8):
    """L_p norm of f against the normalized measure.

    p = 2 is exact via Parseval; p = inf is the max over an oversampled grid;
    other p in [1, inf) use the Riemann sum on the oversampled grid.  The
    returned float carries an ``exact`` flag.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if p == 2:
        return NormValue(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)), exact=True)
    if oversample < 2:
        raise ValueError("oversample must be >= 2")
    grid = tuple(max(oversample, oversample * (2 * n + 1)) for n in f.box)
    vals = np.abs(f.sample(grid))
    if np.isinf(p):
        return NormValue(vals.max(), exact=False)
    return NormValue(float(np.mean(vals ** p)) ** (1.0 / p), exact=False)


def tensor(*factors):
    """Tensor product of univariate (or lower-dim) polynomials."""
    box = ()
    coeffs = np.ones((), dtype=complex)
    for f in factors:
        box = box + f.box
        coeffs = np.tensordot(coeffs, f.coeffs, axes=0)
    return TrigPoly(box, coeffs)


def product(f, g):
    """Exact product polynomial via full coefficient convolution."""
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    box = tuple(a + b for a, b in zip(f.box, g.box))
    conv = fftconvolve(f.coeffs, g.coeffs, mode="full")
    return TrigPoly(box, conv)
