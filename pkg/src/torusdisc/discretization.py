"""Sampling discretization of the L2 norm: defect errors, witnesses, bounds.

The defect value of f at a point set is ||f||_2^2 minus the weighted sample
average of f^2; its absolute value is the discretization error.  The witness
construction halves an integration residual into a guaranteed lower bound,
and the quasi-algebra transfer turns a worst-case integration error into an
upper bound.  Empirical suprema over sampled class members approximate the
class quantity from below; every number in a report carries its provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dyadic import HOELDER_H, sample_h_ball
from .trig import TrigPoly, evaluate_many

LOWER_EVIDENCE = "sampled lower evidence"
WITNESS_LOWER = "witness lower bound"
TRANSFER_UPPER = "transferred upper bound (conditional on quasi-algebra a)"


@dataclass(frozen=True)
class DiscretizationReport:
    """Empirical discretization-error estimate for one point set and class."""

    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    spec: object
    seed: int
    per_function: np.ndarray = field(repr=False)
    empirical_sup: float
    witness_lower: float
    transfer_upper: float | None
    provenance: tuple

    @property
    def m(self):
        return self.points.shape[0]


def _check_points(points, dim=None):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if dim is not None and pts.shape[1] != dim:
        raise ValueError(f"points must have {dim} coordinates")
    return pts


def _weights_for(pts, weights):
    if weights is None:
        return np.full(pts.shape[0], 1.0 / pts.shape[0])
    w = np.asarray(weights, dtype=float)
    if w.shape != (pts.shape[0],):
        raise ValueError("one weight per point required")
    return w


def defect(f, points, weights=None):
    """Signed defect ||f||_2^2 - sum_j lambda_j f(xi^j)^2 (equal weights default)."""
    if not f.is_real():
        raise ValueError("defect is defined for real-valued polynomials")
    pts = _check_points(points, f.dim)
    w = _weights_for(pts, weights)
    vals = f.evaluate(pts).real
    norm_sq = float(np.sum(np.abs(f.coeffs) ** 2))
    return norm_sq - float(vals ** 2 @ w)


def disc_error(f, points, weights=None):
    """|defect|: the L2 sampling discretization error of f at the points."""
    return abs(defect(f, points, weights))


def er_witness(g, points, weights=None):
    """Lower-bound witness from the shifted pair f+- = (g +- 1) / 2.

    Returns (max(|D+|, |D-|), residual) where D+- are the defect values and
    the residual checks the exact identity D+ - D- = mean(g) - Q(g); the
    first entry is always >= |mean(g) - Q(g)| / 2.
    """
    if not g.is_real():
        raise ValueError("witness is defined for real-valued polynomials")
    pts = _check_points(points, g.dim)
    w = _weights_for(pts, weights)
    d_plus = defect((g + 1.0) * 0.5, pts, w)
    d_minus = defect((g - 1.0) * 0.5, pts, w)
    quad = float(g.evaluate(pts).real @ w)
    residual = (d_plus - d_minus) - (g.integral().real - quad)
    return max(abs(d_plus), abs(d_minus)), residual


def er_upper_transfer(kappa, a):
    """Upper bound a * (kappa.value + kappa.tail) on the discretization error.

    Conditional on the supplied quasi-algebra parameter a of the class.
    """
    if a <= 0:
        raise ValueError("quasi-algebra parameter must be > 0")
    return a * (kappa.value + kappa.tail)


def estimate_er(points, spec, n_samples, seed, block_cap=5, weights=None,
                transfer_kappa=None, transfer_a=None):
    """Empirical supremum of the discretization error over class samples.

    Draws n_samples boundary members of the H-class ball (per-sample seeds
    derived from the base seed, so suprema are monotone in n_samples), adds
    the constant probe f = 1 and the shifted pair of the worst sampled
    member, and reports sampled supremum, witness lower bound, and, when a
    worst-case integration report plus quasi-algebra parameter are supplied,
    the transferred upper bound.
    """
    if spec.family != HOELDER_H:
        raise ValueError("estimator samples the Hoelder-type family only")
    pts = _check_points(points)
    w = _weights_for(pts, weights)
    d = pts.shape[1]
    n_samples = int(n_samples)

    samples = [sample_h_ball(spec, block_cap, np.random.SeedSequence([int(seed), i]), dim=d)
               for i in range(n_samples)]
    errors = []
    if samples:
        vals = evaluate_many(samples, pts).real
        norms = np.array([np.sum(np.abs(f.coeffs) ** 2).real for f in samples])
        errors = list(np.abs(norms - (vals ** 2) @ w))

    one = TrigPoly.constant(1.0, d)
    errors.append(disc_error(one, pts, w))

    witness_lower = 0.0
    if samples:
        worst = samples[int(np.argmax(errors[:n_samples]))]
        witness_lower, _ = er_witness(worst, pts, w)
        errors.append(disc_error((worst + 1.0) * 0.5, pts, w))
        errors.append(disc_error((worst - 1.0) * 0.5, pts, w))

    transfer_upper = None
    provenance = (LOWER_EVIDENCE, WITNESS_LOWER)
    if transfer_kappa is not None:
        if transfer_a is None:
            raise ValueError("transfer bound needs the quasi-algebra parameter")
        transfer_upper = er_upper_transfer(transfer_kappa, transfer_a)
        provenance = provenance + (TRANSFER_UPPER,)

    errors = np.asarray(errors)
    return DiscretizationReport(
        points=pts, weights=w, spec=spec, seed=int(seed),
        per_function=errors, empirical_sup=float(errors.max()),
        witness_lower=float(witness_lower), transfer_upper=transfer_upper,
        provenance=provenance,
    )
