"""Convergence-rate fitting for the model C * m^-r * (log m)^b."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RIDGE = 1e-9  # damping on the normal equations for degenerate designs


@dataclass(frozen=True)
class RateFit:
    """Fitted (C, r, b) with log-space residual diagnostics."""

    C_hat: float
    r_hat: float
    b_hat: float
    b_frozen: bool
    residual_rms: float
    m_range: tuple
    n_points: int

    def predict(self, m):
        m = np.asarray(m, dtype=float)
        return self.C_hat * m ** (-self.r_hat) * np.log(m) ** self.b_hat

    def summary(self):
        frozen = " (frozen)" if self.b_frozen else ""
        return (f"C = {self.C_hat:.6g}, r = {self.r_hat:.4f}, "
                f"b = {self.b_hat:.4f}{frozen}, "
                f"log-residual RMS = {self.residual_rms:.3g}, "
                f"m in [{self.m_range[0]}, {self.m_range[1]}], "
                f"{self.n_points} points")


def fit_rate(points, freeze_b=None):
    """Least squares for log e = log C - r log m + b log log m.

    ``points`` is a sequence of (m, error) with m >= 3 and error > 0; at
    least 4 points are required.  With freeze_b set, b is pinned and only
    (C, r) are fitted.  The normal equations carry a 1e-9 ridge so nearly
    collinear designs (log log m is almost constant on short ranges) stay
    solvable.
    """
    pts = [(float(m), float(e)) for m, e in points]
    if len(pts) < 4:
        raise ValueError("rate fit needs at least 4 data points")
    ms = np.array([m for m, _ in pts])
    es = np.array([e for _, e in pts])
    if np.any(ms < 3):
        raise ValueError("rate fit needs m >= 3 (log log m must be positive)")
    if np.any(es <= 0):
        raise ValueError("rate fit needs positive errors")

    y = np.log(es)
    lx = np.log(ms)
    llx = np.log(np.log(ms))
    if freeze_b is None:
        A = np.column_stack([np.ones_like(lx), -lx, llx])
    else:
        y = y - float(freeze_b) * llx
        A = np.column_stack([np.ones_like(lx), -lx])
    AtA = A.T @ A + RIDGE * np.eye(A.shape[1])
    theta = np.linalg.solve(AtA, A.T @ y)
    resid = y - A @ theta
    rms = float(np.sqrt(np.mean(resid ** 2)))
    b_hat = float(freeze_b) if freeze_b is not None else float(theta[2])
    return RateFit(
        C_hat=float(np.exp(theta[0])), r_hat=float(theta[1]), b_hat=b_hat,
        b_frozen=freeze_b is not None, residual_rms=rms,
        m_range=(float(ms.min()), float(ms.max())), n_points=len(pts),
    )
