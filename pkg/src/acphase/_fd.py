"""Shared finite-difference plumbing for the wave-equation residuals.

Arrays are sampled on (time slices, x1, x2, components) with a common step h
in all three directions; residuals are evaluated with second-order central
differences on interior points of the t = 0 slice only.
"""

from __future__ import annotations

import numpy as np


def grid_points(origin, h: float, n: int):
    """Coordinates of the interior points of an n x n patch."""
    x0, y0 = origin
    xs = x0 + h * np.arange(1, n - 1)
    ys = y0 + h * np.arange(1, n - 1)
    return xs, ys


def check_grid(field, origin, h: float, n: int):
    """Shared preconditions: enough points, and clearance from the axis."""
    if n < 3:
        raise ValueError("need at least 3 grid points per axis")
    if field.is_singular_at_origin():
        x0, y0 = origin
        hi_x = x0 + (n - 1) * h
        hi_y = y0 + (n - 1) * h
        dx = 0.0 if x0 * hi_x <= 0 else min(abs(x0), abs(hi_x))
        dy = 0.0 if y0 * hi_y <= 0 else min(abs(y0), abs(hi_y))
        rmin = float(np.hypot(dx, dy))
        if rmin < 10.0 * h:
            raise ValueError(f"grid too close to the line-charge axis: r_min = {rmin}, need >= {10 * h}")


def first_order_residual(arr: np.ndarray, mats, mass: float, interaction_fn,
                         h: float, origin, field) -> float:
    """Max-norm residual of (i M^mu d_mu + INT(x) - m) psi on interior points.

    arr has shape (3, n, n, dim); mats are the numeric M^0, M^1, M^2 matrices
    (the M^3 d_3 term vanishes because nothing depends on x^3); interaction_fn
    maps a 2-d point to the dim x dim interaction matrix.
    """
    if arr.ndim != 4 or arr.shape[0] != 3:
        raise ValueError("expected a (3, n, n, dim) sampled array")
    n = arr.shape[1]
    check_grid(field, origin, h, n)
    dt = (arr[2] - arr[0]) / (2 * h)
    dx = (arr[1, 2:, :] - arr[1, :-2, :]) / (2 * h)
    dy = (arr[1, :, 2:] - arr[1, :, :-2]) / (2 * h)
    core = arr[1, 1:-1, 1:-1]
    dt = dt[1:-1, 1:-1]
    dx = dx[:, 1:-1]
    dy = dy[1:-1, :]
    res = 1j * (np.einsum("ab,ijb->ija", mats[0], dt)
                + np.einsum("ab,ijb->ija", mats[1], dx)
                + np.einsum("ab,ijb->ija", mats[2], dy)) - mass * core
    xs, ys = grid_points(origin, h, n)
    for i, x1 in enumerate(xs):
        for j, x2 in enumerate(ys):
            res[i, j] += interaction_fn(np.array([x1, x2])) @ core[i, j]
    return float(np.max(np.abs(res)))


def convergence_order(r_coarse: float, r_fine: float) -> float:
    """log2 of the residual reduction under grid halving."""
    if r_fine <= 0.0:
        return float("inf")
    return float(np.log2(r_coarse / r_fine))
