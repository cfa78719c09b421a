"""Electromagnetic environments, loop paths, and contour quadrature.

Units are rationalized so that the two-dimensional Gauss law reads
closed-contour-integral E . n dl = lambda: a line charge of density lambda
on the 3-axis produces E(x) = lambda x / (2 pi |x|^2) in the plane.  With
this choice the accumulated loop phases carry no stray 4 pi factors.  The
constant lives only in line_charge_E, so switching conventions is a
one-line change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def line_charge_E(lam: float, x) -> np.ndarray:
    """Radial plane field of an infinite line charge on the 3-axis.

    E(x) = (lambda / 2 pi) x / |x|^2, whose flux through any enclosing
    contour equals lambda.  Singular only on the axis.
    """
    x = np.asarray(x, dtype=float)
    r2 = float(x[0] ** 2 + x[1] ** 2)
    if r2 == 0.0:
        raise ValueError("field evaluated on the line-charge axis")
    c = lam / (TWO_PI * r2)
    return np.array([c * x[0], c * x[1], 0.0])


def field_tensor(e, b) -> np.ndarray:
    """Antisymmetric F^{mu nu} with F^{0i} = E_i and F^{ij} = -eps_{ijk} B_k."""
    e = np.asarray(e, dtype=float)
    b = np.asarray(b, dtype=float)
    f = np.zeros((4, 4))
    for i in range(3):
        f[0, i + 1] = e[i]
        f[i + 1, 0] = -e[i]
    f[1, 2], f[2, 1] = -b[2], b[2]
    f[2, 3], f[3, 2] = -b[0], b[0]
    f[1, 3], f[3, 1] = b[1], -b[1]
    return f


@dataclass(frozen=True)
class FieldConfig:
    """Static electromagnetic environment for the verification runs.

    kind is one of 'uniform_E', 'line_charge', 'custom'.  Fields never depend
    on x^3 or on time; the AC configuration additionally has E_3 = 0 and
    B = 0, which is_ac_configuration checks.
    """

    kind: str
    lam: float = 0.0
    e_uniform: tuple = (0.0, 0.0, 0.0)
    e_fn: object = None
    b_fn: object = None
    axis: int = 3

    @staticmethod
    def uniform_e(e1: float, e2: float, e3: float = 0.0) -> "FieldConfig":
        return FieldConfig(kind="uniform_E", e_uniform=(float(e1), float(e2), float(e3)))

    @staticmethod
    def line_charge(lam: float) -> "FieldConfig":
        return FieldConfig(kind="line_charge", lam=float(lam))

    @staticmethod
    def custom(e_fn, b_fn) -> "FieldConfig":
        return FieldConfig(kind="custom", e_fn=e_fn, b_fn=b_fn)

    def e_at(self, x) -> np.ndarray:
        """Electric field at a 2-d plane point."""
        if self.kind == "uniform_E":
            return np.array(self.e_uniform)
        if self.kind == "line_charge":
            return line_charge_E(self.lam, x)
        return np.asarray(self.e_fn(x), dtype=float)

    def b_at(self, x) -> np.ndarray:
        if self.kind == "custom" and self.b_fn is not None:
            return np.asarray(self.b_fn(x), dtype=float)
        return np.zeros(3)

    def is_singular_at_origin(self) -> bool:
        return self.kind == "line_charge"

    def is_ac_configuration(self, probe_points=((0.7, 0.3), (1.1, -0.4), (0.5, 0.9))) -> bool:
        """B = 0 and E_3 = 0 at the probe points (structural for built-in kinds)."""
        for pt in probe_points:
            if abs(self.e_at(pt)[2]) > 0.0:
                return False
            if np.any(self.b_at(pt) != 0.0):
                return False
        return True


@dataclass(frozen=True)
class LoopPath:
    """Polyline path in the plane; closed iff the last vertex repeats the first."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple((float(v[0]), float(v[1])) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        for v in verts:
            if v[0] == 0.0 and v[1] == 0.0:
                raise ValueError("path vertex on the charge axis")

    @property
    def closed(self) -> bool:
        return len(self.vertices) >= 2 and self.vertices[0] == self.vertices[-1]

    def segments(self):
        return list(zip(self.vertices[:-1], self.vertices[1:]))

    def winding_number(self, about=(0.0, 0.0)) -> int:
        """Signed revolutions about a point, from summed angle increments."""
        total = 0.0
        ax, ay = about
        for (x0, y0), (x1, y1) in self.segments():
            a0 = math.atan2(y0 - ay, x0 - ax)
            a1 = math.atan2(y1 - ay, x1 - ax)
            d = a1 - a0
            while d > math.pi:
                d -= TWO_PI
            while d < -math.pi:
                d += TWO_PI
            total += d
        return int(round(total / TWO_PI))

    @staticmethod
    def circle(center=(0.0, 0.0), radius=1.0, n=64, winding=1) -> "LoopPath":
        """Closed n-gon approximating a circle, traversed `winding` times.

        The polygon is the path: loop integrals of curl-free fields depend
        only on the winding number, so no refinement error is introduced.
        """
        if winding == 0 or n < 3:
            raise ValueError("need winding != 0 and n >= 3")
        cx, cy = center
        sign = 1 if winding > 0 else -1
        pts = []
        for k in range(abs(winding) * n):
            a = sign * TWO_PI * k / n
            pts.append((cx + radius * math.cos(a), cy + radius * math.sin(a)))
        pts.append(pts[0])
        return LoopPath(tuple(pts))

    @staticmethod
    def polygon(points) -> "LoopPath":
        pts = [tuple(p) for p in points]
        if pts[0] != pts[-1]:
            pts.append(pts[0])
        return LoopPath(tuple(pts))

    @staticmethod
    def square(center=(0.0, 0.0), half=1.0) -> "LoopPath":
        cx, cy = center
        return LoopPath.polygon([
            (cx - half, cy - half), (cx + half, cy - half),
            (cx + half, cy + half), (cx - half, cy + half),
        ])

    @staticmethod
    def triangle(center=(0.0, 0.0), radius=1.0) -> "LoopPath":
        cx, cy = center
        pts = [(cx + radius * math.cos(TWO_PI * k / 3 + 0.5),
                cy + radius * math.sin(TWO_PI * k / 3 + 0.5)) for k in range(3)]
        return LoopPath.polygon(pts)


_GL_CACHE = {}


def _gl_nodes(n: int):
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def _gl_fixed(f, a: float, b: float, n: int) -> float:
    x, w = _gl_nodes(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return half * float(sum(wi * f(mid + half * xi) for xi, wi in zip(x, w)))


def adaptive_gauss(f, a: float, b: float, tol: float, depth: int = 0) -> float:
    """Adaptive 10-point Gauss-Legendre quadrature by interval bisection.

    The error estimate on an interval is the difference between the one-shot
    rule and the two-half sum; intervals are split until it drops below the
    local tolerance.  Smooth integrands (all path segments stay away from the
    field singularity) converge in a handful of levels.
    """
    if depth > 40:
        raise RuntimeError("quadrature failed to converge; integrand too rough")
    whole = _gl_fixed(f, a, b, 10)
    mid = 0.5 * (a + b)
    split = _gl_fixed(f, a, mid, 10) + _gl_fixed(f, mid, b, 10)
    if abs(whole - split) <= tol:
        return split
    return (adaptive_gauss(f, a, mid, 0.5 * tol, depth + 1)
            + adaptive_gauss(f, mid, b, 0.5 * tol, depth + 1))


def _segment_min_radius(p0, p1) -> float:
    """Distance from the segment p0-p1 to the origin."""
    p0 = np.asarray(p0, float)
    p1 = np.asarray(p1, float)
    d = p1 - p0
    dd = float(d @ d)
    if dd == 0.0:
        return float(np.hypot(*p0))
    t = max(0.0, min(1.0, float(-(p0 @ d)) / dd))
    c = p0 + t * d
    return float(np.hypot(*c))


def segment_integral(a_fn, p0, p1, tol: float) -> float:
    """Line integral of a plane vector field along one straight segment."""
    p0 = np.asarray(p0, float)
    p1 = np.asarray(p1, float)
    d = p1 - p0

    def f(t):
        a = a_fn(p0 + t * d)
        return a[0] * d[0] + a[1] * d[1]

    return adaptive_gauss(f, 0.0, 1.0, tol)


def loop_integral(a_fn, path: LoopPath, tol: float = 1e-9,
                  guard_axis: bool = True) -> float:
    """Closed-loop line integral of A' by per-segment adaptive quadrature.

    Errors if the path is open or any segment meets the charge axis.  The
    absolute quadrature error is held below tol by splitting the tolerance
    across segments.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not path.closed:
        raise ValueError("loop integral needs a closed path")
    segs = path.segments()
    if guard_axis:
        for p0, p1 in segs:
            if _segment_min_radius(p0, p1) == 0.0:
                raise ValueError("path segment crosses the charge axis")
    seg_tol = tol / max(len(segs), 1)
    return sum(segment_integral(a_fn, p0, p1, seg_tol) for p0, p1 in segs)


def open_path_integral(a_fn, points, tol: float = 1e-10) -> float:
    """Line integral along an open polyline, used for per-point phase values."""
    total = 0.0
    pts = [np.asarray(p, float) for p in points]
    for p0, p1 in zip(pts[:-1], pts[1:]):
        total += segment_integral(a_fn, p0, p1, tol / max(len(pts) - 1, 1))
    return total


def gauss_check(field: FieldConfig, region: LoopPath, tol: float = 1e-9):
    """Contour flux of E through a closed region boundary vs enclosed charge.

    Returns (flux, enclosed) where flux is the quadrature value of the
    outward-normal integral of E and enclosed is the analytic enclosed
    line-charge density (lambda times winding for a line charge, else 0).
    """
    if not region.closed:
        raise ValueError("gauss_check needs a closed region boundary")
    for p0, p1 in region.segments():
        if field.is_singular_at_origin() and _segment_min_radius(p0, p1) == 0.0:
            raise ValueError("region boundary passes through the charge axis")

    def integrand(x, d):
        e = field.e_at(x)
        # outward normal flux element: E . (dy, -dx)
        return e[0] * d[1] - e[1] * d[0]

    total = 0.0
    segs = region.segments()
    seg_tol = tol / max(len(segs), 1)
    for p0, p1 in segs:
        p0 = np.asarray(p0, float)
        p1 = np.asarray(p1, float)
        d = p1 - p0
        total += adaptive_gauss(lambda t: integrand(p0 + t * d, d), 0.0, 1.0, seg_tol)

    if field.kind == "line_charge":
        enclosed = field.lam * region.winding_number()
    else:
        enclosed = 0.0
    return total, enclosed
