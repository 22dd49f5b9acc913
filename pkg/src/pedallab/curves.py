"""Core geometric types: ellipse, support-function curves, sampling grids.

Two parametrizations coexist deliberately.  The ellipse and everything built
on it in :mod:`pedallab.pedal` use the ellipse angle t with
P(t) = (a cos t, b sin t).  Support-function curves use the outward normal
angle.  The two are never converted pointwise; derived quantities (areas,
point sets) are compared instead.

All evaluators accept scalars or numpy arrays and are safe to call with
complex parameter values, which enables complex-step differentiation in the
cusp finder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, EvaluationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Point2:
    """A finite point of the plane."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point components must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @staticmethod
    def of(obj) -> "Point2":
        if isinstance(obj, Point2):
            return obj
        x, y = obj
        return Point2(float(x), float(y))


def as_xy(m) -> np.ndarray:
    """Normalize a Point2 / pair / array into a shape-(2,) float array."""
    if isinstance(m, Point2):
        return m.as_array()
    arr = np.asarray(m, dtype=float)
    if arr.shape != (2,):
        raise DomainError(f"expected a 2d point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("point components must be finite")
    return arr


@dataclass(frozen=True)
class Ellipse:
    """Ellipse x^2/a^2 + y^2/b^2 = 1 with a >= b > 0."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("semi-axes must be finite")
        if not self.a >= self.b > 0:
            raise DomainError(f"require a >= b > 0, got a={self.a}, b={self.b}")

    @property
    def c2(self) -> float:
        """Squared linear eccentricity a^2 - b^2 (>= 0; circles allowed)."""
        return self.a * self.a - self.b * self.b

    @property
    def delta(self) -> float:
        """sqrt(a^4 - a^2 b^2 + b^4), a scale constant of the hybrid-curve area."""
        a2, b2 = self.a * self.a, self.b * self.b
        return math.sqrt(a2 * a2 - a2 * b2 + b2 * b2)

    def implicit(self, m) -> float:
        """x^2/a^2 + y^2/b^2 at m; 1 on the boundary."""
        x, y = as_xy(m)
        return (x / self.a) ** 2 + (y / self.b) ** 2


def ellipse_point(e: Ellipse, t):
    """P(t) = (a cos t, b sin t); scalar t -> shape (2,), array -> (n, 2)."""
    t = np.asarray(t)
    return np.stack([e.a * np.cos(t), e.b * np.sin(t)], axis=-1)


def ellipse_velocity(e: Ellipse, t):
    """P'(t) = (-a sin t, b cos t); never the zero vector."""
    t = np.asarray(t)
    return np.stack([-e.a * np.sin(t), e.b * np.cos(t)], axis=-1)


@dataclass
class SupportCurve:
    """Convex-curve description by a support function h and its derivatives.

    h(t) is the signed distance from the origin to the tangent line whose
    outward normal has angle t.  The curve point is recovered by
    (h cos t - h' sin t, h sin t + h' cos t).
    """

    h: Callable
    dh: Callable
    d2h: Callable

    def __post_init__(self):
        probe = np.linspace(0.0, TWO_PI, 17)[:-1]
        vals = np.asarray(self.h(probe), dtype=float)
        scale = max(1.0, float(np.max(np.abs(vals))))
        gap = np.max(np.abs(np.asarray(self.h(probe + TWO_PI)) - vals))
        if gap > 1e-9 * scale:
            raise DomainError(f"support function is not 2*pi-periodic (gap {gap:.3e})")

    def is_convex(self, n: int = 1024) -> bool:
        """Radius of curvature h + h'' positive on an n-point grid."""
        t = np.arange(n) * TWO_PI / n
        return bool(np.all(np.asarray(self.h(t)) + np.asarray(self.d2h(t)) > 0))


def support_point(s: SupportCurve, t):
    """Point of the curve whose outward normal angle is t."""
    t = np.asarray(t)
    h = s.h(t)
    dh = s.dh(t)
    ct, st = np.cos(t), np.sin(t)
    return np.stack([h * ct - dh * st, h * st + dh * ct], axis=-1)


def ellipse_support(e: Ellipse) -> SupportCurve:
    """Center-based support function of the ellipse, with analytic derivatives."""
    a2, b2 = e.a * e.a, e.b * e.b
    c2 = e.c2

    def h(t):
        t = np.asarray(t)
        # argument is >= b^2 > 0 for real t; complex t continues analytically
        return np.sqrt(a2 * np.cos(t) ** 2 + b2 * np.sin(t) ** 2)

    def dh(t):
        t = np.asarray(t)
        return -(c2 / 2.0) * np.sin(2 * t) / h(t)

    def d2h(t):
        t = np.asarray(t)
        ht = h(t)
        return -c2 * np.cos(2 * t) / ht - (c2 * c2 / 4.0) * np.sin(2 * t) ** 2 / ht ** 3

    return SupportCurve(h=h, dh=dh, d2h=d2h)


@dataclass(frozen=True)
class ParamGrid:
    """Uniform periodic grid t_k = start + (k + offset) * 2*pi / count.

    The fractional offset shifts every node by the same sub-step amount,
    which keeps quadrature weights uniform while dodging isolated singular
    parameters (the hybrid curve with M on the ellipse is singular exactly
    at t = s, so its grids use start=s, offset=1/2).
    """

    count: int
    start: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        if self.count < 8:
            raise DomainError(f"grid count must be >= 8, got {self.count}")
        if not 0.0 <= self.offset < 1.0:
            raise DomainError(f"grid offset must lie in [0, 1), got {self.offset}")
        if not math.isfinite(self.start):
            raise DomainError("grid start must be finite")

    def nodes(self) -> np.ndarray:
        return self.start + (np.arange(self.count) + self.offset) * (TWO_PI / self.count)

    @property
    def step(self) -> float:
        return TWO_PI / self.count


@dataclass
class SampledCurve:
    """Closed polyline of curve samples, the exchange format for quadrature.

    The optional evaluator is the function the samples came from; detectors
    use it to refine features below the grid resolution.
    """

    params: np.ndarray
    points: np.ndarray
    closed: bool = True
    evaluator: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        self.params = np.asarray(self.params, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if self.points.shape != (self.params.size, 2):
            raise DomainError(
                f"points shape {self.points.shape} does not match {self.params.size} params")
        if self.params.size >= 2 and not np.all(np.diff(self.params) > 0):
            raise DomainError("params must be strictly increasing")

    def __len__(self) -> int:
        return self.params.size


def sample_curve(f: Callable, grid: ParamGrid) -> SampledCurve:
    """Evaluate f on the grid nodes; failures name the offending node."""
    t = grid.nodes()
    try:
        pts = np.asarray(f(t), dtype=float)
        if pts.shape != (t.size, 2) or not np.all(np.isfinite(pts)):
            raise ValueError("bad vectorized evaluation")
    except Exception:
        # locate the first failing node for the error report
        pts = np.empty((t.size, 2))
        for k, tk in enumerate(t):
            try:
                row = np.asarray(f(tk), dtype=float).reshape(2)
                if not np.all(np.isfinite(row)):
                    raise ValueError("non-finite point")
            except Exception as exc:
                raise EvaluationError(
                    f"curve evaluation failed at t={tk!r}: {exc}", node=tk) from exc
            pts[k] = row
    return SampledCurve(params=t, points=pts, closed=True, evaluator=f)
