"""Pedal-type curve constructions for an ellipse and their feature detectors.

Every family here is a map t -> point in the plane built from the base
ellipse P(t) = (a cos t, b sin t) and a fixed pole M:

* pedal: foot of the perpendicular from M onto the tangent line at P(t)
* contrapedal: same with the normal line
* rotated pedal: the projection line direction is the tangent turned by theta
* interpolated pedal: affine blend of pedal and contrapedal feet
* negative pedal: envelope of lines through P(t) perpendicular to P(t) - M
* hybrid: intersection of the perpendicular to the tangent direction drawn
  through M with the perpendicular to M - P(t) drawn through P(t)
* pseudo-Talbot: a cubic-harmonic curve defined for poles on the ellipse,
  traversed so that its signed area carries the orientation of the
  supporting line family
* evolutoid: envelope of lines crossing the curve at a fixed angle to the
  tangent (angle 0 gives the curve back, pi/2 the evolute)

Point evaluators are vectorized over t and complex-safe, so the cusp finder
can differentiate them by complex step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .curves import (
    Ellipse,
    SampledCurve,
    SupportCurve,
    as_xy,
    ellipse_point,
    ellipse_velocity,
)
from .errors import (
    DegenerateLine,
    DomainError,
    GeometryError,
    SingularFamily,
    SingularParameter,
)

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# perpendicular feet


def perpendicular_foot(m, p, d):
    """Foot of the perpendicular from m onto the line p + u d.

    Broadcasts over leading axes of p and d; m is a single pole.
    """
    m = as_xy(m)
    p = np.asarray(p)
    d = np.asarray(d)
    dd = d[..., 0] ** 2 + d[..., 1] ** 2
    if np.min(np.abs(dd)) < 1e-24:
        raise DegenerateLine("line direction vanishes")
    u = ((m[0] - p[..., 0]) * d[..., 0] + (m[1] - p[..., 1]) * d[..., 1]) / dd
    return p + u[..., None] * d


def pedal_point(e: Ellipse, t, m):
    """Foot of the perpendicular from m onto the tangent line at P(t)."""
    return perpendicular_foot(m, ellipse_point(e, t), ellipse_velocity(e, t))


def contrapedal_point(e: Ellipse, t, m):
    """Foot of the perpendicular from m onto the normal line at P(t)."""
    v = ellipse_velocity(e, t)
    n = np.stack([-v[..., 1], v[..., 0]], axis=-1)
    return perpendicular_foot(m, ellipse_point(e, t), n)


def rotated_pedal_point(e: Ellipse, t, m, theta: float):
    """Foot onto the line through P(t) whose direction is the tangent turned by theta.

    theta = 0 reproduces the pedal, theta = pi/2 the contrapedal.
    """
    v = ellipse_velocity(e, t)
    ct, st = math.cos(theta), math.sin(theta)
    d = np.stack([ct * v[..., 0] - st * v[..., 1],
                  st * v[..., 0] + ct * v[..., 1]], axis=-1)
    return perpendicular_foot(m, ellipse_point(e, t), d)


def interpolated_pedal_point(e: Ellipse, t, m, mu: float):
    """(1 - mu) * pedal + mu * contrapedal; mu may lie outside [0, 1]."""
    return (1.0 - mu) * pedal_point(e, t, m) + mu * contrapedal_point(e, t, m)


def support_pedal_point(s: SupportCurve, t, m):
    """Pedal of a support-function curve: foot from m onto the tangent with normal angle t."""
    x0, y0 = as_xy(m)
    t = np.asarray(t)
    h = s.h(t)
    ct, st = np.cos(t), np.sin(t)
    return np.stack([x0 * st ** 2 + (h - y0 * st) * ct,
                     (h - x0 * ct) * st + y0 * ct ** 2], axis=-1)


def support_contrapedal_point(s: SupportCurve, t, m):
    """Contrapedal of a support-function curve: foot from m onto the normal line."""
    x0, y0 = as_xy(m)
    t = np.asarray(t)
    dh = s.dh(t)
    ct, st = np.cos(t), np.sin(t)
    return np.stack([x0 * ct ** 2 + y0 * ct * st - dh * st,
                     y0 * st ** 2 + x0 * ct * st + dh * ct], axis=-1)


# ---------------------------------------------------------------------------
# envelopes of line families


@dataclass
class LineFamily:
    """One-parameter family of lines n(t) . X = d(t) with derivative data.

    The envelope point at t solves the 2x2 system stacking the line with its
    t-derivative.
    """

    normal: Callable
    offset: Callable
    dnormal: Callable
    doffset: Callable


def envelope_point(fam: LineFamily, t):
    """Characteristic point of the family at t; raises SingularFamily when
    the line and its derivative line are parallel (zero determinant)."""
    t = np.asarray(t)
    n = np.asarray(fam.normal(t))
    dn = np.asarray(fam.dnormal(t))
    d = np.asarray(fam.offset(t))
    dd = np.asarray(fam.doffset(t))
    nx, ny = n[..., 0], n[..., 1]
    mx, my = dn[..., 0], dn[..., 1]
    det = nx * my - ny * mx
    scale2 = nx * nx + ny * ny + mx * mx + my * my
    bad = np.abs(det) < 1e-12 * np.abs(scale2)
    if np.any(bad):
        t_bad = float(np.real(np.atleast_1d(t)[np.argmax(np.atleast_1d(bad))]))
        raise SingularFamily(
            f"envelope is singular near t={t_bad:.6g} (parallel line pencil)", t=t_bad)
    x = (d * my - dd * ny) / det
    y = (nx * dd - mx * d) / det
    return np.stack([x, y], axis=-1)


def negative_pedal_family(e: Ellipse, m) -> LineFamily:
    """Lines through P(t) perpendicular to P(t) - m, as an envelope family."""
    mx, my = as_xy(m)

    def normal(t):
        p = ellipse_point(e, t)
        return np.stack([p[..., 0] - mx, p[..., 1] - my], axis=-1)

    def offset(t):
        p = ellipse_point(e, t)
        return (p[..., 0] - mx) * p[..., 0] + (p[..., 1] - my) * p[..., 1]

    def dnormal(t):
        return ellipse_velocity(e, t)

    def doffset(t):
        p = ellipse_point(e, t)
        v = ellipse_velocity(e, t)
        return v[..., 0] * (2 * p[..., 0] - mx) + v[..., 1] * (2 * p[..., 1] - my)

    return LineFamily(normal=normal, offset=offset, dnormal=dnormal, doffset=doffset)


def negative_pedal_point(e: Ellipse, t, m):
    """Envelope point of the lines through P(t) perpendicular to P(t) - m."""
    return envelope_point(negative_pedal_family(e, m), t)


# ---------------------------------------------------------------------------
# hybrid curve


def _hybrid_parts(e: Ellipse, t, m):
    a, b = e.a, e.b
    x0, y0 = as_xy(m)
    c2 = e.c2
    t = np.asarray(t)
    ct, st = np.cos(t), np.sin(t)
    c2t, s2t = np.cos(2 * t), np.sin(2 * t)
    c3t, s3t = np.cos(3 * t), np.sin(3 * t)
    den = 4.0 * (a * y0 * st + b * x0 * ct - a * b)
    nx = (-b * (3 * a * a + b * b + 4 * y0 * y0) * ct + 4 * a * b * x0 * c2t
          - b * c2 * c3t + 4 * a * x0 * y0 * st + 4 * b * b * y0 * s2t)
    ny = (-a * (a * a + 3 * b * b + 4 * x0 * x0) * st + 4 * a * a * x0 * s2t
          - a * c2 * s3t + 4 * b * x0 * y0 * ct - 4 * a * b * y0 * c2t)
    return nx, ny, den


def hybrid_point(e: Ellipse, t, m):
    """Intersection of the perpendicular to the tangent direction through m
    with the perpendicular to m - P(t) through P(t).

    Blows up where m sits on the tangent line at P(t); for m on the ellipse
    that happens only at the parameter of m itself.
    """
    nx, ny, den = _hybrid_parts(e, t, m)
    eps = 1e-9 * 4.0 * e.a * e.b
    small = np.abs(den) <= eps
    if np.any(small):
        t_bad = float(np.real(np.atleast_1d(np.asarray(t))[np.argmax(np.atleast_1d(small))]))
        raise SingularParameter(
            f"hybrid point undefined near t={t_bad:.6g} (pole on the tangent line)", t=t_bad)
    return np.stack([nx / den, ny / den], axis=-1)


def hybrid_velocity(e: Ellipse, t, m):
    """t-derivative of hybrid_point by the quotient rule."""
    a, b = e.a, e.b
    x0, y0 = as_xy(m)
    c2 = e.c2
    t = np.asarray(t)
    ct, st = np.cos(t), np.sin(t)
    c2t, s2t = np.cos(2 * t), np.sin(2 * t)
    c3t, s3t = np.cos(3 * t), np.sin(3 * t)
    nx, ny, den = _hybrid_parts(e, t, m)
    eps = 1e-9 * 4.0 * a * b
    if np.min(np.abs(den)) <= eps:
        raise SingularParameter("hybrid velocity undefined (pole on the tangent line)")
    dnx = (b * (3 * a * a + b * b + 4 * y0 * y0) * st - 8 * a * b * x0 * s2t
           + 3 * b * c2 * s3t + 4 * a * x0 * y0 * ct + 8 * b * b * y0 * c2t)
    dny = (-a * (a * a + 3 * b * b + 4 * x0 * x0) * ct + 8 * a * a * x0 * c2t
           - 3 * a * c2 * c3t - 4 * b * x0 * y0 * st + 8 * a * b * y0 * s2t)
    dden = 4.0 * (a * y0 * ct - b * x0 * st)
    vx = (dnx * den - nx * dden) / den ** 2
    vy = (dny * den - ny * dden) / den ** 2
    return np.stack([vx, vy], axis=-1)


# ---------------------------------------------------------------------------
# pseudo-Talbot curve


def pseudo_talbot_point(e: Ellipse, s: float, u):
    """Cubic-harmonic companion of the hybrid curve for a pole on the ellipse.

    The pole is P(s).  The traversal parameter u runs the curve so that its
    signed area matches the orientation of the supporting line family, which
    is opposite to the raw harmonic angle; internally the formula is
    evaluated at angle -u.
    """
    a, b = e.a, e.b
    a2, b2 = a * a, b * b
    a4, b4 = a2 * a2, b2 * b2
    c4 = e.c2 * e.c2
    cs, ss = math.cos(s), math.sin(s)
    t = -np.asarray(u)
    ct, st = np.cos(t), np.sin(t)
    ct2 = ct * ct
    kx = 2 * ct2 * ct2 - 3 * ct2
    ky = 2 * ct2 * ct2 - ct2
    x = (-((kx + 1) * a4 - 2 * (kx + 1) * a2 * b2 + kx * b4) * cs
         - 2 * c4 * st ** 3 * ct * ss
         + ct * (a2 + b2) * (-a2 * st ** 2 - b2 * ct2 + 2 * b2)) / (a * b2)
    y = (-2 * c4 * st * ct ** 3 * cs
         - ((ky - 1) * a4 - 2 * ky * a2 * b2 + ky * b4) * ss
         + st * (a2 + b2) * ((a2 - b2) * ct2 + a2)) / (a2 * b)
    return np.stack([x, y], axis=-1)


# ---------------------------------------------------------------------------
# evolutoids


def evolutoid_point(e: Ellipse, theta: float, t):
    """Envelope point of lines meeting the ellipse at angle theta to the tangent.

    theta = 0 returns P(t); theta = pi/2 returns the evolute point.
    """
    a, b = e.a, e.b
    c2 = e.c2
    cth, sth = math.cos(theta), math.sin(theta)
    t = np.asarray(t)
    ct, st = np.cos(t), np.sin(t)
    x = (a * cth * cth * ct + c2 * sth * sth * ct ** 3 / a
         - st * sth * cth * (b * b * ct * ct + a * a * st * st) / b)
    y = (a * sth * cth * ct
         - c2 * sth * ct * ct * (b * ct * cth - a * sth * st) / (a * b)
         + st * (b * b * cth * cth - c2 * sth * sth) / b)
    return np.stack([x, y], axis=-1)


def evolutoid_support(s: SupportCurve, theta: float) -> SupportCurve:
    """Evolutoid of a support-function curve, again as a support curve.

    h_theta(t) = h(t - theta) cos theta + h'(t - theta) sin theta.  The third
    derivative of h is not part of the SupportCurve contract, so the second
    derivative of h_theta falls back to a fourth-order central difference of
    s.d2h (step ~7.4e-4 balances truncation against roundoff).
    """
    cth, sth = math.cos(theta), math.sin(theta)
    fd_step = 7.4e-4

    def h(t):
        u = np.asarray(t) - theta
        return s.h(u) * cth + s.dh(u) * sth

    def dh(t):
        u = np.asarray(t) - theta
        return s.dh(u) * cth + s.d2h(u) * sth

    def d2h(t):
        u = np.asarray(t) - theta
        d3 = (-s.d2h(u + 2 * fd_step) + 8 * s.d2h(u + fd_step)
              - 8 * s.d2h(u - fd_step) + s.d2h(u - 2 * fd_step)) / (12 * fd_step)
        return s.d2h(u) * cth + d3 * sth

    return SupportCurve(h=h, dh=dh, d2h=d2h)


# ---------------------------------------------------------------------------
# feature detectors


_CS_STEP = 1e-200


def _velocity_of(evaluator: Callable, t: float) -> np.ndarray:
    """Derivative of a point evaluator: complex step when the evaluator
    supports it, otherwise central differences."""
    try:
        p = np.asarray(evaluator(t + 1j * _CS_STEP))
        if not np.iscomplexobj(p):
            raise TypeError("evaluator discarded the imaginary part")
        return np.asarray(p.imag, dtype=float).reshape(2) / _CS_STEP
    except Exception:
        dt = 1e-7
        lo = np.asarray(evaluator(t - dt), dtype=float).reshape(2)
        hi = np.asarray(evaluator(t + dt), dtype=float).reshape(2)
        return (hi - lo) / (2 * dt)


def _speed_of(evaluator: Callable, t: float) -> float:
    v = _velocity_of(evaluator, t)
    return float(math.hypot(v[0], v[1]))


def _chord_speed(evaluator: Callable, t: float, delta: float = 1e-3) -> float:
    """Secant slope |P(t+delta) - P(t-delta)| / (2 delta).

    A robust stand-in for the speed: envelope evaluators lose their velocity
    to rounding noise near a singular family parameter while their positions
    stay clean, and a cusp pulls the two chord endpoints together anyway.
    The chord is kept coarse so the position noise stays far below it; a
    probe landing on the singular parameter itself counts as fast.
    """
    try:
        lo = np.asarray(evaluator(t - delta), dtype=float).reshape(2)
        hi = np.asarray(evaluator(t + delta), dtype=float).reshape(2)
    except GeometryError:
        return math.inf
    return float(math.hypot(hi[0] - lo[0], hi[1] - lo[1])) / (2 * delta)


def _golden_min(f: Callable, lo: float, hi: float, xtol: float = 1e-10) -> float:
    """Golden-section minimizer; assumes a single interior minimum."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    return 0.5 * (lo + hi)


def find_cusps(curve: SampledCurve, tol: float = 1e-5) -> np.ndarray:
    """Parameters (mod 2*pi) where the curve has a cusp.

    Grid speeds flag candidate minima; each is refined by golden section on
    the true parametric speed and accepted when the refined speed drops
    below tol times the median grid speed *and* the velocity direction
    reverses across the point.  Both conditions together reject smooth slow
    spots and grazing near-cusps.  An outright velocity zero (refined speed
    below 1e-13 of the median) counts regardless of reversal: there the
    velocity vanishes to even order, as at the parameter where a pair of
    cusps is born, and its direction comes back unflipped.
    """
    n = len(curve)
    if n < 8:
        raise DomainError("cusp detection needs at least 8 samples")
    t = curve.params
    pts = curve.points
    step = t[1] - t[0]
    diff = np.roll(pts, -1, axis=0) - np.roll(pts, 1, axis=0)
    speed = np.hypot(diff[:, 0], diff[:, 1]) / (2 * step)
    ref = float(np.median(speed))
    if ref <= 0:
        raise DomainError("degenerate curve: median speed is zero")

    prev = np.roll(speed, 1)
    nxt = np.roll(speed, -1)
    candidates = np.nonzero((speed < prev) & (speed <= nxt))[0]

    ev = curve.evaluator
    found: List[float] = []
    for k in candidates:
        lo, hi = t[k] - step, t[k] + step
        if ev is not None:
            tr = _golden_min(lambda x: _speed_of(ev, x), lo, hi)
            s_min = _speed_of(ev, tr)
        else:
            tr = float(t[k])
            s_min = float(speed[k])
        if s_min >= tol * ref:
            if ev is None:
                continue
            # retry on chord speeds: a cusp sitting where the evaluator is
            # nearly singular shows a noisy velocity but clean positions
            tr = _golden_min(lambda x: _chord_speed(ev, x), lo, hi)
            if _chord_speed(ev, tr) >= tol * ref:
                continue
            u = (np.asarray(ev(tr - 1e-3), dtype=float).reshape(2)
                 - np.asarray(ev(tr - 2e-3), dtype=float).reshape(2))
            w = (np.asarray(ev(tr + 2e-3), dtype=float).reshape(2)
                 - np.asarray(ev(tr + 1e-3), dtype=float).reshape(2))
            if float(u @ w) >= 0.0:
                continue
            found.append(tr % TWO_PI)
            continue
        if s_min >= 1e-13 * ref:
            if ev is not None:
                va = _velocity_of(ev, tr - 1e-4)
                vb = _velocity_of(ev, tr + 1e-4)
            else:
                va = (pts[k] - pts[k - 1]) / step
                vb = (pts[(k + 1) % n] - pts[k]) / step
            if float(va @ vb) >= 0.0:
                continue
        found.append(tr % TWO_PI)

    if not found:
        return np.empty(0)
    found.sort()
    merged = [found[0]]
    for x in found[1:]:
        if x - merged[-1] > 1e-7:
            merged.append(x)
    if len(merged) > 1 and (merged[0] + TWO_PI) - merged[-1] <= 1e-7:
        merged.pop()
    return np.asarray(merged)


# ---------------------------------------------------------------------------
# self intersections


@dataclass
class Crossing:
    """A transversal self-intersection: the point and the two parameters."""

    point: np.ndarray
    t1: float
    t2: float


def _segment_hits(a1, d1, a2, d2):
    """Intersection fractions of segment bundles a + s d, half-open in [0, 1)."""
    den = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
    r = a2 - a1
    with np.errstate(divide="ignore", invalid="ignore"):
        s = (r[..., 0] * d2[..., 1] - r[..., 1] * d2[..., 0]) / den
        u = (r[..., 0] * d1[..., 1] - r[..., 1] * d1[..., 0]) / den
    ok = (np.abs(den) > 1e-14) & (s >= 0) & (s < 1) & (u >= 0) & (u < 1)
    return ok, s, u


def self_intersections(curve: SampledCurve, refine: bool = True,
                       block: int = 512) -> List[Crossing]:
    """Transversal self-crossings of the closed polyline through the samples.

    Non-adjacent segment pairs are intersected block-wise; with an attached
    evaluator each hit is polished by re-intersecting locally resampled
    arcs.  Parameters are reported inside the sampled window (the second one
    may exceed the start by up to a full period at the wrap segment).
    """
    pts = curve.points
    n = len(pts)
    if n < 8:
        raise DomainError("self-intersection scan needs at least 8 samples")
    t = curve.params
    a = pts
    d = np.roll(pts, -1, axis=0) - pts
    tseg = t
    tlen = np.full(n, t[1] - t[0])

    hits: List[Crossing] = []
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        for j0 in range(i0, n, block):
            j1 = min(j0 + block, n)
            ii, jj = np.meshgrid(np.arange(i0, i1), np.arange(j0, j1), indexing="ij")
            mask = (jj > ii + 1) & ~((ii == 0) & (jj == n - 1))
            if not np.any(mask):
                continue
            ok, s, u = _segment_hits(a[ii], d[ii], a[jj], d[jj])
            ok &= mask
            for i, j in zip(*np.nonzero(ok)):
                si, ui = s[i, j], u[i, j]
                gi, gj = ii[i, j], jj[i, j]
                hits.append(Crossing(
                    point=a[gi] + si * d[gi],
                    t1=float(tseg[gi] + si * tlen[gi]),
                    t2=float(tseg[gj] + ui * tlen[gj]),
                ))

    if refine and curve.evaluator is not None:
        hits = [_polish_crossing(curve.evaluator, c, float(tlen[0])) for c in hits]
    return hits


def _polish_crossing(ev: Callable, c: Crossing, width: float) -> Crossing:
    """Shrink the two parameter windows around a crossing by re-intersection."""
    t1, t2 = c.t1, c.t2
    best = c
    for _ in range(3):
        g1 = np.linspace(t1 - width, t1 + width, 9)
        g2 = np.linspace(t2 - width, t2 + width, 9)
        p1 = np.asarray(ev(g1), dtype=float)
        p2 = np.asarray(ev(g2), dtype=float)
        a1, d1 = p1[:-1], np.diff(p1, axis=0)
        a2, d2 = p2[:-1], np.diff(p2, axis=0)
        ii, jj = np.meshgrid(np.arange(8), np.arange(8), indexing="ij")
        ok, s, u = _segment_hits(a1[ii], d1[ii], a2[jj], d2[jj])
        if not np.any(ok):
            break
        i, j = next(zip(*np.nonzero(ok)))
        si, ui = s[i, j], u[i, j]
        t1 = float(g1[i] + si * (g1[i + 1] - g1[i]))
        t2 = float(g2[j] + ui * (g2[j + 1] - g2[j]))
        best = Crossing(point=a1[i] + si * d1[i], t1=t1, t2=t2)
        width /= 6.0
    return best
