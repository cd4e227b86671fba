"""Closed strictly convex plane curves and the domains they bound.

Curves are stored by arc length on a uniform grid together with the
tangential angle and curvature at each node.  Points are complex numbers;
inner products of plane vectors are ``Re(u * conj(v))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import (InvalidAxes, NonPositiveCurvature, PointNotOnBoundary,
                     PointOutside, TurningNumberMismatch)

DEFAULT_SAMPLES = 2048

TWO_PI = 2.0 * np.pi


def dot(u, v):
    """Euclidean inner product of plane vectors stored as complex numbers."""
    return np.real(u * np.conj(v))


class ConvexCurve:
    """Closed strictly convex curve sampled uniformly by arc length.

    Parameters
    ----------
    length : float
        Total arc length L.
    points : complex array, shape (M,)
        Curve points at ``s_i = i L / M``, counterclockwise.
    angles : float array, shape (M,)
        Unwrapped tangential angle at each node; increases by 2*pi per lap.
    curvature : float array, shape (M,)
        Strictly positive curvature at each node.
    """

    def __init__(self, length, points, angles, curvature, validate=True):
        self.length = float(length)
        self.points = np.asarray(points, dtype=complex)
        self.angles = np.asarray(angles, dtype=float)
        self.curvature = np.asarray(curvature, dtype=float)
        self.m = len(self.points)
        if validate:
            self.validate()

    # -- invariants ----------------------------------------------------------

    def validate(self):
        if np.any(self.curvature <= 0.0):
            raise NonPositiveCurvature(
                f"min curvature {self.curvature.min():.3e} is not positive")
        turning = self.total_turning()
        if abs(turning - TWO_PI) > 1e-8:
            raise TurningNumberMismatch(
                f"total turning {turning:.12f} differs from 2*pi")
        gap = self.closure_gap()
        if gap > 1e-8 * self.length:
            raise TurningNumberMismatch(
                f"closure gap {gap:.3e} exceeds 1e-8 * L")
        dev = spectral.speed_deviation(self.points, self.length)
        if dev > 1e-6:
            raise TurningNumberMismatch(
                f"unit-speed deviation {dev:.3e} exceeds 1e-6")

    def total_turning(self):
        """Integral of the curvature over one lap (equals phi(L) - phi(0))."""
        return float(np.mean(self.curvature)) * self.length

    def closure_gap(self):
        """Norm of the integrated tangent over one period."""
        return float(abs(np.mean(np.exp(1j * self.angles))) * self.length)

    # -- queries --------------------------------------------------------------

    @property
    def arc_grid(self):
        return spectral.grid(self.length, self.m)

    def point(self, s):
        """Curve point at arc position ``s`` (trigonometric interpolation)."""
        return spectral.interp(self.points, self.length, np.mod(s, self.length))

    def tangent_angle(self, s):
        s = np.mod(np.asarray(s, dtype=float), self.length)
        ramp = TWO_PI / self.length
        residual = self.angles - ramp * self.arc_grid
        return ramp * s + np.real(spectral.interp(residual, self.length, s))

    def curvature_at(self, s):
        s = np.mod(np.asarray(s, dtype=float), self.length)
        return np.real(spectral.interp(self.curvature, self.length, s))

    def curvature_range(self):
        return float(self.curvature.min()), float(self.curvature.max())

    def centroid(self):
        return complex(np.mean(self.points))

    # -- rigid motions and scaling --------------------------------------------

    def rotated(self, alpha):
        rot = np.exp(1j * alpha)
        return ConvexCurve(self.length, self.points * rot,
                           self.angles + alpha, self.curvature, validate=False)

    def translated(self, vec):
        return ConvexCurve(self.length, self.points + vec,
                           self.angles, self.curvature, validate=False)

    def scaled(self, rho):
        if rho <= 0:
            raise ValueError("scale factor must be positive")
        return ConvexCurve(self.length * rho, self.points * rho,
                           self.angles, self.curvature / rho, validate=False)


@dataclass(frozen=True)
class SupportLine:
    """Supporting line at a boundary contact point with inward unit normal."""
    contact: complex
    inward_normal: complex


class ConvexDomain2:
    """Bounded convex plane domain described by its boundary curve."""

    def __init__(self, boundary: ConvexCurve, p0=None):
        self.boundary = boundary
        self.p0 = complex(p0) if p0 is not None else boundary.centroid()
        normals = 1j * np.exp(1j * boundary.angles)
        if np.min(dot(self.p0 - boundary.points, normals)) <= 0.0:
            raise PointOutside("reference point p0 is not strictly inside")

    def inward_normals(self):
        return 1j * np.exp(1j * self.boundary.angles)

    def contains(self, x, slack=0.0):
        """True if x is inside (all supporting half-plane tests pass)."""
        x = np.asarray(x, dtype=complex)
        margins = dot(x[..., None] - self.boundary.points,
                      self.inward_normals())
        return np.min(margins, axis=-1) > -slack

    def distance(self, x):
        """Distance from ``x`` to the boundary.

        Minimum over the boundary samples followed by one parabolic
        refinement step in arc length through the three nearest nodes.
        Works for interior and exterior points.
        """
        x = np.asarray(x, dtype=complex)
        flat = np.atleast_1d(x).ravel()
        b = self.boundary.points
        m = self.boundary.m
        h = self.boundary.length / m
        best = np.empty(len(flat))
        idx = np.empty(len(flat), dtype=int)
        chunk = max(1, (1 << 21) // m)
        b2 = np.abs(b) ** 2
        for lo in range(0, len(flat), chunk):
            p = flat[lo:lo + chunk]
            d2 = (np.abs(p)[:, None] ** 2 + b2[None, :]
                  - 2.0 * (np.outer(p.real, b.real) + np.outer(p.imag, b.imag)))
            j = np.argmin(d2, axis=1)
            idx[lo:lo + chunk] = j
            best[lo:lo + chunk] = d2[np.arange(len(p)), j]
        best = np.maximum(best, 0.0)
        # parabolic refinement of squared distance through the argmin node
        dm = np.abs(flat - b[(idx - 1) % m]) ** 2
        dp = np.abs(flat - b[(idx + 1) % m]) ** 2
        denom = dm - 2.0 * best + dp
        offset = np.zeros_like(best)
        ok = denom > 1e-300
        offset[ok] = 0.5 * h * (dm[ok] - dp[ok]) / denom[ok]
        offset = np.clip(offset, -h, h)
        s_ref = idx * h + offset
        refined = np.abs(flat - self.boundary.point(s_ref)) ** 2
        out = np.sqrt(np.minimum(best, refined))
        return out.reshape(np.shape(x)) if np.shape(x) else float(out[0])

    def inradius(self, c):
        """Radius of the largest disk about ``c`` contained in the domain."""
        if not self.contains(c):
            raise PointOutside(f"{c} is not inside the domain")
        return float(self.distance(c))

    def diameter(self):
        """Max pairwise distance over boundary samples (brute force)."""
        b = self.boundary.points
        best = 0.0
        chunk = max(1, (1 << 21) // len(b))
        for lo in range(0, len(b), chunk):
            d = np.abs(b[lo:lo + chunk, None] - b[None, :])
            best = max(best, float(d.max()))
        return best

    def support_normal(self, a):
        """Supporting line at boundary point ``a``.

        At smooth points the inward normal is ``i * z'(s)`` with the sign
        fixed so the reference point lies on the inner side.  Sampled curves
        are smooth, so the normal cone at every node is a single ray.
        """
        a = complex(a)
        b = self.boundary.points
        j = int(np.argmin(np.abs(a - b)))
        h = self.boundary.length / self.boundary.m
        # project a onto the curve near node j to find the contact parameter
        ss = np.array([(j - 1) * h, j * h, (j + 1) * h])
        dd = np.abs(a - self.boundary.point(ss)) ** 2
        denom = dd[0] - 2.0 * dd[1] + dd[2]
        off = 0.0 if denom <= 1e-300 else 0.5 * h * (dd[0] - dd[2]) / denom
        s_ref = j * h + float(np.clip(off, -h, h))
        contact = self.boundary.point(s_ref)
        if abs(a - contact) > 1e-8 * max(1.0, self.boundary.length):
            raise PointNotOnBoundary(
                f"{a} is {abs(a - contact):.3e} away from the boundary")
        normal = 1j * np.exp(1j * self.boundary.tangent_angle(s_ref))
        if dot(self.p0 - complex(contact), normal) < 0.0:
            normal = -normal
        return SupportLine(contact=complex(contact), inward_normal=complex(normal))


# -- constructors -------------------------------------------------------------

def curve_from_curvature(curvature, length, m=None, z0=0.0, phi0=0.0):
    """Build a closed convex curve from positive curvature samples.

    The tangential angle is the integral of the curvature, so the samples
    are rescaled to make the total turning exactly 2*pi, and the mean of
    the resulting unit tangent is subtracted to close the curve.  When that
    projection is not negligible the curve is re-parametrized by arc length
    so the stored samples stay unit speed.

    Parameters
    ----------
    curvature : array or callable
        Positive curvature samples on the uniform grid over [0, L), or a
        function evaluated on that grid.
    length : float
        Arc length of the requested parametrization.
    m : int, optional
        Number of samples (defaults to the array length or 2048).
    z0, phi0 : complex, float
        Start point and initial tangent angle.
    """
    length = float(length)
    if callable(curvature):
        m = m or DEFAULT_SAMPLES
        kappa = np.asarray(curvature(spectral.grid(length, m)), dtype=float)
    else:
        kappa = np.asarray(curvature, dtype=float)
        m = len(kappa)
    if np.any(kappa <= 0.0):
        raise NonPositiveCurvature("curvature samples must be positive")
    total = float(np.mean(kappa)) * length
    if abs(total - TWO_PI) > 0.05 * TWO_PI:
        raise TurningNumberMismatch(
            f"integrated curvature {total:.6f} is more than 5% off 2*pi")
    kappa = kappa * (TWO_PI / total)

    phi = phi0 + np.real(spectral.antiderivative(kappa, length))
    tangent = np.exp(1j * phi)
    mu = np.mean(tangent)
    velocity = tangent - mu
    z = z0 + spectral.antiderivative(velocity, length)

    if abs(mu) <= 1e-13:
        return ConvexCurve(length, z, phi, kappa)

    # re-parametrize by arc length of the projected curve
    speed = np.abs(velocity)
    sigma_total = float(np.mean(speed)) * length
    sigma = spectral.RampFunction(np.real(spectral.antiderivative(speed, length)),
                                  length, sigma_total / length)
    speed_fn = spectral.PeriodicFunction(speed, length)
    targets = spectral.grid(sigma_total, m)
    s_nodes = spectral.invert_ramp(sigma, speed_fn, targets)
    z_new = spectral.interp(z, length, s_nodes)
    tang_new = spectral.interp(velocity, length, s_nodes)
    phi_new = np.unwrap(np.angle(tang_new))
    phi_new += phi0 - phi_new[0]
    ramp = TWO_PI / sigma_total
    residual = phi_new - ramp * spectral.grid(sigma_total, m)
    kappa_new = ramp + np.real(spectral.derivative(residual, sigma_total))
    z_new = z0 + (z_new - z_new[0])
    return ConvexCurve(sigma_total, z_new, phi_new, kappa_new)


def curve_from_parametric(fn, m=DEFAULT_SAMPLES, fine_factor=8):
    """Arc-length resampling of a smooth closed parametric curve.

    ``fn`` maps the parameter t in [0, 2*pi) to complex points and must
    trace a strictly convex curve once, counterclockwise.
    """
    mf = fine_factor * m
    t = spectral.grid(TWO_PI, mf)
    z = np.asarray(fn(t), dtype=complex)
    dz = spectral.derivative(z, TWO_PI)
    speed = np.abs(dz)
    length = float(np.mean(speed)) * TWO_PI
    sigma = spectral.RampFunction(np.real(spectral.antiderivative(speed, TWO_PI)),
                                  TWO_PI, length / TWO_PI)
    speed_fn = spectral.PeriodicFunction(speed, TWO_PI)
    targets = spectral.grid(length, m)
    t_nodes = spectral.invert_ramp(sigma, speed_fn, targets)
    points = np.asarray(fn(t_nodes), dtype=complex)
    tang = spectral.interp(dz, TWO_PI, t_nodes)
    phi = np.unwrap(np.angle(tang))
    ramp = TWO_PI / length
    residual = phi - ramp * spectral.grid(length, m)
    kappa = ramp + np.real(spectral.derivative(residual, length))
    return ConvexCurve(length, points, phi, kappa)


def circle_curve(radius=1.0, m=DEFAULT_SAMPLES, center=0.0):
    """Circle of given radius traversed counterclockwise from angle 0."""
    if radius <= 0:
        raise InvalidAxes("radius must be positive")
    s = spectral.grid(TWO_PI * radius, m)
    theta = s / radius
    return ConvexCurve(TWO_PI * radius,
                       center + radius * np.exp(1j * theta),
                       theta + np.pi / 2.0,
                       np.full(m, 1.0 / radius))


def ellipse_curve(a, b, m=DEFAULT_SAMPLES):
    """Unit-speed resampling of the ellipse with semi-axes ``a >= b > 0``."""
    if not (a >= b > 0):
        raise InvalidAxes(f"need a >= b > 0, got a={a}, b={b}")
    if a == b:
        return circle_curve(a, m)
    return curve_from_parametric(lambda t: a * np.cos(t) + 1j * b * np.sin(t), m)
