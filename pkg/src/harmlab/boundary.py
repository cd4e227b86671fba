"""Degree-1 boundary maps of the circle onto convex curves.

A map is stored kinematically: an arc schedule ``s(t)`` telling which arc
position is reached at clock time t, built from a speed profile.  Positive
speed gives a diffeomorphism; nondecreasing schedules cover the monotone
case and can be mollified into diffeomorphisms.
"""

from __future__ import annotations

import numpy as np

from . import spectral
from .curves import ConvexCurve, TWO_PI
from .errors import (InsufficientSamples, InvalidEpsilon, NonMonotoneInput,
                     NonPositiveSpeed)

DEFAULT_MODES = 256


class SpeedProfile:
    """Positive speed samples on the uniform grid over [0, 2*pi)."""

    def __init__(self, samples, strict=True):
        self.samples = np.asarray(samples, dtype=float)
        if strict and np.any(self.samples <= 0.0):
            raise NonPositiveSpeed(
                f"min speed {self.samples.min():.3e} is not positive")
        if not strict and np.any(self.samples < 0.0):
            raise NonPositiveSpeed("speed samples must be nonnegative")

    @classmethod
    def from_function(cls, fn, m=2048, strict=True):
        return cls(fn(spectral.grid(TWO_PI, m)), strict=strict)

    def __len__(self):
        return len(self.samples)


class BoundaryMap:
    """Degree-1 map of the circle onto a convex curve.

    Attributes
    ----------
    target : ConvexCurve
    schedule : array
        Arc positions ``s(t_i)`` of the lift, nondecreasing with
        ``s(2*pi) = s(0) + L``.
    points : complex array
        Samples ``f(t_i) = z(s(t_i))`` on the target curve.
    coefficients : complex array
        Fourier coefficients ``c_k`` for ``|k| <= n_modes``, index k+n_modes.
    speed_min, speed_max : float
        Bounds of the normalized speed when built from a positive profile.
    """

    def __init__(self, target: ConvexCurve, schedule, n_modes=DEFAULT_MODES,
                 speed_samples=None, check_monotone=True):
        self.target = target
        self.schedule = np.asarray(schedule, dtype=float)
        self.m = len(self.schedule)
        inc = np.diff(self.schedule)
        if check_monotone and np.any(inc < -1e-9 * target.length):
            raise NonMonotoneInput("schedule must be nondecreasing")
        self.points = target.point(np.mod(self.schedule, target.length))
        self.n_modes = int(n_modes)
        self.coefficients = fourier_coefficients(self, self.n_modes)
        if speed_samples is not None:
            speed_samples = np.asarray(speed_samples, dtype=float)
            self.speed_min = float(speed_samples.min())
            self.speed_max = float(speed_samples.max())
        else:
            self.speed_min = None
            self.speed_max = None
        self.speed_samples = speed_samples

    @property
    def t_grid(self):
        return spectral.grid(TWO_PI, self.m)

    def coefficient(self, k):
        return self.coefficients[k + self.n_modes]

    def schedule_function(self):
        """Callable lift of the schedule, linear ramp plus periodic part."""
        return spectral.RampFunction(self.schedule, TWO_PI,
                                     self.target.length / TWO_PI)


def boundary_from_speed(curve: ConvexCurve, profile: SpeedProfile,
                        n_modes=DEFAULT_MODES, phase=0.0) -> BoundaryMap:
    """Boundary map whose motion along the curve has the given speed.

    The schedule is the normalized integral of the profile, so one clock
    lap covers the curve exactly once regardless of the profile's scale:
    ``s(t) = (L / integral v) * integral_0^t v``.  ``phase`` shifts the
    start point by an arc fraction of the curve (radians of a full lap).
    """
    v = profile.samples
    if np.any(v <= 0.0):
        raise NonPositiveSpeed("boundary_from_speed requires positive speed")
    raw = np.real(spectral.antiderivative(v, TWO_PI))
    total = float(np.mean(v)) * TWO_PI
    scale = curve.length / total
    schedule = scale * raw + phase * curve.length / TWO_PI
    # non-band-limited profiles may leave the spectral integral slightly
    # non-monotone between nodes; trapezoid integration is a safe fallback
    if np.any(np.diff(schedule) <= 0.0):
        inc = 0.5 * (v[:-1] + v[1:]) * (TWO_PI / len(v))
        raw = np.concatenate([[0.0], np.cumsum(inc)])[:-1]
        total = raw[-1] + 0.5 * (v[-1] + v[0]) * (TWO_PI / len(v))
        schedule = (curve.length / total) * raw + phase * curve.length / TWO_PI
    normalized = v * (curve.length / total)
    return BoundaryMap(curve, schedule, n_modes, speed_samples=normalized)


def boundary_from_schedule(curve: ConvexCurve, schedule, n_modes=DEFAULT_MODES,
                           speed_samples=None, check_monotone=True) -> BoundaryMap:
    """Boundary map from an explicit nondecreasing arc schedule."""
    return BoundaryMap(curve, schedule, n_modes, speed_samples=speed_samples,
                       check_monotone=check_monotone)


def constant_speed_map(curve: ConvexCurve, m=2048, n_modes=DEFAULT_MODES,
                       phase=0.0) -> BoundaryMap:
    """Arc-length proportional parametrization of the curve."""
    profile = SpeedProfile(np.full(m, 1.0))
    return boundary_from_speed(curve, profile, n_modes, phase)


def fourier_coefficients(bmap: BoundaryMap, n_modes: int) -> np.ndarray:
    """Trapezoid Fourier coefficients ``c_k``, ``|k| <= n_modes``.

    Exact for band-limited samples.  Returned with index ``k + n_modes``.
    """
    m = len(bmap.points)
    if m < 2 * n_modes + 2:
        raise InsufficientSamples(
            f"{m} samples cannot resolve {n_modes} modes")
    c = np.fft.fft(bmap.points) / m
    k = np.arange(-n_modes, n_modes + 1)
    return c[np.mod(k, m)]


def smooth_monotone(bmap: BoundaryMap, eps: float,
                    n_modes=None) -> BoundaryMap:
    """Mollify a monotone schedule into a strictly increasing one.

    The periodic part of the schedule is convolved with a discrete
    triangular kernel of half-width ``pi * eps`` and the result blended
    with the linear schedule:

        s_eps = (1 - eps) * mollified(s) + eps * (L t / 2 pi)

    Discrete convolution with nonnegative weights preserves monotonicity
    of the lift exactly; the blend term makes the output strictly
    increasing and keeps ``sup |s_eps - s|`` of order eps.
    """
    if not (0.0 < eps < 1.0):
        raise InvalidEpsilon(f"eps must lie in (0, 1), got {eps}")
    s = bmap.schedule
    m = len(s)
    length = bmap.target.length
    linear = spectral.grid(TWO_PI, m) * (length / TWO_PI)
    periodic = s - linear

    half = int(round(np.pi * eps / (TWO_PI / m)))
    if half >= 1:
        offsets = np.arange(-half, half + 1)
        weights = np.maximum(1.0 - np.abs(offsets) / half, 0.0)
        weights /= weights.sum()
        kernel = np.zeros(m)
        kernel[np.mod(offsets, m)] = weights
        mollified = np.real(np.fft.ifft(np.fft.fft(periodic) * np.fft.fft(kernel)))
    else:
        mollified = periodic
    blended = (1.0 - eps) * (linear + mollified) + eps * linear
    return boundary_from_schedule(bmap.target, blended,
                                  n_modes or bmap.n_modes)


def monotonicity_degree_check(bmap: BoundaryMap):
    """Check the schedule is monotone of degree one.

    Returns ``(ok, worst_slope)`` where slopes are finite differences of
    the lift; ok requires every slope >= -1e-9 and a total increase of one
    curve length over the clock lap.
    """
    s = bmap.schedule
    length = bmap.target.length
    h = TWO_PI / len(s)
    lift = np.concatenate([s, [s[0] + length]])
    slopes = np.diff(lift) / h
    worst = float(slopes.min())
    total = lift[-1] - lift[0]
    ok = worst >= -1e-9 * max(1.0, length) and abs(total - length) <= 1e-6 * length
    return ok, worst
