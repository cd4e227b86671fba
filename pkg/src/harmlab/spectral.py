"""Spectral calculus for smooth periodic samples on uniform grids.

All helpers assume samples of a period-``P`` function at the nodes
``s_i = i * P / M`` (endpoint excluded).  For smooth data every operation
here converges spectrally; the Nyquist mode of even-length grids is split
symmetrically between the +/- frequencies.
"""

from __future__ import annotations

import numpy as np

_TRUNC = 1e-15  # relative magnitude below which interpolation modes are dropped


def grid(period: float, m: int) -> np.ndarray:
    """Uniform periodic grid with the endpoint excluded."""
    return np.arange(m) * (period / m)


def _split_modes(samples):
    """FFT coefficients and wavenumber indices with the Nyquist mode split."""
    m = len(samples)
    c = np.fft.fft(samples) / m
    k = np.fft.fftfreq(m, d=1.0 / m)  # integer wavenumbers
    if m % 2 == 0:
        ny = m // 2
        c = np.concatenate([c, [0.5 * c[ny]]])
        k = np.concatenate([k, [float(ny)]])
        c[ny] *= 0.5
        k[ny] = -float(ny)
    return c, k


def derivative(samples: np.ndarray, period: float) -> np.ndarray:
    """Spectral derivative sampled on the same grid."""
    m = len(samples)
    c = np.fft.fft(samples)
    k = np.fft.fftfreq(m, d=1.0 / m)
    if m % 2 == 0:
        k[m // 2] = 0.0  # odd derivative of the Nyquist mode cancels
    return np.fft.ifft(c * (2j * np.pi / period) * k)


def mean(samples: np.ndarray) -> complex:
    return np.mean(samples)


def antiderivative(samples: np.ndarray, period: float) -> np.ndarray:
    """Samples of ``F(s) = integral_0^s f``, with ``F(0) = 0``.

    The mean of ``f`` contributes a linear ramp; the zero-mean remainder
    integrates to a periodic function recovered by FFT division.
    """
    m = len(samples)
    c = np.fft.fft(samples)
    k = np.fft.fftfreq(m, d=1.0 / m)
    omega = 2j * np.pi / period * k
    cint = np.zeros_like(c)
    nz = k != 0
    cint[nz] = c[nz] / omega[nz]
    if m % 2 == 0:
        cint[m // 2] = 0.0
    periodic = np.fft.ifft(cint)
    periodic -= periodic[0]
    return (c[0] / m) * grid(period, m) + periodic


def interp(samples: np.ndarray, period: float, s: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant at arbitrary points ``s``.

    Modes below ``_TRUNC`` of the peak magnitude are dropped, which keeps
    the cost proportional to the effective bandwidth of smooth data.
    """
    c, k = _split_modes(np.asarray(samples, dtype=complex))
    keep = np.abs(c) > _TRUNC * np.max(np.abs(c))
    c, k = c[keep], k[keep]
    s = np.asarray(s, dtype=float)
    flat = np.atleast_1d(s).ravel()
    out = np.zeros(flat.shape, dtype=complex)
    w = 2j * np.pi / period
    chunk = max(1, (1 << 22) // max(len(c), 1))
    for lo in range(0, len(flat), chunk):
        block = flat[lo:lo + chunk]
        out[lo:lo + chunk] = np.exp(np.outer(block, w * k)) @ c
    return out.reshape(np.shape(s)) if s.shape else out[0]


class PeriodicFunction:
    """Callable trigonometric interpolant of periodic samples."""

    def __init__(self, samples, period):
        self.samples = np.asarray(samples, dtype=complex)
        self.period = float(period)

    def __call__(self, s):
        return interp(self.samples, self.period, s)

    def derivative_samples(self):
        return derivative(self.samples, self.period)


class RampFunction:
    """Callable ``F(s) = slope * s + periodic part`` built from samples.

    Used for arc schedules and antiderivatives, which grow by a fixed
    increment per period on top of a periodic remainder.
    """

    def __init__(self, samples, period, slope):
        self.period = float(period)
        self.slope = float(slope)
        base = slope * grid(self.period, len(samples))
        self._residual = PeriodicFunction(np.asarray(samples) - base, period)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return self.slope * s + self._residual(s).real


def invert_ramp(fn: RampFunction, speed: PeriodicFunction, targets: np.ndarray,
                newton_steps: int = 3) -> np.ndarray:
    """Solve ``fn(s) = target`` for a strictly increasing ramp function.

    A dense linear-interpolation pass supplies the initial guess; Newton
    iterations with the spectral ``speed = fn'`` polish it.
    """
    m = len(fn._residual.samples)
    fine = grid(fn.period, 8 * m)
    fine = np.concatenate([fine, [fn.period]])
    vals = fn(fine)
    s = np.interp(targets, vals, fine)
    for _ in range(newton_steps):
        ds = (fn(s) - targets) / np.maximum(np.real(speed(s)), 1e-14)
        s = s - ds
    return s


def speed_deviation(points: np.ndarray, period: float) -> float:
    """Max deviation of |dz/ds| from 1, by fourth-order centered differences."""
    h = period / len(points)
    d = (-np.roll(points, -2) + 8 * np.roll(points, -1)
         - 8 * np.roll(points, 1) + np.roll(points, 2)) / (12 * h)
    return float(np.max(np.abs(np.abs(d) - 1.0)))
