"""Numeric differential operators and distortion functionals.

Everything here treats maps as black-box callables on point arrays, which
is what makes these functions usable as oracles against the exact series
and polynomial derivatives elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (NonPositiveJacobian, OriginSingularity, OutOfDomain,
                     SingularMatrix)


@dataclass(frozen=True)
class DerivativeNorms:
    """Extreme stretches and determinant of a derivative matrix."""
    max_stretch: float
    min_stretch: float
    det: float

    def __post_init__(self):
        if not (self.max_stretch >= self.min_stretch >= 0.0):
            raise ValueError("need max_stretch >= min_stretch >= 0")


def fd_jacobian(map_fn, x, step=1e-3, richardson=True):
    """Central-difference derivative matrix of a vector field at ``x``.

    ``map_fn`` maps (..., n) arrays to (..., n) arrays.  With Richardson
    extrapolation the truncation error is O(step^4).
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]

    def central(h):
        cols = []
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            cols.append((map_fn(x + e) - map_fn(x - e)) / (2.0 * h))
        return np.stack(cols, axis=-1)

    coarse = central(step)
    if not richardson:
        return coarse
    fine = central(step / 2.0)
    return (4.0 * fine - coarse) / 3.0


def singular_extremes(matrix):
    """(largest, smallest) singular values via the eigenproblem of m^T m."""
    m = np.asarray(matrix, dtype=float)
    eigs = np.linalg.eigvalsh(np.swapaxes(m, -1, -2) @ m)
    eigs = np.sqrt(np.clip(eigs, 0.0, None))
    return eigs[..., -1], eigs[..., 0]


def derivative_norms(matrix) -> DerivativeNorms:
    big, small = singular_extremes(matrix)
    return DerivativeNorms(float(big), float(small),
                           float(np.linalg.det(np.asarray(matrix))))


def distortion(matrix):
    """Outer and inner distortion ``(K_O, K_I)`` of a derivative matrix.

    ``K_O = Lambda^n / |J|`` and ``K_I = |J| / lambda^n`` with n the
    dimension, so both are >= 1 for every nonsingular matrix.
    """
    m = np.asarray(matrix, dtype=float)
    n = m.shape[-1]
    det = np.abs(np.linalg.det(m))
    big, small = singular_extremes(m)
    if np.any(det <= 1e-14 * big ** n):
        raise SingularMatrix("distortion is undefined at singular points")
    return big ** n / det, det / small ** n


# -- radial maps ----------------------------------------------------------------

def radial_map(a, x):
    """The power map ``x -> |x|^(a-1) x`` (identity for a = 1)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1, keepdims=True)
    if a < 1.0 and np.any(r == 0.0):
        raise OriginSingularity("radial map with a < 1 is singular at 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        factor = np.where(r > 0.0, r ** (a - 1.0), 0.0 if a > 1.0 else 1.0)
    return factor * x


def radial_pair_margin(a, x, y):
    """Margin of the pairwise expansion bound of the power map.

    For ``|y| = lam |x|`` with ``lam <= 1`` the images satisfy
    ``|x' - y'| >= lam^((a-1)/2) |x|^(a-1) |x - y|``; the margin is the
    left side minus the right side (arrays supported).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx = np.linalg.norm(x, axis=-1)
    ry = np.linalg.norm(y, axis=-1)
    swap = ry > rx
    if np.any(swap):
        x, y = np.where(swap[..., None], y, x), np.where(swap[..., None], x, y)
        rx, ry = np.where(swap, ry, rx), np.where(swap, rx, ry)
    lam = np.where(rx > 0.0, ry / np.maximum(rx, 1e-300), 0.0)
    lhs = np.linalg.norm(radial_map(a, x) - radial_map(a, y), axis=-1)
    rhs = lam ** ((a - 1.0) / 2.0) * rx ** (a - 1.0) * np.linalg.norm(x - y, axis=-1)
    return lhs - rhs


def radial_pair_remainder(a, x, y):
    """Remainder ``R = |x|^2a + |y|^2a - |x|^(a+1)|y|^(a-1) - |x|^(a-1)|y|^(a+1)``.

    Equals ``|x' - y'|^2 - |x|^(a-1) |y|^(a-1) |x - y|^2`` and is
    nonnegative whenever ``|y| <= |x|`` and ``a >= 1``.
    """
    rx = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
    ry = np.linalg.norm(np.asarray(y, dtype=float), axis=-1)
    return (rx ** (2 * a) + ry ** (2 * a)
            - rx ** (a + 1) * ry ** (a - 1) - rx ** (a - 1) * ry ** (a + 1))


# -- mean-value comparisons ------------------------------------------------------

def _sphere_mean(field, center, radius, n_angles=256, n_polar=24):
    center = np.asarray(center)
    if center.dtype == complex or center.ndim == 0:
        theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
        pts = complex(center) + radius * np.exp(1j * theta)
        return float(np.mean(np.real(field(pts))))
    mu, w = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * np.pi * np.arange(n_angles) / n_angles
    st = np.sqrt(1.0 - mu ** 2)
    dirs = np.stack([np.outer(st, np.cos(phi)), np.outer(st, np.sin(phi)),
                     np.outer(mu, np.ones(n_angles))], axis=-1).reshape(-1, 3)
    wq = np.outer(w, np.full(n_angles, 1.0 / n_angles)).reshape(-1) / 2.0
    vals = np.real(field(center[None, :] + radius * dirs))
    return float(np.sum(wq * vals))


def meanvalue_test(field, center, radii, sense="sub", q=1.0,
                   inside=None):
    """Worst sphere mean-value margin of a scalar field at ``center``.

    ``sense='sub'`` requires ``mean >= field(center)`` on every sphere
    (margin = mean - value); ``sense='super'`` requires
    ``field(center) >= q * mean`` (margin = value - q * mean).
    ``inside`` optionally validates that each sphere stays in the domain.
    """
    if not (0.0 < q <= 1.0):
        raise ValueError("q must lie in (0, 1]")
    center_val = float(np.real(field(np.asarray(center)[None]
                                     if np.ndim(center) else np.asarray(center))))
    worst = np.inf
    for r in radii:
        if inside is not None and not inside(center, r):
            raise OutOfDomain(f"sphere of radius {r} leaves the domain")
        mean = _sphere_mean(field, center, r)
        margin = (mean - center_val) if sense == "sub" else (center_val - q * mean)
        worst = min(worst, margin)
    return worst


# -- averaged Jacobian quantities ------------------------------------------------

def _disk_average(fn, center, radius, n_r=32, n_t=128):
    """Area average of ``fn`` over the disk B(center, radius)."""
    nodes, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (nodes + 1.0)
    wr = 0.5 * radius * w
    theta = 2.0 * np.pi * np.arange(n_t) / n_t
    pts = complex(center) + np.outer(r, np.exp(1j * theta)).ravel()
    vals = np.real(fn(pts)).reshape(len(r), n_t)
    integral = np.sum(wr * r * np.mean(vals, axis=1)) * 2.0 * np.pi
    return integral / (np.pi * radius ** 2)


def _ball_average(fn, center, radius, n_r=16, n_polar=32, n_az=64):
    nodes, w = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (nodes + 1.0)
    wr = 0.5 * radius * w
    mu, wmu = np.polynomial.legendre.leggauss(n_polar)
    phi = 2.0 * np.pi * np.arange(n_az) / n_az
    st = np.sqrt(1.0 - mu ** 2)
    dirs = np.stack([np.outer(st, np.cos(phi)), np.outer(st, np.sin(phi)),
                     np.outer(mu, np.ones(n_az))], axis=-1).reshape(-1, 3)
    wdir = np.outer(wmu, np.full(n_az, 2.0 * np.pi / n_az)).reshape(-1)
    pts = (r[:, None, None] * dirs[None, :, :]
           + np.asarray(center)[None, None, :]).reshape(-1, 3)
    vals = np.real(fn(pts)).reshape(len(r), len(dirs))
    integral = np.sum(wr * r ** 2 * (vals @ wdir))
    return integral / (4.0 / 3.0 * np.pi * radius ** 3)


def astala_gehring_a(jacobian_fn, x, boundary_dist, dim=2):
    """Exponentiated mean of ``log J`` over the full distance ball.

    ``a(x) = exp( (1/(n |B|)) * integral_B log J )`` with
    ``B = B(x, d(x))``; equals |c| for the conformal map ``c z``.
    """
    d = float(boundary_dist(x))
    if d <= 0:
        raise OutOfDomain("x must be interior")
    avg = (_disk_average if dim == 2 else _ball_average)(
        lambda p: _checked_log(jacobian_fn(p)), x, d)
    return float(np.exp(avg / dim))


def _checked_log(vals):
    vals = np.asarray(vals, dtype=float)
    if np.any(vals <= 0.0):
        raise NonPositiveJacobian("log J requires J > 0 on the ball")
    return np.log(vals)


def mean_jacobian(jacobian_fn, x, boundary_dist, dim=2):
    """Half-ball Jacobian mean ``(avg J over B(x, d/2))^(1/n)``.

    The Jacobian is averaged as-is (no absolute value); the number of
    negative-mass quadrature cells is returned alongside so sign problems
    surface instead of being hidden.
    """
    d = float(boundary_dist(x))
    if d <= 0:
        raise OutOfDomain("x must be interior")
    neg = [0]

    def grab(p):
        vals = np.asarray(jacobian_fn(p), dtype=float)
        neg[0] += int(np.sum(vals < 0.0))
        return vals

    avg = (_disk_average if dim == 2 else _ball_average)(grab, x, d / 2.0)
    value = float(np.sign(avg) * np.abs(avg) ** (1.0 / dim))
    return value, neg[0]
