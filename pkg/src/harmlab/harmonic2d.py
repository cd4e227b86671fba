"""Harmonic extensions into the unit disk and their exact derivatives.

A map is stored through boundary Fourier coefficients ``c_k``; its interior
values come from the damped series ``sum c_k r^|k| e^{ik theta}``, which is
the Poisson extension of the boundary data.  Splitting nonnegative and
negative modes gives the decomposition ``h = f + conj(g)`` with f, g
holomorphic, and every derivative used here is a differentiated series:
finite differences appear only in the validation oracles and in the
curvature-form checks that are defined through them.
"""

from __future__ import annotations

import numpy as np

from .errors import (NonPositiveJacobian, OutsideDisk, OutsideOpenDisk,
                     VanishingFz)

BOUNDARY_CLAMP = 1e-6  # default pullback from |z| = 1 for Jacobian queries


def _polyval(coeffs, z):
    """Horner evaluation of ``sum coeffs[k] z^k`` for array z."""
    out = np.zeros_like(z, dtype=complex) + (coeffs[-1] if len(coeffs) else 0.0)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def _derive(coeffs):
    k = np.arange(1, len(coeffs))
    return coeffs[1:] * k


class PlanarHarmonicMap:
    """Common evaluation interface for ``h = f + conj(g)`` maps.

    Subclasses hold polynomial coefficient arrays ``f_coeffs`` and
    ``g_coeffs`` (index = power) and define the admissible domain.
    """

    f_coeffs: np.ndarray
    g_coeffs: np.ndarray

    def _check(self, z, open_disk=False):
        return z  # unrestricted by default

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        self._check(z)
        return _polyval(self.f_coeffs, z) + np.conj(_polyval(self.g_coeffs, z))

    def __call__(self, z):
        return self.eval(z)

    def analytic_derivatives(self, z, order=1):
        """(f', g') or (f'', g'') of the analytic parts at z."""
        z = np.asarray(z, dtype=complex)
        self._check(z, open_disk=True)
        fc, gc = self.f_coeffs, self.g_coeffs
        for _ in range(order):
            fc, gc = _derive(fc), _derive(gc)
        return _polyval(fc, z), _polyval(gc, z)

    def wirtinger(self, z):
        """Wirtinger pair (h_z, h_zbar) = (f'(z), conj(g'(z)))."""
        fp, gp = self.analytic_derivatives(z, 1)
        return fp, np.conj(gp)

    def wirtinger2(self, z):
        """Second derivatives (f''(z), g''(z)) of the analytic parts."""
        return self.analytic_derivatives(z, 2)

    def jacobian(self, z):
        """J = |h_z|^2 - |h_zbar|^2."""
        hz, hzb = self.wirtinger(z)
        return np.abs(hz) ** 2 - np.abs(hzb) ** 2

    def jacobian_z(self, z):
        """z-derivative of the Jacobian: f'' conj(f') - g'' conj(g')."""
        fp, gp = self.analytic_derivatives(z, 1)
        fpp, gpp = self.analytic_derivatives(z, 2)
        return fpp * np.conj(fp) - gpp * np.conj(gp)

    def jacobian_zzbar(self, z):
        """Mixed second derivative of the Jacobian: |f''|^2 - |g''|^2."""
        fpp, gpp = self.analytic_derivatives(z, 2)
        return np.abs(fpp) ** 2 - np.abs(gpp) ** 2

    def stretch_bounds(self, z):
        """(Lambda, lambda) = (|h_z| + |h_zbar|, |h_z| - |h_zbar|)."""
        hz, hzb = self.wirtinger(z)
        a, b = np.abs(hz), np.abs(hzb)
        return a + b, a - b

    def heinz_energy(self, z):
        """D(h) = |h_z|^2 + |h_zbar|^2."""
        hz, hzb = self.wirtinger(z)
        return np.abs(hz) ** 2 + np.abs(hzb) ** 2

    def radial_derivative(self, r, theta):
        """d/dr of h along the ray of angle theta at radius r."""
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        if np.any(r <= 0.0):
            raise OutsideOpenDisk("radial derivative needs 0 < r")
        e = np.exp(1j * theta)
        z = r * e
        fp, gp = self.analytic_derivatives(z, 1)
        return fp * e + np.conj(gp * e)


class DiskHarmonicMap(PlanarHarmonicMap):
    """Poisson extension of circle data given by Fourier coefficients.

    ``coefficients[k + n_modes]`` is ``c_k`` for ``-n_modes <= k <= n_modes``.
    The analytic parts are ``f(z) = sum_{k>=0} c_k z^k`` and
    ``g(z) = sum_{k>=1} conj(c_{-k}) z^k``.
    """

    def __init__(self, coefficients):
        coefficients = np.asarray(coefficients, dtype=complex)
        if len(coefficients) % 2 == 0:
            raise ValueError("need coefficients for k = -N..N (odd count)")
        self.coefficients = coefficients
        self.n_modes = (len(coefficients) - 1) // 2
        n = self.n_modes
        self.f_coeffs = coefficients[n:].copy()
        self.g_coeffs = np.concatenate([[0.0], np.conj(coefficients[:n][::-1])])

    def _check(self, z, open_disk=False):
        r = np.abs(z)
        if open_disk:
            if np.any(r >= 1.0 + 1e-12):
                raise OutsideOpenDisk("derivatives are defined for |z| < 1")
        elif np.any(r > 1.0 + 1e-12):
            raise OutsideDisk("evaluation requires |z| <= 1")
        return z

    def coefficient(self, k):
        return self.coefficients[k + self.n_modes]

    def hall_quantities(self):
        """(|a1|^2 + |b1|^2, |a1|) with a1 = c_1, b1 = c_{-1}."""
        a1, b1 = self.coefficient(1), self.coefficient(-1)
        return float(abs(a1) ** 2 + abs(b1) ** 2), float(abs(a1))

    def jacobian(self, z, boundary="clamp"):
        """Jacobian with a choice of boundary handling.

        ``clamp`` pulls |z| = 1 points to radius 1 - 1e-6; ``limit``
        evaluates the (finite) series at the exact radius.
        """
        z = np.asarray(z, dtype=complex)
        if boundary == "clamp":
            r = np.abs(z)
            mask = r > 1.0 - BOUNDARY_CLAMP
            if np.any(mask):
                z = np.where(mask, z * (1.0 - BOUNDARY_CLAMP) / np.maximum(r, 1e-300), z)
            return super().jacobian(z)
        hz, hzb = self._boundary_ok_wirtinger(z)
        return np.abs(hz) ** 2 - np.abs(hzb) ** 2

    def _boundary_ok_wirtinger(self, z):
        # the truncated series is entire; radial limits at |z| = 1 are the
        # values of the polynomial itself
        fp = _polyval(_derive(self.f_coeffs), z)
        gp = _polyval(_derive(self.g_coeffs), z)
        return fp, np.conj(gp)

    def boundary_radial_derivative(self, theta):
        """Radial limit of h_r on the circle: ``sum |k| c_k e^{ik theta}``."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(-self.n_modes, self.n_modes + 1)
        phases = np.exp(1j * np.outer(theta, k))
        return phases @ (np.abs(k) * self.coefficients)

    def boundary_angular_derivative(self, theta):
        """Tangential derivative h_theta on the circle: ``sum ik c_k e^{ik theta}``."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(-self.n_modes, self.n_modes + 1)
        phases = np.exp(1j * np.outer(theta, k))
        return phases @ (1j * k * self.coefficients)

    def tail_bound(self, kept):
        """Sup-norm mass of coefficients beyond ``|k| > kept``."""
        k = np.arange(-self.n_modes, self.n_modes + 1)
        return float(np.sum(np.abs(self.coefficients[np.abs(k) > kept])))


class HarmonicPolyMap(PlanarHarmonicMap):
    """Entire harmonic polynomial map ``h = f + conj(g)`` on the plane."""

    def __init__(self, f_coeffs, g_coeffs):
        self.f_coeffs = np.asarray(f_coeffs, dtype=complex)
        self.g_coeffs = np.asarray(g_coeffs, dtype=complex)


def extend(coefficients) -> DiskHarmonicMap:
    """Poisson extension of boundary Fourier coefficients into the disk."""
    return DiskHarmonicMap(coefficients)


def extend_boundary_map(bmap, n_modes=None) -> DiskHarmonicMap:
    """Poisson extension of a boundary map's samples."""
    if n_modes is None or n_modes == bmap.n_modes:
        return DiskHarmonicMap(bmap.coefficients)
    from .boundary import fourier_coefficients
    return DiskHarmonicMap(fourier_coefficients(bmap, n_modes))


def second_dilatation_sup(h: PlanarHarmonicMap, grid, floor=1e-14):
    """Supremum of |h_zbar / h_z| over the grid points."""
    hz, hzb = h.wirtinger(np.asarray(grid, dtype=complex))
    if np.any(np.abs(hz) < floor):
        raise VanishingFz("h_z vanishes on the grid")
    return float(np.max(np.abs(hzb) / np.abs(hz)))


# -- finite-difference based curvature forms ----------------------------------

def _fd_laplacian(fn, z, step):
    zs = np.asarray(z, dtype=complex)
    vals = (fn(zs + step) + fn(zs - step) + fn(zs + 1j * step)
            + fn(zs - 1j * step) - 4.0 * fn(zs))
    return vals / step ** 2


def _fd_laplacian_rich(fn, z, step):
    """Three-level Richardson extrapolation of the five-point Laplacian."""
    l1 = _fd_laplacian(fn, z, step)
    l2 = _fd_laplacian(fn, z, step / 2.0)
    l4 = _fd_laplacian(fn, z, step / 4.0)
    return (64.0 * l4 - 20.0 * l2 + l1) / 45.0


def log_jacobian_curvature(h: PlanarHarmonicMap, z, step=5e-2):
    """Both sides of ``-(ln J)_{z zbar} J^2 = |f' g'' - g' f''|^2``.

    The left side uses a Richardson-extrapolated five-point Laplacian of
    ``ln J`` (``(ln J)_{z zbar} = Laplacian / 4``); the right side is exact
    from the differentiated series.
    """
    z = np.asarray(z, dtype=complex)
    jac = h.jacobian(z)
    if np.any(jac <= 0.0):
        raise NonPositiveJacobian("log-Jacobian curvature needs J > 0")
    lap = _fd_laplacian_rich(lambda w: np.log(h.jacobian(w)), z, step)
    lhs = -0.25 * np.real(lap) * jac ** 2
    fp, gp = h.analytic_derivatives(z, 1)
    fpp, gpp = h.analytic_derivatives(z, 2)
    rhs = np.abs(fp * gpp - gp * fpp) ** 2
    return lhs, rhs


def inverse_jacobian_curvature(h: PlanarHarmonicMap, z, step=5e-2):
    """Both sides of ``(J^{-1})_{z zbar} J^3 = 2 |J_z|^2 - J J_{z zbar}``.

    The sign follows the finite-difference oracle (and the subharmonicity
    of 1/J): the mixed derivative of 1/J is nonnegative where J > 0.
    """
    z = np.asarray(z, dtype=complex)
    jac = h.jacobian(z)
    if np.any(jac <= 0.0):
        raise NonPositiveJacobian("inverse-Jacobian curvature needs J > 0")
    lap = _fd_laplacian_rich(lambda w: 1.0 / h.jacobian(w), z, step)
    lhs = 0.25 * np.real(lap) * jac ** 3
    rhs = 2.0 * np.abs(h.jacobian_z(z)) ** 2 - jac * np.real(h.jacobian_zzbar(z))
    return lhs, rhs
