"""Harmonic polynomials in three variables and their gradient maps.

Polynomials are stored as dense monomial coefficient cubes ``a[i, j, k]``
for ``x^i y^j z^k``.  Harmonicity is a linear constraint on the cube; the
basis construction solves it exactly over the rationals so every basis
element satisfies the Laplace recurrence with integer coefficients.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import (DegreeTooLarge, HessianTooSmall, NonConvexCurve,
                     OutsideBall)

MAX_BASIS_DEGREE = 6


class Poly3:
    """Dense polynomial in (x, y, z) with coefficient cube ``coeffs[i,j,k]``."""

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def __call__(self, points):
        """Evaluate at points of shape (..., 3)."""
        p = np.asarray(points, dtype=float)
        d = self.coeffs.shape[0]
        powers = p[..., :, None] ** np.arange(d)
        return np.einsum("...i,...j,...k,ijk->...",
                         powers[..., 0, :], powers[..., 1, :],
                         powers[..., 2, :], self.coeffs)

    def diff(self, axis):
        """Partial derivative along axis 0, 1 or 2."""
        c = self.coeffs
        d = c.shape[0]
        if d == 1:
            return Poly3(np.zeros((1, 1, 1)))
        sl = [slice(None)] * 3
        sl[axis] = slice(1, None)
        factors = np.arange(1, d)
        shape = [1, 1, 1]
        shape[axis] = d - 1
        out = c[tuple(sl)] * factors.reshape(shape)
        pad = [(0, 1) if ax == axis else (0, 0) for ax in range(3)]
        return Poly3(np.pad(out, pad))

    def laplacian(self):
        return Poly3(self.diff(0).diff(0).coeffs
                     + self.diff(1).diff(1).coeffs
                     + self.diff(2).diff(2).coeffs)

    def max_laplace_residual(self):
        """Largest coefficient of the Laplacian (zero iff harmonic)."""
        return float(np.max(np.abs(self.laplacian().coeffs)))

    def scaled(self, c):
        return Poly3(self.coeffs * c)

    def __add__(self, other):
        d = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros((d, d, d))
        b = np.zeros((d, d, d))
        sa, sb = self.coeffs.shape[0], other.coeffs.shape[0]
        a[:sa, :sa, :sa] = self.coeffs
        b[:sb, :sb, :sb] = other.coeffs
        return Poly3(a + b)


class HarmonicPoly3(Poly3):
    """Polynomial with vanishing Laplacian (checked at construction)."""

    def __init__(self, coeffs, check=True):
        super().__init__(coeffs)
        if check:
            res = self.max_laplace_residual()
            scale = max(1.0, float(np.max(np.abs(self.coeffs))))
            if res > 1e-12 * scale:
                raise ValueError(f"Laplace residual {res:.3e}; not harmonic")

    def gradient(self):
        return gradient_map(self)

    def hessian(self, points):
        return _hessian_matrix(self, points)

    def hessian_det(self, points):
        return hessian_det(self, points)


class PolyMap3:
    """Vector field with three polynomial components."""

    def __init__(self, components):
        self.components = tuple(components)
        self._jac_polys = tuple(tuple(c.diff(ax) for ax in range(3))
                                for c in self.components)

    def __call__(self, points):
        p = np.asarray(points, dtype=float)
        return np.stack([c(p) for c in self.components], axis=-1)

    def jacobian_matrix(self, points):
        """Derivative matrices at points of shape (..., 3) -> (..., 3, 3)."""
        p = np.asarray(points, dtype=float)
        rows = [np.stack([self._jac_polys[i][j](p) for j in range(3)], axis=-1)
                for i in range(3)]
        return np.stack(rows, axis=-2)

    def jacobian_det(self, points):
        return _det3(self.jacobian_matrix(points))


def _det3(m):
    """Cofactor determinant of (..., 3, 3) arrays."""
    a, b, c = m[..., 0, 0], m[..., 0, 1], m[..., 0, 2]
    d, e, f = m[..., 1, 0], m[..., 1, 1], m[..., 1, 2]
    g, h, i = m[..., 2, 0], m[..., 2, 1], m[..., 2, 2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _hessian_matrix(u: Poly3, points):
    p = np.asarray(points, dtype=float)
    second = [[u.diff(i).diff(j) for j in range(3)] for i in range(3)]
    rows = [np.stack([second[i][j](p) for j in range(3)], axis=-1)
            for i in range(3)]
    return np.stack(rows, axis=-2)


# -- basis construction --------------------------------------------------------

def _exact_nullspace(rows, ncols):
    """Nullspace basis of an integer matrix over the rationals.

    Plain Gauss-Jordan elimination with Fraction arithmetic; returns
    integer-scaled basis vectors (exact, denominators cleared).
    """
    mat = [[Fraction(v) for v in row] for row in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pivot = mat[r][c]
        mat[r] = [v / pivot for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        denom = np.lcm.reduce([v.denominator for v in vec])
        basis.append([int(v * denom) for v in vec])
    return basis


def harmonic_basis(max_degree: int):
    """Basis of solid harmonics of each degree up to ``max_degree``.

    Degree d contributes 2d + 1 elements with integer coefficient cubes,
    so the Laplace recurrence holds exactly in float arithmetic.
    """
    if max_degree > MAX_BASIS_DEGREE:
        raise DegreeTooLarge(
            f"basis tabulated up to degree {MAX_BASIS_DEGREE}")
    out = []
    for d in range(max_degree + 1):
        monos = [(i, j, d - i - j) for i in range(d + 1)
                 for j in range(d + 1 - i)]
        lower = [(i, j, d - 2 - i - j) for i in range(d - 1)
                 for j in range(d - 1 - i)]
        rows = []
        for (li, lj, lk) in lower:
            row = []
            for (i, j, k) in monos:
                if (i, j, k) == (li + 2, lj, lk):
                    row.append((li + 2) * (li + 1))
                elif (i, j, k) == (li, lj + 2, lk):
                    row.append((lj + 2) * (lj + 1))
                elif (i, j, k) == (li, lj, lk + 2):
                    row.append((lk + 2) * (lk + 1))
                else:
                    row.append(0)
            rows.append(row)
        if not rows:
            rows = []
        vecs = (_exact_nullspace(rows, len(monos)) if rows
                else [[1 if t == s else 0 for t in range(len(monos))]
                      for s in range(len(monos))])
        for vec in vecs:
            cube = np.zeros((d + 1, d + 1, d + 1))
            for coef, (i, j, k) in zip(vec, monos):
                cube[i, j, k] = float(coef)
            out.append(HarmonicPoly3(cube))
    return out


def random_harmonic_poly(rng, max_degree=3, min_degree=1):
    """Random combination of solid harmonics with unit coefficient scale."""
    terms = [b for b in harmonic_basis(max_degree)
             if b.degree >= min_degree]
    result = Poly3(np.zeros((max_degree + 1,) * 3))
    for b in terms:
        scale = float(np.max(np.abs(b.coeffs)))
        result = result + b.scaled(rng.normal() / scale)
    return HarmonicPoly3(result.coeffs)


# -- gradient maps and pointwise reports ---------------------------------------

def gradient_map(u: HarmonicPoly3) -> PolyMap3:
    """Gradient of a harmonic potential as a polynomial vector field."""
    return PolyMap3([u.diff(0), u.diff(1), u.diff(2)])


def hessian_det(u: Poly3, points):
    """Determinant of the second-derivative matrix of ``u`` at points."""
    return _det3(_hessian_matrix(u, points))


def jacobian3(field: PolyMap3, points):
    """(determinant, matrix) of the field's derivative at points."""
    m = field.jacobian_matrix(points)
    return _det3(m), m


def cr_residual(field: PolyMap3, points):
    """(symmetry, trace) residuals of the conjugate-harmonic system.

    Gradient fields of harmonic potentials have symmetric, traceless
    derivative matrices; both residuals vanish exactly for them.
    """
    m = field.jacobian_matrix(points)
    sym = np.max(np.abs(m - np.swapaxes(m, -1, -2)), axis=(-1, -2))
    trace = np.abs(m[..., 0, 0] + m[..., 1, 1] + m[..., 2, 2])
    return sym, trace


def lgw_residual(u: HarmonicPoly3, points, step=4e-3, floor_ratio=0.1,
                 floor=None):
    """Finite-difference ``Laplacian of ln |H|`` at admissible points.

    Uses the seven-point Laplacian at steps h and h/2 with Richardson
    extrapolation.  Points where ``|H|`` falls below ``floor`` (default:
    ``floor_ratio`` times the largest ``|H|`` on the stencil) are rejected,
    keeping the logarithm away from its singularity.
    """
    p = np.atleast_2d(np.asarray(points, dtype=float))
    offsets = np.concatenate([np.eye(3), -np.eye(3)])

    def lap(h):
        center = hessian_det(u, p)
        stencil = np.stack([hessian_det(u, p + h * off) for off in offsets])
        scale = np.maximum(np.max(np.abs(stencil), axis=0), np.abs(center))
        thresh = floor if floor is not None else floor_ratio * scale
        bad = (np.abs(center) <= thresh) | np.any(np.abs(stencil) <= thresh,
                                                  axis=0)
        if np.any(bad):
            raise HessianTooSmall(
                f"{int(bad.sum())} points have |H| below the floor")
        return (np.sum(np.log(np.abs(stencil)), axis=0)
                - 6.0 * np.log(np.abs(center))) / h ** 2

    coarse = lap(step)
    fine = lap(step / 2.0)
    vals = (4.0 * fine - coarse) / 3.0
    return vals if np.ndim(points) > 1 else float(vals[0])


def lgw_admissible(u: HarmonicPoly3, points, floor_ratio=0.1):
    """Mask of points whose |H| exceeds ``floor_ratio`` times the RMS |H|."""
    p = np.asarray(points, dtype=float)
    hvals = np.abs(hessian_det(u, p))
    scale = float(np.sqrt(np.mean(hvals ** 2)))
    return hvals > floor_ratio * scale


# -- sphere quadrature and the ball Poisson extension --------------------------

class SphereGrid:
    """Gauss-Legendre (polar) x uniform (azimuth) product grid on S^2."""

    def __init__(self, n_polar=64, n_azimuth=128):
        mu, w = np.polynomial.legendre.leggauss(n_polar)
        phi = 2.0 * np.pi * np.arange(n_azimuth) / n_azimuth
        sin_theta = np.sqrt(1.0 - mu ** 2)
        self.points = np.stack(
            [np.outer(sin_theta, np.cos(phi)),
             np.outer(sin_theta, np.sin(phi)),
             np.outer(mu, np.ones(n_azimuth))], axis=-1).reshape(-1, 3)
        self.weights = np.outer(w, np.full(n_azimuth, 2.0 * np.pi / n_azimuth)
                                ).reshape(-1)

    def total_weight(self):
        return float(np.sum(self.weights))


class BallBoundaryData:
    """Vector samples of boundary data on a sphere product grid."""

    def __init__(self, values, grid: SphereGrid):
        self.values = np.asarray(values, dtype=float)
        self.grid = grid
        if abs(grid.total_weight() - 4.0 * np.pi) > 1e-12 * 4.0 * np.pi:
            raise ValueError("grid weights do not sum to the sphere area")

    @classmethod
    def from_function(cls, fn, grid=None):
        grid = grid or SphereGrid()
        return cls(np.asarray(fn(grid.points), dtype=float), grid)


def poisson_ball_extend(data: BallBoundaryData, x):
    """Harmonic extension of sphere data into the ball by quadrature.

    Kernel ``(1 - |x|^2) / |x - xi|^3`` against normalized surface measure;
    reproduces the boundary mean at the origin and solid harmonics up to
    the quadrature order.
    """
    x = np.asarray(x, dtype=float)
    pts = np.atleast_2d(x)
    if np.any(np.linalg.norm(pts, axis=-1) >= 1.0):
        raise OutsideBall("Poisson extension requires |x| < 1")
    xi = data.grid.points
    w = data.grid.weights / (4.0 * np.pi)
    out = np.empty(pts.shape[:-1] + (data.values.shape[-1],)
                   if data.values.ndim > 1 else pts.shape[:-1])
    diffs = pts[..., None, :] - xi  # (..., Q, 3)
    dist3 = np.linalg.norm(diffs, axis=-1) ** 3
    kernel = (1.0 - np.sum(pts ** 2, axis=-1))[..., None] / dist3
    out = np.tensordot(kernel * w, data.values, axes=((-1,), (0,)))
    return out if x.ndim > 1 else np.squeeze(out, axis=0)


# -- convex targets in space ----------------------------------------------------

class Ellipsoid3:
    """Axis-aligned ellipsoid (after rotation ``frame``) with semi-axes a."""

    def __init__(self, semi_axes, frame=None):
        self.semi_axes = np.asarray(semi_axes, dtype=float)
        if np.any(self.semi_axes <= 0):
            raise NonConvexCurve("semi-axes must be positive")
        self.frame = np.eye(3) if frame is None else np.asarray(frame)

    def contains(self, x):
        local = np.asarray(x, dtype=float) @ self.frame.T
        return np.sum((local / self.semi_axes) ** 2, axis=-1) < 1.0

    def distance(self, x):
        """Distance from interior points to the ellipsoid surface.

        Solves the projection equation ``sum (a_i p_i / (a_i^2 + t))^2 = 1``
        for the largest root by bisection; the nearest surface point is
        ``q_i = a_i^2 p_i / (a_i^2 + t)``.  Points with vanishing components
        along the shortest axes can lack a root (the nearest point is then
        non-unique); a tiny symmetric perturbation restores the bracket at
        a cost far below the tolerances used by the margin checks.
        """
        p = np.atleast_2d(np.asarray(x, dtype=float)) @ self.frame.T
        a = self.semi_axes
        a2 = a ** 2
        center = np.linalg.norm(p, axis=1) < 1e-13 * np.max(a)
        delta = 1e-11 * np.max(a)
        lo0 = -np.min(a2) * (1.0 - 1e-14)
        min_axes = np.nonzero(np.abs(a2 - np.min(a2)) < 1e-30)[0]

        def g(pp, t):
            return np.sum((a * pp / (a2 + t[:, None])) ** 2, axis=1) - 1.0

        # restore the bracket for axis-degenerate points
        bad = g(p, np.full(len(p), lo0)) <= 0.0
        if np.any(bad):
            p = p.copy()
            for ax in min_axes:
                p[bad, ax] = np.where(p[bad, ax] == 0.0, delta, p[bad, ax])
        lo = np.full(len(p), lo0)
        hi = np.maximum(np.max(a) * np.linalg.norm(p, axis=1), np.max(a2)) + np.max(a2)
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            gm = g(p, mid)
            hi = np.where(gm <= 0.0, mid, hi)
            lo = np.where(gm > 0.0, mid, lo)
        t = 0.5 * (lo + hi)
        q = a2 * p / (a2 + t[:, None])
        d = np.linalg.norm(q - p, axis=1)
        d = np.where(center, np.min(a), d)
        return d if np.ndim(x) > 1 else float(d[0])

    def center_distance(self):
        return float(np.min(self.semi_axes))


def harnack_distance_margin(map_fn, grid_points, target, harnack_constant=0.25):
    """Worst margin of ``d(h(x), bdry) - (1 - |x|) R0 c`` over ball points.

    ``map_fn`` sends (..., 3) points into the target convex body; ``R0`` is
    the distance of the image of the origin to the boundary; the ball
    constant is ``c = 1/4`` in three dimensions.
    """
    pts = np.atleast_2d(np.asarray(grid_points, dtype=float))
    images = map_fn(pts)
    r = np.linalg.norm(pts, axis=-1)
    r0 = target.distance(map_fn(np.zeros((1, 3)))[0])
    margins = target.distance(images) - (1.0 - r) * r0 * harnack_constant
    worst = int(np.argmin(margins))
    return float(margins[worst]), pts[worst], float(r0)


def ball_grid(n_r=12, n_polar=16, n_azimuth=32, r_max=0.95):
    """Polar product grid of points inside the unit ball."""
    radii = r_max * (np.arange(n_r) + 1.0) / n_r
    sphere = SphereGrid(n_polar, n_azimuth)
    pts = radii[:, None, None] * sphere.points[None, :, :]
    return pts.reshape(-1, 3)
