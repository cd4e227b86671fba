"""Scenario bundles: a target domain, a boundary map, and its extension.

A scenario owns the polar evaluation grid and caches the expensive grid
sweeps (map values, Jacobian, Wirtinger pairs, image-boundary distances)
so independent claims can share them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import boundary as bnd
from . import harmonic2d as h2
from .curves import ConvexCurve, ConvexDomain2


@dataclass(frozen=True)
class GridSpec:
    """Polar grid in the open disk; the last radial row is the outer ring."""
    n_radial: int = 64
    n_angular: int = 256
    r_max: float = 0.999

    def radii(self):
        return self.r_max * (np.arange(self.n_radial) + 1.0) / self.n_radial

    def angles(self):
        return 2.0 * np.pi * np.arange(self.n_angular) / self.n_angular

    def points(self):
        """Complex grid of shape (n_radial, n_angular)."""
        return np.outer(self.radii(), np.exp(1j * self.angles()))


class Scenario:
    """One evaluation context: map + target domain + grid + tolerances."""

    def __init__(self, name, curve: ConvexCurve, hmap, bmap=None,
                 grid: GridSpec = None, tolerance=1e-8, fd_tolerance=1e-5,
                 seed=0, p0=None, meta=None):
        self.name = name
        self.curve = curve
        self.domain = ConvexDomain2(curve, p0)
        self.hmap = hmap
        self.bmap = bmap
        self.grid = grid or GridSpec()
        self.tolerance = float(tolerance)
        self.fd_tolerance = float(fd_tolerance)
        self.seed = int(seed)
        self.meta = dict(meta or {})

    # -- cached grid sweeps ----------------------------------------------------

    @cached_property
    def grid_z(self):
        return self.grid.points()

    @cached_property
    def map_values(self):
        return self.hmap.eval(self.grid_z)

    @cached_property
    def wirtinger_values(self):
        return self.hmap.wirtinger(self.grid_z)

    @cached_property
    def jacobian_values(self):
        hz, hzb = self.wirtinger_values
        return np.abs(hz) ** 2 - np.abs(hzb) ** 2

    @cached_property
    def dstar_values(self):
        return self.domain.distance(self.map_values)

    @cached_property
    def center_image(self):
        return complex(np.asarray(self.hmap.eval(np.zeros(1, dtype=complex)))[0])

    @cached_property
    def inradius_at_center(self):
        """Distance of the image of 0 to the target boundary (R0)."""
        return self.domain.inradius(self.center_image)

    def rng(self):
        return np.random.default_rng(self.seed)

    def interior_points(self, count, r_max=0.8):
        """Reproducible random points in the disk of radius r_max."""
        rng = self.rng()
        r = r_max * np.sqrt(rng.uniform(0.0, 1.0, count))
        t = rng.uniform(0.0, 2.0 * np.pi, count)
        return r * np.exp(1j * t)

    # -- transformed twins -------------------------------------------------------

    def rotated(self, alpha):
        """Scenario with the target rotated rigidly by ``alpha``."""
        curve = self.curve.rotated(alpha)
        return self._rebuilt(curve, schedule_scale=1.0, suffix=f"rot{alpha:.3f}")

    def scaled(self, rho):
        """Scenario with the target scaled by ``rho > 0``."""
        curve = self.curve.scaled(rho)
        return self._rebuilt(curve, schedule_scale=rho, suffix=f"scale{rho:.3f}")

    def _rebuilt(self, curve, schedule_scale, suffix):
        if self.bmap is None:
            raise ValueError("only boundary-map scenarios can be transformed")
        speed = (None if self.bmap.speed_samples is None
                 else self.bmap.speed_samples * schedule_scale)
        bmap = bnd.boundary_from_schedule(curve,
                                          self.bmap.schedule * schedule_scale,
                                          self.bmap.n_modes,
                                          speed_samples=speed)
        hmap = h2.extend_boundary_map(bmap)
        return Scenario(f"{self.name}-{suffix}", curve, hmap, bmap, self.grid,
                        self.tolerance, self.fd_tolerance, self.seed,
                        meta=self.meta)


def scenario_from_boundary_map(name, bmap, grid=None, **kw):
    hmap = h2.extend_boundary_map(bmap)
    return Scenario(name, bmap.target, hmap, bmap, grid, **kw)
