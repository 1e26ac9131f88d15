"""Numerical far-field diffraction oracle.

Integrates the scalar diffraction kernel exp(-i 2 pi x xi / (lambda D))
against the illuminating field over explicit aperture intervals with
Gauss-Legendre quadrature, refined by node doubling until two successive
refinements agree.  This route shares no algebra with the closed-form models
in :mod:`whichway.analytic`, so agreement between the two is a real check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .analytic import (PEAK_SINGLE_SLIT, GridSpec, IntensityPattern)
from .beam import BeamProfile, amplitude_at
from .geometry import SlitGeometry


class ConvergenceError(RuntimeError):
    """Quadrature refinement did not reach the requested tolerance.

    Carries the last two whole-grid estimates and the screen coordinate
    where they disagree most.
    """

    def __init__(self, message: str, last_estimate=None,
                 previous_estimate=None, worst_x_m: float | None = None):
        super().__init__(message)
        self.last_estimate = last_estimate
        self.previous_estimate = previous_estimate
        self.worst_x_m = worst_x_m


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre settings: starting nodes per interval, relative
    agreement target between refinements, and how many doublings to try."""

    nodes_per_interval: int = 32
    relative_tolerance: float = 1e-12
    max_refinements: int = 6

    def __post_init__(self) -> None:
        if self.nodes_per_interval < 8:
            raise ValueError("nodes_per_interval must be >= 8")
        if not (0.0 < self.relative_tolerance < 1.0):
            raise ValueError("relative_tolerance must lie in (0, 1)")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")


@dataclass(frozen=True)
class ApertureSet:
    """Open intervals in the slit plane with a per-interval extra phase."""

    intervals: tuple[tuple[float, float], ...]
    phases_rad: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.intervals) == 0:
            raise ValueError("at least one aperture interval is required")
        if len(self.phases_rad) != len(self.intervals):
            raise ValueError("need exactly one phase per interval")
        for lo, hi in self.intervals:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad interval ({lo!r}, {hi!r})")
        ordered = sorted(self.intervals)
        for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
            if lo < hi:
                raise ValueError("aperture intervals must not overlap")
        for p in self.phases_rad:
            if not math.isfinite(p):
                raise ValueError("phases must be finite")


def two_slit_apertures(geom: SlitGeometry, phase_a_rad: float = 0.0,
                       phase_b_rad: float = 0.0) -> ApertureSet:
    """The canonical pair of slit openings, width s around +-d/2."""
    half_s = 0.5 * geom.slit_width_m
    a = geom.slit_a_center_m
    b = geom.slit_b_center_m
    return ApertureSet(
        intervals=((a - half_s, a + half_s), (b - half_s, b + half_s)),
        phases_rad=(phase_a_rad, phase_b_rad),
    )


def single_slit_aperture(geom: SlitGeometry, slit: str = "a",
                         phase_rad: float = 0.0) -> ApertureSet:
    """One slit opening alone ('a' or 'b')."""
    if slit not in ("a", "b"):
        raise ValueError("slit must be 'a' or 'b'")
    center = geom.slit_a_center_m if slit == "a" else geom.slit_b_center_m
    half_s = 0.5 * geom.slit_width_m
    return ApertureSet(intervals=((center - half_s, center + half_s),),
                       phases_rad=(phase_rad,))


@lru_cache(maxsize=32)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _amplitude_fixed(beam: BeamProfile, apertures: ApertureSet,
                     geom: SlitGeometry, x: np.ndarray, n: int) -> np.ndarray:
    """Single-pass amplitude with exactly n Gauss-Legendre nodes per interval."""
    k_screen = 2.0 * math.pi / (geom.wavelength_m * geom.screen_distance_m)
    t, w = _gl_nodes(n)
    amp = np.zeros(x.shape, dtype=complex)
    for (lo, hi), phase in zip(apertures.intervals, apertures.phases_rad):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        xi = mid + half * t
        f = amplitude_at(beam, xi, geom.wavelength_m) * (half * w)
        if phase != 0.0:
            f = f * complex(math.cos(phase), math.sin(phase))
        kernel = np.exp(-1j * k_screen * np.outer(x, xi))
        amp += kernel @ f
    return amp


def fraunhofer_amplitude(beam: BeamProfile, apertures: ApertureSet,
                         geom: SlitGeometry, x_m,
                         quad: QuadratureSpec | None = None):
    """Far-field amplitude at screen coordinate(s) ``x_m``.

    Node count doubles until two successive estimates agree to the requested
    relative tolerance (measured against the largest amplitude on the grid);
    raises :class:`ConvergenceError` otherwise.
    """
    if quad is None:
        quad = QuadratureSpec()
    x = np.atleast_1d(np.asarray(x_m, dtype=float))
    if not np.all(np.isfinite(x)):
        raise ValueError("x_m must be finite")

    n = quad.nodes_per_interval
    cur = _amplitude_fixed(beam, apertures, geom, x, n)
    for _ in range(quad.max_refinements):
        prev = cur
        n *= 2
        cur = _amplitude_fixed(beam, apertures, geom, x, n)
        scale = float(np.max(np.abs(cur)))
        if scale == 0.0:
            scale = 1.0
        diff = np.abs(cur - prev)
        if float(np.max(diff)) <= quad.relative_tolerance * scale:
            if np.ndim(x_m) == 0:
                return complex(cur[0])
            return cur
    worst = int(np.argmax(diff)) if x.size else 0
    raise ConvergenceError(
        f"quadrature did not converge to {quad.relative_tolerance:.1e} "
        f"after {quad.max_refinements} refinements ({n} nodes/interval); "
        f"worst disagreement at x = {x[worst]:.6g} m",
        last_estimate=cur, previous_estimate=prev, worst_x_m=float(x[worst]))


def oracle_pattern(beam: BeamProfile, apertures: ApertureSet,
                   geom: SlitGeometry, grid: GridSpec,
                   quad: QuadratureSpec | None = None) -> IntensityPattern:
    """|amplitude|^2 on a grid, normalized to its own peak.

    The absolute peak intensity is recorded in ``meta['peak_abs']``.
    """
    x = grid.x()
    amp = fraunhofer_amplitude(beam, apertures, geom, x, quad)
    intensity = np.abs(amp) ** 2
    peak = float(np.max(intensity))
    if peak <= 0.0:
        raise ValueError("oracle pattern is identically zero")
    meta = {
        "model": "oracle",
        "geometry": geom,
        "unit_scale": 1.0,
        "peak_abs": peak,
        "beam": type(beam).__name__,
    }
    return IntensityPattern(x_m=x, intensity=intensity / peak,
                            normalization=PEAK_SINGLE_SLIT, meta=meta)


def washout_pattern(base: Callable[[float], IntensityPattern],
                    theta_rad: float, n_tilts: int = 101) -> IntensityPattern:
    """Incoherent average of ``base(tilt)`` over tilts uniform in [-theta, theta].

    ``base`` must return patterns on one fixed grid; a tilt corresponds to a
    pattern shift of D * tilt, so averaging models an angular spread of
    illumination directions.  ``n_tilts`` must be odd so the untilted member
    is included.
    """
    if theta_rad < 0.0:
        raise ValueError("theta_rad must be >= 0")
    if n_tilts < 1 or n_tilts % 2 == 0:
        raise ValueError("n_tilts must be a positive odd count")
    if theta_rad == 0.0:
        return base(0.0)

    tilts = np.linspace(-theta_rad, theta_rad, n_tilts)
    first = base(float(tilts[0]))
    acc = np.array(first.intensity, dtype=float)
    for t in tilts[1:]:
        p = base(float(t))
        if not np.array_equal(p.x_m, first.x_m):
            raise ValueError("washout members must share one grid")
        if p.normalization != first.normalization:
            raise ValueError("washout members must share one normalization")
        acc += p.intensity
    acc /= n_tilts
    meta = dict(first.meta)
    meta.update({
        "washout_theta_rad": theta_rad,
        "washout_tilts": n_tilts,
        "model": f"washout({first.meta.get('model', '?')})",
    })
    return IntensityPattern(x_m=first.x_m, intensity=acc,
                            normalization=first.normalization, meta=meta)
