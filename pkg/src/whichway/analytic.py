"""Closed-form screen patterns for the two-slit configuration.

Two families of predictions are provided side by side:

* ``empty_wave_*``: a particle-plus-pilot-wave model in which the particle
  passes one slit while an (empty) wave passes the other.  The occupied
  slit's single-slit envelope is modulated by the full two-slit fringe
  factor, so fringes survive even when only one slit is illuminated.
* ``standard_two_slit`` / ``standard_focused_a``: ordinary Fraunhofer wave
  optics.  Illuminating both slits gives the textbook fringed pattern;
  focusing all of the light onto slit A leaves a bare single-slit envelope.

Intensities are returned in each formula's natural unit (peak of order 1);
the conversion factor to the shared single-slit-peak unit is recorded in
pattern metadata as ``unit_scale``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import SlitGeometry

PEAK_SINGLE_SLIT = "peak_single_slit"
UNIT_INTEGRAL = "unit_integral"

_NORMALIZATIONS = (PEAK_SINGLE_SLIT, UNIT_INTEGRAL)

# Series switch for sin(u)/u keeps the evaluation C^2-smooth at u = 0,
# which the extremum interpolation in the metrics module relies on.
_SINC_SERIES_CUTOFF = 1e-4


class ModelKind(enum.Enum):
    SINGLE_SLIT_A = "single_slit_a"
    EMPTY_WAVE_A = "empty_wave_a"
    EMPTY_WAVE_B = "empty_wave_b"
    EMPTY_WAVE_SUM = "empty_wave_sum"
    STANDARD_TWO_SLIT = "standard_two_slit"
    STANDARD_FOCUSED_A = "standard_focused_a"
    PURE_FRINGE = "pure_fringe"
    GENERAL_TWO_SLIT = "general_two_slit"


# Conversion from each model's natural intensity unit to the single-slit
# peak unit.  The fringed one-slit patterns ride on a doubled scale (their
# fringe average has to carry the same power as the bare envelope), and the
# both-slits pattern doubles once more.
_UNIT_SCALE = {
    ModelKind.SINGLE_SLIT_A: 1.0,
    ModelKind.EMPTY_WAVE_A: 2.0,
    ModelKind.EMPTY_WAVE_B: 2.0,
    ModelKind.EMPTY_WAVE_SUM: 2.0,
    ModelKind.STANDARD_TWO_SLIT: 4.0,
    ModelKind.STANDARD_FOCUSED_A: 1.0,
    ModelKind.PURE_FRINGE: 1.0,
    ModelKind.GENERAL_TWO_SLIT: 2.0,
}


def _sinc(u):
    """sin(u)/u with a short even series below the cutoff."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < _SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, u)
    u2 = u * u
    return np.where(small, 1.0 - u2 / 6.0 + u2 * u2 / 120.0, np.sin(safe) / safe)


def single_slit_intensity(geom: SlitGeometry, x_m, center_m: float = 0.0):
    """Single-slit envelope [sin(u)/u]^2 with u = pi s (x - center) / (lambda D).

    The peak (value 1) sits at ``center_m``.
    """
    x = _checked_x(x_m)
    u = math.pi * geom.slit_width_m * (x - center_m) \
        / (geom.wavelength_m * geom.screen_distance_m)
    return _scalar_like(_sinc(u) ** 2, x)


def fringe_factor(geom: SlitGeometry, x_m):
    """Two-slit fringe modulation cos^2(pi x d / (lambda D)), in [0, 1]."""
    x = _checked_x(x_m)
    v = math.pi * geom.slit_separation_m * x \
        / (geom.wavelength_m * geom.screen_distance_m)
    return _scalar_like(np.cos(v) ** 2, x)


def general_two_slit_intensity(geom: SlitGeometry, x_m, alpha: float, beta: float):
    """Two-slit pattern for slit amplitudes alpha (A) and beta (B).

    envelope(x; center = -d/2) * (a^2 + b^2 + 2 a b cos(2 pi x d / lambda D))
    normalized by (a + b)^2 so the fringe maxima touch the envelope.  With
    alpha = beta this reduces exactly to ``empty_wave_a``; with beta = 0 it
    collapses to the bare envelope.
    """
    if alpha < 0.0 or beta < 0.0:
        raise ValueError("alpha and beta must be >= 0")
    if alpha == 0.0 and beta == 0.0:
        raise ValueError("alpha and beta cannot both be zero")
    x = _checked_x(x_m)
    envelope = single_slit_intensity(geom, x, center_m=geom.slit_a_center_m)
    v = 2.0 * math.pi * geom.slit_separation_m * x \
        / (geom.wavelength_m * geom.screen_distance_m)
    cross = alpha * alpha + beta * beta + 2.0 * alpha * beta * np.cos(v)
    return _scalar_like(envelope * cross / (alpha + beta) ** 2, x)


def empty_wave_a(geom: SlitGeometry, x_m):
    """Pilot-wave prediction, particle through slit A: the slit-A envelope
    (peaked opposite slit A) carrying full-contrast two-slit fringes."""
    x = _checked_x(x_m)
    envelope = single_slit_intensity(geom, x, center_m=geom.slit_a_center_m)
    return _scalar_like(envelope * fringe_factor(geom, x), x)


def empty_wave_b(geom: SlitGeometry, x_m):
    """Mirror image of :func:`empty_wave_a` for a particle through slit B."""
    x = _checked_x(x_m)
    envelope = single_slit_intensity(geom, x, center_m=geom.slit_b_center_m)
    return _scalar_like(envelope * fringe_factor(geom, x), x)


def empty_wave_sum(geom: SlitGeometry, x_m):
    """Incoherent sum of the two one-particle pilot-wave patterns."""
    x = _checked_x(x_m)
    return _scalar_like(empty_wave_a(geom, x) + empty_wave_b(geom, x), x)


def standard_two_slit(geom: SlitGeometry, x_m):
    """Textbook Fraunhofer two-slit pattern: common envelope times fringes."""
    x = _checked_x(x_m)
    envelope = single_slit_intensity(geom, x, center_m=0.0)
    return _scalar_like(envelope * fringe_factor(geom, x), x)


def standard_focused_a(geom: SlitGeometry, x_m):
    """Standard-theory prediction when all light is focused onto slit A:
    a bare single-slit envelope, no fringes."""
    return single_slit_intensity(geom, x_m, center_m=geom.slit_a_center_m)


def pure_fringe(geom: SlitGeometry, x_m):
    """Point-source fringe factor alone (envelope suppressed)."""
    return fringe_factor(geom, x_m)


@dataclass(frozen=True)
class GridSpec:
    """Uniform screen grid: ``points`` samples spanning [x_min, x_max]."""

    x_min_m: float
    x_max_m: float
    points: int = 4001

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min_m) and math.isfinite(self.x_max_m)):
            raise ValueError("grid bounds must be finite")
        if self.x_min_m >= self.x_max_m:
            raise ValueError("grid requires x_min_m < x_max_m")
        if self.points < 2:
            raise ValueError("grid requires at least 2 points")

    def x(self) -> np.ndarray:
        return np.linspace(self.x_min_m, self.x_max_m, self.points)


def default_grid(kind: ModelKind, geom: SlitGeometry, points: int = 4001) -> GridSpec:
    """Default sampling window for a model.

    Slit-A (slit-B) centered models span 1.2 envelope lobes around their
    envelope peak; symmetric models span the same width around x = 0.
    """
    lobe = geom.wavelength_m * geom.screen_distance_m / geom.slit_width_m
    half = 1.2 * lobe
    if kind in (ModelKind.SINGLE_SLIT_A, ModelKind.EMPTY_WAVE_A,
                ModelKind.STANDARD_FOCUSED_A, ModelKind.GENERAL_TWO_SLIT):
        center = geom.slit_a_center_m
    elif kind is ModelKind.EMPTY_WAVE_B:
        center = geom.slit_b_center_m
    else:
        center = 0.0
    return GridSpec(center - half, center + half, points)


@dataclass(frozen=True)
class IntensityPattern:
    """Sampled screen pattern on a uniform, strictly increasing grid.

    ``meta`` records the generating model, the geometry, and ``unit_scale``
    (multiply ``intensity`` by it to express values in single-slit peak
    units).
    """

    x_m: np.ndarray
    intensity: np.ndarray
    normalization: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        x = np.asarray(self.x_m, dtype=float)
        i = np.asarray(self.intensity, dtype=float)
        object.__setattr__(self, "x_m", x)
        object.__setattr__(self, "intensity", i)
        if x.ndim != 1 or x.size < 2 or i.shape != x.shape:
            raise ValueError("x_m and intensity must be matching 1-d arrays")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(i))):
            raise ValueError("pattern contains non-finite values")
        if np.any(i < 0.0):
            raise ValueError("intensity must be nonnegative")
        steps = np.diff(x)
        if np.any(steps <= 0.0):
            raise ValueError("x_m must be strictly increasing")
        mean_step = (x[-1] - x[0]) / (x.size - 1)
        if np.max(np.abs(steps - mean_step)) > 1e-9 * abs(mean_step):
            raise ValueError("x_m must be uniformly spaced")
        if self.normalization not in _NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.normalization == UNIT_INTEGRAL:
            total = np.trapezoid(i, x)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(
                    f"unit_integral pattern integrates to {total!r}, not 1")

    @property
    def spacing_m(self) -> float:
        return (self.x_m[-1] - self.x_m[0]) / (self.x_m.size - 1)


_MODEL_FUNCS = {
    ModelKind.SINGLE_SLIT_A: lambda geom, x, a, b: single_slit_intensity(
        geom, x, center_m=geom.slit_a_center_m),
    ModelKind.EMPTY_WAVE_A: lambda geom, x, a, b: empty_wave_a(geom, x),
    ModelKind.EMPTY_WAVE_B: lambda geom, x, a, b: empty_wave_b(geom, x),
    ModelKind.EMPTY_WAVE_SUM: lambda geom, x, a, b: empty_wave_sum(geom, x),
    ModelKind.STANDARD_TWO_SLIT: lambda geom, x, a, b: standard_two_slit(geom, x),
    ModelKind.STANDARD_FOCUSED_A: lambda geom, x, a, b: standard_focused_a(geom, x),
    ModelKind.PURE_FRINGE: lambda geom, x, a, b: pure_fringe(geom, x),
    ModelKind.GENERAL_TWO_SLIT: general_two_slit_intensity,
}


def sample_pattern(kind: ModelKind, geom: SlitGeometry,
                   grid: Optional[GridSpec] = None,
                   normalization: str = PEAK_SINGLE_SLIT,
                   alpha: float = 1.0, beta: float = 1.0) -> IntensityPattern:
    """Evaluate a model on a grid and wrap it as an :class:`IntensityPattern`."""
    if not isinstance(kind, ModelKind):
        raise ValueError(f"unknown model kind {kind!r}")
    if normalization not in _NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}")
    if grid is None:
        grid = default_grid(kind, geom)
    x = grid.x()
    values = np.asarray(_MODEL_FUNCS[kind](geom, x, alpha, beta), dtype=float)

    unit_scale = _UNIT_SCALE[kind]
    if normalization == UNIT_INTEGRAL:
        total = float(np.trapezoid(values, x))
        if total <= 0.0:
            raise ValueError("pattern integrates to zero; cannot normalize")
        values = values / total
        unit_scale = unit_scale * total

    meta = {
        "model": kind.value,
        "geometry": geom,
        "unit_scale": unit_scale,
    }
    if kind is ModelKind.GENERAL_TWO_SLIT:
        meta["alpha"] = alpha
        meta["beta"] = beta
    return IntensityPattern(x_m=x, intensity=values,
                            normalization=normalization, meta=meta)


def _checked_x(x_m):
    x = np.asarray(x_m, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x_m must be finite")
    return x


def _scalar_like(values, x):
    if np.ndim(x) == 0:
        return float(values)
    return values
