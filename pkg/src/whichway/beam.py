"""Illumination profiles across the slit plane and their derived scales.

A beam profile gives the complex field amplitude at plate coordinate xi,
normalized so |amplitude| <= 1.  Profiles carry no z-dependence; focusing
properties enter through the derived scales (Rayleigh range, core radius)
and through the feasibility checks in :mod:`whichway.geometry`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .geometry import SlitGeometry

# First zero of J0; sets the Bessel core radius.
BESSEL_J0_FIRST_ZERO = 2.404825557695773


@dataclass(frozen=True)
class PlaneWave:
    """Uniform plane wave, optionally tilted in the slit plane."""

    tilt_rad: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.tilt_rad):
            raise ValueError("tilt_rad must be finite")
        if abs(self.tilt_rad) >= math.pi / 2:
            raise ValueError("tilt_rad must lie in (-pi/2, pi/2)")


@dataclass(frozen=True)
class GaussianBeam:
    """Gaussian amplitude exp(-((xi - center)/waist)^2).

    ``waist_m`` is the 1/e^2 intensity radius w0.
    """

    waist_m: float
    center_m: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.waist_m) and self.waist_m > 0.0):
            raise ValueError("waist_m must be positive and finite")
        if not math.isfinite(self.center_m):
            raise ValueError("center_m must be finite")


@dataclass(frozen=True)
class BesselBeam:
    """Zero-order Bessel profile J0(k_r (xi - center)).

    With ``ring_phase_flips`` the signed J0 is used, so successive rings
    alternate in sign (each ring is pi out of phase with its neighbor).
    Without it the field is |J0|: all rings in phase.
    """

    radial_wavenumber_per_m: float
    center_m: float = 0.0
    ring_phase_flips: bool = True

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radial_wavenumber_per_m)
                and self.radial_wavenumber_per_m > 0.0):
            raise ValueError("radial_wavenumber_per_m must be positive and finite")
        if not math.isfinite(self.center_m):
            raise ValueError("center_m must be finite")


BeamProfile = Union[PlaneWave, GaussianBeam, BesselBeam]


def rayleigh_range(waist_m: float, wavelength_m: float) -> float:
    """Rayleigh range pi w0^2 / lambda of a Gaussian focus."""
    if waist_m <= 0.0 or wavelength_m <= 0.0:
        raise ValueError("waist_m and wavelength_m must be positive")
    return math.pi * waist_m * waist_m / wavelength_m


def skew_angle(displacement_m: float, distance_m: float) -> float:
    """Tilt atan(displacement / distance) of an off-center focusing cone."""
    if distance_m <= 0.0:
        raise ValueError("distance_m must be positive")
    return math.atan(displacement_m / distance_m)


def bessel_core_radius(radial_wavenumber_per_m: float) -> float:
    """Radius of the central Bessel core: first J0 zero over k_r."""
    if radial_wavenumber_per_m <= 0.0:
        raise ValueError("radial_wavenumber_per_m must be positive")
    return BESSEL_J0_FIRST_ZERO / radial_wavenumber_per_m


def bessel_tilt_shift_angle(geom: SlitGeometry) -> float:
    """Tilt angle equivalent to a quarter-wave path offset between the slits.

    A relative phase of pi/2 between the slit fields acts on the screen like
    an incoming tilt of (lambda/4) / d; the pattern shifts by D times this,
    i.e. one quarter of a fringe period.
    """
    return (geom.wavelength_m / 4.0) / geom.slit_separation_m


# ---------------------------------------------------------------------------
# J0, evaluated in-repo so no special-function library is needed.
#
# |x| <= 12: power series sum_k (-1)^k (x^2/4)^k / (k!)^2, 30 terms (fully
# converged in double precision on that range).
# |x| >  12: Hankel asymptotic form sqrt(2/(pi x)) (P cos w - Q sin w),
# w = x - pi/4, with 12 expansion coefficients a_k generated from
# a_k = -a_{k-1} (2k-1)^2 / (8k).  Worst-case absolute error is at the
# branch switch and stays below 1e-9.
# ---------------------------------------------------------------------------

_J0_SERIES_TERMS = 30
_J0_SERIES_COEFF = tuple(
    (-1.0) ** k / float(math.factorial(k)) ** 2 for k in range(_J0_SERIES_TERMS)
)

_J0_HANKEL_TERMS = 12


def _j0_hankel_coeff() -> tuple[float, ...]:
    a = [1.0]
    for k in range(1, _J0_HANKEL_TERMS):
        a.append(-a[-1] * (2 * k - 1) ** 2 / (8.0 * k))
    return tuple(a)


_J0_HANKEL_A = _j0_hankel_coeff()


def _j0_series(x: np.ndarray) -> np.ndarray:
    t = 0.25 * x * x
    acc = np.full_like(t, _J0_SERIES_COEFF[-1])
    for c in _J0_SERIES_COEFF[-2::-1]:
        acc = acc * t + c
    return acc


def _j0_asymptotic(x: np.ndarray) -> np.ndarray:
    z2 = 1.0 / (x * x)
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    sign = 1.0
    for k in range(0, _J0_HANKEL_TERMS, 2):
        p = p + sign * _J0_HANKEL_A[k] * z2 ** (k // 2)
        q = q + sign * _J0_HANKEL_A[k + 1] * z2 ** (k // 2)
        sign = -sign
    q = q / x
    w = x - 0.25 * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(w) - q * np.sin(w))


def bessel_j0(x):
    """J0(x) for scalar or array argument.

    Absolute error <= 1e-9 for |x| <= 12 and <= 1e-8 out to |x| ~ 1e3;
    inputs must be finite.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("bessel_j0 requires finite input")
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax <= 12.0
    if np.any(small):
        out[small] = _j0_series(ax[small])
    if np.any(~small):
        out[~small] = _j0_asymptotic(ax[~small])
    if arr.ndim == 0:
        return float(out)
    return out


def amplitude_at(beam: BeamProfile, xi_m, wavelength_m: float):
    """Complex field amplitude of ``beam`` at plate coordinate(s) ``xi_m``.

    Always returns complex values; |amplitude| <= 1 for every profile.
    """
    if wavelength_m <= 0.0:
        raise ValueError("wavelength_m must be positive")
    xi = np.asarray(xi_m, dtype=float)
    if not np.all(np.isfinite(xi)):
        raise ValueError("xi_m must be finite")

    if isinstance(beam, PlaneWave):
        k = 2.0 * math.pi / wavelength_m
        out = np.exp(1j * k * math.sin(beam.tilt_rad) * xi)
    elif isinstance(beam, GaussianBeam):
        u = (xi - beam.center_m) / beam.waist_m
        out = np.exp(-u * u).astype(complex)
    elif isinstance(beam, BesselBeam):
        field = bessel_j0(beam.radial_wavenumber_per_m * (xi - beam.center_m))
        if not beam.ring_phase_flips:
            field = np.abs(field)
        out = np.asarray(field, dtype=complex)
    else:
        raise TypeError(f"unknown beam profile {type(beam).__name__}")

    if xi.ndim == 0:
        return complex(out)
    return out
