"""Two-path interferometer duality bookkeeping.

The interferometer mirrors the two-slit logic with clean algebra: two path
amplitudes a (arm A) and b (arm B), a scanned relative phase, and one output
port.  Modes:

Open       both arms open, nothing measured in between.
BlockedB   arm B absorbed; the detected particles all came via A.
Marker     a which-way marker tags arm B; the cross term is erased.
KnockoutB  arm-B events are vetoed after the fact: the cross term is kept
           for the surviving half of the particles.  This is the mode whose
           report combines full path knowledge with full fringe contrast.

Perfect coherence is assumed throughout; reports note this in their meta.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .metrics import (DISTINGUISHABILITY, PREDICTABILITY, DualityReport,
                      duality_report)

_PHASE_SWEEP_SAMPLES = 720

_COHERENCE_NOTE = "assumes perfectly coherent, lossless paths"


class MziMode(enum.Enum):
    OPEN = "open"
    BLOCKED_B = "blocked_b"
    MARKER = "marker"
    KNOCKOUT_B = "knockout_b"


@dataclass(frozen=True)
class MziConfig:
    """Path amplitudes, static phase offset, and operating mode."""

    amplitude_a: float
    amplitude_b: float
    relative_phase_rad: float = 0.0
    mode: MziMode = MziMode.OPEN

    def __post_init__(self) -> None:
        a, b = self.amplitude_a, self.amplitude_b
        if not (math.isfinite(a) and math.isfinite(b) and a >= 0.0 and b >= 0.0):
            raise ValueError("amplitudes must be finite and >= 0")
        if a * a + b * b > 1.0 + 1e-12:
            raise ValueError("amplitudes must satisfy a^2 + b^2 <= 1")
        if a == 0.0 and b == 0.0:
            raise ValueError("amplitudes cannot both be zero")
        if not math.isfinite(self.relative_phase_rad):
            raise ValueError("relative_phase_rad must be finite")
        if not isinstance(self.mode, MziMode):
            raise ValueError(f"unknown mode {self.mode!r}")


def output_intensity(cfg: MziConfig, phase_rad: float, port: int = 0) -> float:
    """Mean detection rate at an output port for a scanned phase.

    Port 0 combines the arms as (a + b e^{i phi}) / sqrt(2), port 1 with the
    opposite sign, so the two ports always account for a^2 + b^2 together.
    BlockedB detects only the a^2 stream (flat in phase); KnockoutB keeps the
    interference of the open configuration at half the particle rate.
    """
    if port not in (0, 1):
        raise ValueError("port must be 0 or 1")
    a, b = cfg.amplitude_a, cfg.amplitude_b
    phi = cfg.relative_phase_rad + phase_rad
    sign = 1.0 if port == 0 else -1.0
    cross = 2.0 * a * b * math.cos(phi)
    if cfg.mode is MziMode.OPEN:
        return 0.5 * (a * a + b * b + sign * cross)
    if cfg.mode is MziMode.BLOCKED_B:
        return a * a if port == 0 else 0.0
    if cfg.mode is MziMode.MARKER:
        return 0.5 * (a * a + b * b)
    # KnockoutB: open-style interference for half the events.
    return 0.25 * (a * a + b * b + sign * cross)


def detected_fraction(cfg: MziConfig) -> float:
    """Fraction of launched particles that reach the detectors at all."""
    a, b = cfg.amplitude_a, cfg.amplitude_b
    if cfg.mode in (MziMode.BLOCKED_B, MziMode.KNOCKOUT_B):
        return a * a / (a * a + b * b)
    return 1.0


def mzi_duality(cfg: MziConfig) -> DualityReport:
    """Which-way value, fringe visibility, and their quadrature sum.

    Visibility comes from a 720-sample sweep of the scanned phase (the sweep
    hits both extremes exactly); the which-way value is the predictability of
    the detected sub-ensemble, except in Marker mode where the marker makes
    the path fully distinguishable (kind D).
    """
    a, b = cfg.amplitude_a, cfg.amplitude_b
    phases = np.linspace(0.0, 2.0 * math.pi, _PHASE_SWEEP_SAMPLES,
                         endpoint=False)
    rates = np.array([output_intensity(cfg, float(p)) for p in phases])
    hi, lo = float(np.max(rates)), float(np.min(rates))
    visibility = 0.0 if hi <= 0.0 else (hi - lo) / (hi + lo)

    if cfg.mode is MziMode.OPEN:
        kind = PREDICTABILITY
        which_way = abs(a * a - b * b) / (a * a + b * b)
    elif cfg.mode is MziMode.MARKER:
        kind = DISTINGUISHABILITY
        which_way = 1.0
    else:
        # BlockedB / KnockoutB: every detected particle came via arm A.
        if a == 0.0:
            raise ValueError(f"{cfg.mode.value} needs amplitude_a > 0")
        kind = PREDICTABILITY
        which_way = 1.0

    meta = {
        "mode": cfg.mode.value,
        "detected_fraction": detected_fraction(cfg),
        "assumption": _COHERENCE_NOTE,
    }
    return duality_report(kind, which_way, visibility, meta=meta)


def asymmetric_duality(amplitude_a: float, amplitude_b: float) -> DualityReport:
    """Duality report for an open, unbalanced two-path configuration.

    P = |a^2 - b^2| / (a^2 + b^2) and V = 2ab / (a^2 + b^2) saturate
    P^2 + V^2 = 1 identically.
    """
    a, b = amplitude_a, amplitude_b
    if not (math.isfinite(a) and math.isfinite(b) and a >= 0.0 and b >= 0.0):
        raise ValueError("amplitudes must be finite and >= 0")
    if a == 0.0 and b == 0.0:
        raise ValueError("amplitudes cannot both be zero")
    norm = a * a + b * b
    p = abs(a * a - b * b) / norm
    v = 2.0 * a * b / norm
    meta = {"mode": "open", "assumption": _COHERENCE_NOTE}
    return duality_report(PREDICTABILITY, p, min(v, 1.0), meta=meta)
