"""Supply-voltage synthesis.

Generates the signal classes a programmable bench supply provides: pure
sines, flat-topped ("clipped") sines, harmonic/interharmonic mixes, and
amplitude-modulated fluctuation waveforms, as sampled single-channel or
three-phase arrays in volts.

All functions are pure and deterministic; waveforms are immutable value
objects safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

PHASES = ("L1", "L2", "L3")

#: displacement of L1, L2, L3 fundamentals in a balanced system (radians)
BALANCED_OFFSETS = (0.0, -2.0 * math.pi / 3.0, 2.0 * math.pi / 3.0)

#: default sampling rate: 200 samples per 50 Hz cycle, so a 10-cycle
#: analysis window holds an integer number of samples (leakage-free DFT)
DEFAULT_RATE = 10_000.0

#: highest component frequency the arbitrary-supply model emits by default
DEFAULT_MAX_COMPONENT_HZ = 2_400.0


@dataclass(frozen=True)
class SamplingSpec:
    """Sampling grid: rate in samples/s and duration in seconds.

    rate * duration must be an integer sample count.
    """

    rate: float = DEFAULT_RATE
    duration: float = 1.0

    def __post_init__(self):
        if self.rate <= 0.0:
            raise ValidationError(f"sampling rate must be > 0, got {self.rate}")
        if self.duration <= 0.0:
            raise ValidationError(f"duration must be > 0, got {self.duration}")
        count = self.rate * self.duration
        if abs(count - round(count)) > 1e-6:
            raise ValidationError(
                f"rate*duration must be an integer sample count, got {count}"
            )

    @property
    def n_samples(self) -> int:
        return int(round(self.rate * self.duration))

    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.rate


@dataclass(frozen=True)
class PureSine:
    """Calibrator-grade sine: u(t) = sqrt(2)*u_rms*sin(2*pi*f_c*t + phi)."""

    u_rms: float
    f_c: float = 50.0
    phase_offsets: tuple[float, float, float] = BALANCED_OFFSETS

    def __post_init__(self):
        if self.u_rms < 0.0:
            raise ValidationError(f"u_rms must be >= 0, got {self.u_rms}")
        if self.f_c <= 0.0:
            raise ValidationError(f"f_c must be > 0, got {self.f_c}")
        if len(self.phase_offsets) != 3:
            raise ValidationError("phase_offsets needs one entry per phase")


@dataclass(frozen=True)
class ClippedSine:
    """Sine flat-topped at clip_ratio times its unclipped peak."""

    base: PureSine
    clip_ratio: float

    def __post_init__(self):
        if not 0.0 < self.clip_ratio <= 1.0:
            raise ValidationError(
                f"clip_ratio must be in (0, 1], got {self.clip_ratio}"
            )


@dataclass(frozen=True)
class HarmonicMix:
    """Sum of sinusoids at order*f_c.

    components: (order, u_rms, phase) triples. Fractional orders give sub-
    and interharmonics; duplicate orders are summed.
    """

    f_c: float
    components: tuple[tuple[float, float, float], ...]
    max_component_hz: float = DEFAULT_MAX_COMPONENT_HZ

    def __post_init__(self):
        if self.f_c <= 0.0:
            raise ValidationError(f"f_c must be > 0, got {self.f_c}")
        if not self.components:
            raise ValidationError("harmonic mix needs at least one component")
        for order, mag, _phase in self.components:
            if order <= 0.0:
                raise ValidationError(f"component order must be > 0, got {order}")
            if mag < 0.0:
                raise ValidationError(f"component magnitude must be >= 0, got {mag}")
            f = order * self.f_c
            if f > self.max_component_hz:
                raise ValidationError(
                    f"component at {f:g} Hz exceeds the {self.max_component_hz:g} Hz "
                    "supply limit"
                )


@dataclass(frozen=True)
class Modulated:
    """Amplitude modulation of a base supply.

    depth is the flicker convention dU/U = (Umax - Umin)/U0, so the envelope
    swings between 1 - depth/2 and 1 + depth/2.
    """

    base: "SupplySpec"
    shape: str = "sinusoidal"  # or "rectangular"
    depth: float = 0.0
    f_m: float = 8.8
    duty: float = 0.5

    def __post_init__(self):
        if self.shape not in ("sinusoidal", "rectangular"):
            raise ValidationError(f"unknown modulation shape {self.shape!r}")
        if self.depth < 0.0 or self.depth > 2.0:
            raise ValidationError(f"depth must be in [0, 2], got {self.depth}")
        if self.f_m <= 0.0:
            raise ValidationError(f"f_m must be > 0, got {self.f_m}")
        if not 0.0 < self.duty < 1.0:
            raise ValidationError(f"duty must be in (0, 1), got {self.duty}")
        if isinstance(self.base, Modulated):
            raise ValidationError("nested modulation is not supported")


SupplySpec = PureSine | ClippedSine | HarmonicMix | Modulated


@dataclass(frozen=True, eq=False)
class Waveform:
    """Sampled voltage signal: one column per channel, volts.

    ref_peak records the unclipped peak of the underlying ideal signal so
    that clipping is defined against the original waveform (and therefore
    idempotent), not against an already-clipped copy.
    """

    rate: float
    channels: np.ndarray  # (n_samples, n_channels) float64
    ref_peak: float = field(default=0.0)

    def __post_init__(self):
        ch = np.asarray(self.channels, dtype=np.float64)
        if ch.ndim == 1:
            ch = ch[:, None]
        if ch.ndim != 2 or ch.shape[0] == 0:
            raise ValidationError("waveform channels must be a nonempty 2-D array")
        if not np.all(np.isfinite(ch)):
            raise ValidationError("waveform contains non-finite samples")
        object.__setattr__(self, "channels", ch)
        if self.rate <= 0.0:
            raise ValidationError(f"waveform rate must be > 0, got {self.rate}")
        if self.ref_peak <= 0.0:
            object.__setattr__(self, "ref_peak", float(np.abs(ch).max()))

    @property
    def n_samples(self) -> int:
        return self.channels.shape[0]

    @property
    def n_channels(self) -> int:
        return self.channels.shape[1]

    @property
    def duration(self) -> float:
        return self.n_samples / self.rate

    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.rate

    def channel(self, k: int) -> np.ndarray:
        return self.channels[:, k]

    def rms(self) -> np.ndarray:
        """Per-channel rms over all samples."""
        return np.sqrt(np.mean(self.channels**2, axis=0))


def _sine_samples(u_rms: float, f: float, phase: float, t: np.ndarray) -> np.ndarray:
    return math.sqrt(2.0) * u_rms * np.sin(2.0 * math.pi * f * t + phase)


def synth_sine(spec: PureSine, s: SamplingSpec) -> Waveform:
    """Single-channel sine; phase taken from spec.phase_offsets[0]."""
    t = s.times()
    u = _sine_samples(spec.u_rms, spec.f_c, spec.phase_offsets[0], t)
    return Waveform(s.rate, u, ref_peak=math.sqrt(2.0) * spec.u_rms)


def synth_harmonic_mix(spec: HarmonicMix, s: SamplingSpec) -> Waveform:
    """Single-channel sum of the mix components."""
    nyq = s.rate / 2.0
    t = s.times()
    u = np.zeros_like(t)
    for order, mag, phase in spec.components:
        f = order * spec.f_c
        if f >= nyq:
            raise ValidationError(
                f"component at {f:g} Hz is at or above Nyquist ({nyq:g} Hz)"
            )
        u += _sine_samples(mag, f, phase, t)
    return Waveform(s.rate, u)


def clip_waveform(w: Waveform, clip_ratio: float) -> Waveform:
    """Limit samples to +/- clip_ratio * (unclipped peak of w)."""
    if not 0.0 < clip_ratio <= 1.0:
        raise ValidationError(f"clip_ratio must be in (0, 1], got {clip_ratio}")
    level = clip_ratio * w.ref_peak
    clipped = np.clip(w.channels, -level, level)
    return Waveform(w.rate, clipped, ref_peak=w.ref_peak)


def modulate_amplitude(
    base: Waveform,
    shape: str,
    depth: float,
    f_m: float,
    duty: float = 0.5,
) -> Waveform:
    """Apply an amplitude envelope 1 +/- depth/2 at frequency f_m.

    Sinusoidal: u*(1 + depth/2*sin(2*pi*f_m*t)). Rectangular: the envelope
    holds 1+depth/2 for the duty fraction of each period, then 1-depth/2;
    edges land on the nearest sample (no sub-sample interpolation).
    """
    if depth < 0.0:
        raise ValidationError(f"depth must be >= 0, got {depth}")
    if depth == 0.0:
        return base
    if f_m <= 0.0:
        raise ValidationError(f"f_m must be > 0, got {f_m}")
    if f_m >= base.rate / 2.0:
        raise ValidationError(
            f"modulation at {f_m:g} Hz aliases at rate {base.rate:g} Hz"
        )
    t = base.times()
    if shape == "sinusoidal":
        env = 1.0 + 0.5 * depth * np.sin(2.0 * math.pi * f_m * t)
    elif shape == "rectangular":
        if not 0.0 < duty < 1.0:
            raise ValidationError(f"duty must be in (0, 1), got {duty}")
        frac = (t * f_m) % 1.0
        env = np.where(frac < duty, 1.0 + 0.5 * depth, 1.0 - 0.5 * depth)
    else:
        raise ValidationError(f"unknown modulation shape {shape!r}")
    return Waveform(base.rate, base.channels * env[:, None])


def _three_phase_base(spec: SupplySpec, s: SamplingSpec) -> Waveform:
    """Three channels related by a T/3 time shift of the base signal."""
    t = s.times()
    if isinstance(spec, PureSine):
        cols = [
            _sine_samples(spec.u_rms, spec.f_c, phi, t) for phi in spec.phase_offsets
        ]
        return Waveform(
            s.rate, np.column_stack(cols), ref_peak=math.sqrt(2.0) * spec.u_rms
        )
    if isinstance(spec, ClippedSine):
        return clip_waveform(_three_phase_base(spec.base, s), spec.clip_ratio)
    if isinstance(spec, HarmonicMix):
        cols = []
        nyq = s.rate / 2.0
        for shift in BALANCED_OFFSETS:
            u = np.zeros_like(t)
            for order, mag, phase in spec.components:
                f = order * spec.f_c
                if f >= nyq:
                    raise ValidationError(
                        f"component at {f:g} Hz is at or above Nyquist ({nyq:g} Hz)"
                    )
                # a pure time shift displaces order h by h*shift
                u += _sine_samples(mag, f, phase + order * shift, t)
            cols.append(u)
        return Waveform(s.rate, np.column_stack(cols))
    raise ValidationError(f"unsupported supply spec {type(spec).__name__}")


def synth_three_phase(spec: SupplySpec, s: SamplingSpec) -> Waveform:
    """Three-phase waveform for any supply spec.

    The fundamental carries the 0, -2pi/3, +2pi/3 displacements; harmonics
    follow the equivalent time shift. A modulation envelope is common-mode:
    the same envelope multiplies all three phases.
    """
    if isinstance(spec, Modulated):
        base = _three_phase_base(spec.base, s)
        return modulate_amplitude(base, spec.shape, spec.depth, spec.f_m, spec.duty)
    return _three_phase_base(spec, s)


def fundamental_of(spec: SupplySpec) -> tuple[float, tuple[float, float, float]]:
    """(f_c, per-phase fundamental offsets) of a supply spec.

    Used as the ideal zero-crossing reference for synchronized switching.
    """
    if isinstance(spec, Modulated):
        return fundamental_of(spec.base)
    if isinstance(spec, ClippedSine):
        return fundamental_of(spec.base)
    if isinstance(spec, PureSine):
        return spec.f_c, spec.phase_offsets
    if isinstance(spec, HarmonicMix):
        return spec.f_c, BALANCED_OFFSETS
    raise ValidationError(f"unsupported supply spec {type(spec).__name__}")
