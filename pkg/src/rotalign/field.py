"""Laser pulse envelopes and the two-color driving field.

Each pulse superposes a fundamental carrier and its second harmonic inside a
common envelope f(t):

    E_j(t) = E0 f_j(u) [ gamma_j cos(w u) + sqrt(1 - gamma_j^2) cos(2 w u + delta_j) ]

with u the pulse-local time (zero at the pulse center, where the carrier
phase also vanishes).  gamma parametrizes the intensity split so that the
total peak intensity E0^2 stays constant as gamma varies: the fundamental
and second harmonic carry peak intensities I_tot*gamma^2 and
I_tot*(1 - gamma^2).

Besides the instantaneous field, the module provides its cycle averages
<E>, <E^2>, <E^3> over the fast carrier oscillation (envelopes treated as
frozen within one cycle), which drive the averaged-potential propagation
mode.  For two overlapping pulses the averages follow from the complex
amplitudes at w and 2w, which keeps the inter-pulse carrier interference
that the delay imposes.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import units

TRAPEZOID = "trapezoid"
GAUSSIAN = "gaussian"

# fraction of the peak below which a Gaussian envelope is treated as zero
GAUSSIAN_SUPPORT_CUTOFF = 1e-6


class FieldError(ValueError):
    """Invalid pulse or field parameters."""


@dataclass(frozen=True)
class PulseSpec:
    """One shaped two-color pulse.

    Attributes
    ----------
    shape : str
        ``"trapezoid"`` or ``"gaussian"``.
    tau_ps : float
        Full width at half maximum of the field envelope, in ps.
    i_tot_w_cm2 : float
        Total peak intensity (both colors) in W/cm^2.
    gamma : float
        Relative strength of the fundamental, in [0, 1].  The pulse is
        monochromatic at gamma = 0 (pure second harmonic) and gamma = 1
        (pure fundamental).
    delta_cep : float
        Relative carrier-envelope phase of the second harmonic, radians.
    t_center_ps : float
        Pulse-center time in ps.
    omega_cm1 : float
        Fundamental carrier wavenumber in cm^-1 (12500 = 800 nm).
    plateau_ratio : float
        Trapezoid plateau-to-risetime ratio.  The default 3 follows from the
        envelope's stated slope of 4/tau together with FWHM = tau
        (rise tau/4, plateau 3*tau/4, total support 5*tau/4).
    """

    shape: str = TRAPEZOID
    tau_ps: float = 0.12
    i_tot_w_cm2: float = 7e13
    gamma: float = math.sqrt(2.0 / 3.0)
    delta_cep: float = 0.0
    t_center_ps: float = 0.0
    omega_cm1: float = 12500.0
    plateau_ratio: float = 3.0

    def __post_init__(self):
        if self.shape not in (TRAPEZOID, GAUSSIAN):
            raise FieldError(f"unknown pulse shape {self.shape!r}")
        if not 0.0 <= self.gamma <= 1.0:
            raise FieldError("gamma must lie in [0, 1]")
        if self.tau_ps <= 0:
            raise FieldError("tau must be positive")
        if self.i_tot_w_cm2 < 0:
            raise FieldError("intensity must be non-negative")
        if self.plateau_ratio <= 0:
            raise FieldError("plateau_ratio must be positive")

    @property
    def peak_field_au(self) -> float:
        return float(units.intensity_to_peak_field(self.i_tot_w_cm2))

    @property
    def omega_au(self) -> float:
        return units.cm1_to_angular_frequency_au(self.omega_cm1)

    def support_ps(self):
        """(t_on, t_off) outside which the envelope is treated as zero."""
        if self.shape == TRAPEZOID:
            r = self.plateau_ratio
            half = 0.5 * self.tau_ps * (r + 2.0) / (r + 1.0)
        else:
            half = 0.5 * self.tau_ps * math.sqrt(
                math.log(1.0 / GAUSSIAN_SUPPORT_CUTOFF) / math.log(2.0))
        return self.t_center_ps - half, self.t_center_ps + half

    def with_center(self, t_center_ps: float) -> "PulseSpec":
        return replace(self, t_center_ps=t_center_ps)


def envelope(pulse: PulseSpec, t_ps) -> np.ndarray:
    """Envelope value(s) f(t) in [0, 1] at absolute time(s) ``t_ps``."""
    u = np.asarray(t_ps, dtype=float) - pulse.t_center_ps
    tau = pulse.tau_ps
    if pulse.shape == GAUSSIAN:
        return np.exp(-4.0 * math.log(2.0) * u * u / (tau * tau))[()]
    r = pulse.plateau_ratio
    rise = tau / (r + 1.0)
    half_plateau = 0.5 * tau * r / (r + 1.0)
    au = np.abs(u)
    f = np.clip((half_plateau + rise - au) / rise, 0.0, 1.0)
    return f[()]


def instantaneous_field(config: "FieldConfig", t_ps) -> np.ndarray:
    """Total field amplitude E(t) in atomic units at absolute time(s) ``t_ps``."""
    t_ps = np.asarray(t_ps, dtype=float)
    total = np.zeros_like(t_ps)
    for pulse in config.resolved_pulses():
        u_au = units.ps_to_au(t_ps - pulse.t_center_ps)
        f = envelope(pulse, t_ps)
        e0 = pulse.peak_field_au
        w = pulse.omega_au
        g = pulse.gamma
        total = total + e0 * f * (
            g * np.cos(w * u_au)
            + math.sqrt(1.0 - g * g) * np.cos(2.0 * w * u_au + pulse.delta_cep)
        )
    return total[()]


def cycle_averaged_coefficients(pulse: PulseSpec, t_ps):
    """Cycle averages (<E>, <E^2>, <E^3>) of a single pulse at time(s) ``t_ps``.

    With the envelope frozen over one optical cycle:
        <E>   = 0
        <E^2> = (1/2) E0^2 f^2
        <E^3> = (3/4) E0^3 f^3 gamma^2 sqrt(1 - gamma^2) cos(delta_cep)
    """
    f = np.asarray(envelope(pulse, t_ps), dtype=float)
    e0 = pulse.peak_field_au
    g2 = pulse.gamma**2
    e2 = 0.5 * e0 * e0 * f * f
    e3 = (0.75 * e0**3 * f**3 * g2 * math.sqrt(max(0.0, 1.0 - g2))
          * math.cos(pulse.delta_cep))
    return np.zeros_like(f)[()], e2[()], e3[()]


@dataclass(frozen=True)
class FieldConfig:
    """One or two pulses with a center-to-center delay for the second."""

    pulses: tuple
    t_delay_ps: float = 0.0

    def __post_init__(self):
        pulses = tuple(self.pulses)
        if not 1 <= len(pulses) <= 2:
            raise FieldError("a field consists of one or two pulses")
        object.__setattr__(self, "pulses", pulses)

    @classmethod
    def single(cls, pulse: PulseSpec) -> "FieldConfig":
        return cls(pulses=(pulse,))

    def resolved_pulses(self):
        """Pulses with the delay folded into the second pulse's center."""
        if len(self.pulses) == 1:
            return self.pulses
        first, second = self.pulses
        shifted = second.with_center(
            first.t_center_ps + self.t_delay_ps + second.t_center_ps)
        return (first, shifted)

    def support_ps(self):
        """(earliest turn-on, latest turn-off) over all pulses."""
        spans = [p.support_ps() for p in self.resolved_pulses()]
        return min(s[0] for s in spans), max(s[1] for s in spans)

    def field_on_spans(self):
        """Disjoint, merged (t_on, t_off) spans where any envelope is nonzero."""
        spans = sorted(p.support_ps() for p in self.resolved_pulses())
        merged = [list(spans[0])]
        for on, off in spans[1:]:
            if on <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], off)
            else:
                merged.append([on, off])
        return [tuple(s) for s in merged]


def cycle_averaged_moments(config: FieldConfig, t_ps):
    """Cycle averages (<E>, <E^2>, <E^3>) of the full field at time(s) ``t_ps``.

    Sums the pulses' complex amplitudes at the fundamental and second
    harmonic before averaging, so overlapping pulses interfere with the
    carrier phases their delay dictates:

        a = sum_j A_j exp(-i w c_j),   b = sum_j B_j exp(i (delta_j - 2 w c_j))
        <E^2> = (|a|^2 + |b|^2) / 2,   <E^3> = (3/4) Re(a^2 conj(b))

    with A_j = E0 f_j gamma_j, B_j = E0 f_j sqrt(1 - gamma_j^2) and c_j the
    pulse centers.
    """
    t_ps = np.asarray(t_ps, dtype=float)
    # pulses with distinct carriers cannot interfere in a cycle average,
    # so amplitudes are summed coherently only within an equal-omega group
    groups = {}
    for pulse in config.resolved_pulses():
        groups.setdefault(pulse.omega_cm1, []).append(pulse)
    e2 = np.zeros(t_ps.shape)
    e3 = np.zeros(t_ps.shape)
    for pulses in groups.values():
        a = np.zeros(t_ps.shape, dtype=complex)
        b = np.zeros(t_ps.shape, dtype=complex)
        for pulse in pulses:
            f = np.asarray(envelope(pulse, t_ps), dtype=float)
            e0 = pulse.peak_field_au
            g = pulse.gamma
            c_au = units.ps_to_au(pulse.t_center_ps)
            w = pulse.omega_au
            a = a + e0 * f * g * np.exp(-1j * w * c_au)
            b = b + (e0 * f * math.sqrt(1.0 - g * g)
                     * np.exp(1j * (pulse.delta_cep - 2.0 * w * c_au)))
        e2 = e2 + 0.5 * (np.abs(a) ** 2 + np.abs(b) ** 2)
        e3 = e3 + 0.75 * (a * a * np.conj(b)).real
    return np.zeros(t_ps.shape)[()], e2[()], e3[()]


def orientation_drive_factor(gamma_sq: float) -> float:
    """The gamma-dependence gamma^2*sqrt(1-gamma^2) of the <E^3> drive.

    Maximized at gamma^2 = 2/3.
    """
    return gamma_sq * math.sqrt(max(0.0, 1.0 - gamma_sq))
