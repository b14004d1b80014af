"""Physical constants and unit conversions.

All internal computations run in Hartree atomic units (hbar = m_e = e = 1).
Quantities cross the API boundary in the units spectroscopists actually use:
energies in cm^-1, dipoles in debye, polarizability volumes in angstrom^3,
times in ps, intensities in W/cm^2.  Every converter here is a pure function
and has an exact inverse.
"""

import numpy as np
from scipy import constants as _const

# CODATA-derived factors (computed once, not hand-typed)
HARTREE_IN_CM1 = _const.value("hartree-inverse meter relationship") / 100.0
BOHR_IN_ANGSTROM = _const.value("Bohr radius") * 1e10
AU_TIME_IN_S = _const.value("atomic unit of time")
AU_TIME_IN_PS = AU_TIME_IN_S * 1e12
DEBYE_IN_CM = 1e-21 / _const.c  # 1 D in coulomb*metre
DEBYE_IN_AU = DEBYE_IN_CM / (_const.e * _const.value("Bohr radius"))
KB_CM1_PER_K = _const.k / (_const.h * _const.c * 100.0)
SPEED_OF_LIGHT_CM_S = _const.c * 100.0

# peak intensity corresponding to a peak field of 1 atomic unit,
# I = (1/2) eps0 c E^2, expressed in W/cm^2
_E_AU_V_M = _const.value("atomic unit of electric field")
ATOMIC_INTENSITY_W_CM2 = 0.5 * _const.epsilon_0 * _const.c * _E_AU_V_M**2 / 1e4

BOHR3_IN_ANGSTROM3 = BOHR_IN_ANGSTROM**3
BOHR5_IN_ANGSTROM5 = BOHR_IN_ANGSTROM**5


class UnitError(ValueError):
    """Raised for unrecognized unit tags or out-of-domain magnitudes."""


def cm1_to_hartree(e_cm1):
    """Convert an energy (or a wavenumber-expressed quantity) from cm^-1 to hartree."""
    return e_cm1 / HARTREE_IN_CM1


def hartree_to_cm1(e_h):
    return e_h * HARTREE_IN_CM1


def debye_to_au(mu_debye):
    """Convert a dipole moment from debye to e*a0."""
    return mu_debye * DEBYE_IN_AU


def au_to_debye(mu_au):
    return mu_au / DEBYE_IN_AU


def angstrom3_to_au(alpha_a3):
    """Convert a polarizability volume from angstrom^3 to a0^3."""
    return alpha_a3 / BOHR3_IN_ANGSTROM3


def au_to_angstrom3(alpha_au):
    return alpha_au * BOHR3_IN_ANGSTROM3


def angstrom5_to_au(beta_a5):
    """Convert a hyperpolarizability volume from angstrom^5 to a0^5."""
    return beta_a5 / BOHR5_IN_ANGSTROM5


def au_to_angstrom5(beta_au):
    return beta_au * BOHR5_IN_ANGSTROM5


def ps_to_au(t_ps):
    return t_ps / AU_TIME_IN_PS


def au_to_ps(t_au):
    return t_au * AU_TIME_IN_PS


def fs_to_au(t_fs):
    return t_fs * 1e-3 / AU_TIME_IN_PS


def cm1_to_angular_frequency_au(nu_cm1):
    """Carrier wavenumber (cm^-1) to angular frequency in atomic units.

    With hbar = 1 the angular frequency equals the photon energy in hartree.
    """
    return nu_cm1 / HARTREE_IN_CM1


def intensity_to_peak_field(i_w_cm2):
    """Peak electric field amplitude (atomic units) for a given peak intensity.

    Parameters
    ----------
    i_w_cm2 : float
        Peak intensity in W/cm^2.  Must be non-negative.
    """
    i_w_cm2 = np.asarray(i_w_cm2, dtype=float)
    if np.any(i_w_cm2 < 0):
        raise UnitError("intensity must be non-negative")
    return np.sqrt(i_w_cm2 / ATOMIC_INTENSITY_W_CM2)[()]


def peak_field_to_intensity(e0_au):
    return np.asarray(e0_au, dtype=float) ** 2 * ATOMIC_INTENSITY_W_CM2


def kelvin_to_hartree(t_kelvin):
    """Thermal energy k_B*T in hartree."""
    return t_kelvin * KB_CM1_PER_K / HARTREE_IN_CM1
