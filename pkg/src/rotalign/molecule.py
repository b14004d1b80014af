"""Molecular parameter sets, internal-unit conversion and thermal ensembles.

A molecule is specified by its rotational constant, permanent dipole,
polarizability and hyperpolarizability components.  Hyperpolarizability data
in the literature come in incompatible conventions, so the two beta values
carry an explicit interpretation tag rather than a silent guess (see
``BETA_UNIT_TAGS``).
"""

from dataclasses import dataclass, replace

import numpy as np

from . import units

# Recognized interpretations of the (beta_par, beta_perp) numbers:
#   "as-volume-A5"   -- hyperpolarizability volumes in angstrom^5, divided by
#                       a0^5 on conversion.
#   "atomic-units"   -- already in atomic units, stored verbatim.
#   "atomic-units-x1e-8" -- literature values whose printed exponent is offset
#                       by 10^8 relative to atomic units (value * 1e-8 is the
#                       atomic-unit number).  This is the interpretation that
#                       reproduces published HBr orientation magnitudes; see
#                       README.
BETA_UNIT_TAGS = ("as-volume-A5", "atomic-units", "atomic-units-x1e-8")


class ConfigurationError(ValueError):
    """Invalid molecular parameters or unit tags."""


@dataclass(frozen=True)
class MoleculeParams:
    """Molecular constants in conventional (input) units.

    Attributes
    ----------
    b_cm1 : float
        Rotational constant in cm^-1.
    mu0_debye : float
        Permanent dipole moment in debye.
    alpha_par_a3, alpha_perp_a3 : float
        Polarizability volumes (parallel/perpendicular) in angstrom^3.
    beta_par, beta_perp : float
        Hyperpolarizability components, interpreted per ``beta_unit``.
    beta_unit : str
        One of ``BETA_UNIT_TAGS``.
    gj_even, gj_odd : float
        Nuclear-spin degeneracy factors for even/odd J (1 for heteronuclear
        molecules).
    """

    name: str
    b_cm1: float
    mu0_debye: float
    alpha_par_a3: float
    alpha_perp_a3: float
    beta_par: float
    beta_perp: float
    beta_unit: str = "as-volume-A5"
    gj_even: float = 1.0
    gj_odd: float = 1.0

    def __post_init__(self):
        if not np.isfinite([self.b_cm1, self.mu0_debye, self.alpha_par_a3,
                            self.alpha_perp_a3, self.beta_par,
                            self.beta_perp]).all():
            raise ConfigurationError("molecular parameters must be finite")
        if self.b_cm1 <= 0:
            raise ConfigurationError("rotational constant must be positive")
        if self.beta_unit not in BETA_UNIT_TAGS:
            raise ConfigurationError(
                f"unknown beta unit tag {self.beta_unit!r}; "
                f"expected one of {BETA_UNIT_TAGS}")
        if self.gj_even <= 0 or self.gj_odd <= 0:
            raise ConfigurationError("degeneracy factors must be positive")


@dataclass(frozen=True)
class InternalParams:
    """The same constants expressed in atomic units (see `to_internal`)."""

    b: float
    mu0: float
    alpha_par: float
    alpha_perp: float
    beta_par: float
    beta_perp: float
    gj_even: float
    gj_odd: float

    @property
    def alpha_aniso(self):
        return self.alpha_par - self.alpha_perp

    @property
    def beta_cos3_coeff(self):
        return self.beta_par - 3.0 * self.beta_perp


_BETA_TO_AU = {
    "as-volume-A5": units.angstrom5_to_au,
    "atomic-units": lambda b: b,
    "atomic-units-x1e-8": lambda b: b * 1e-8,
}
_BETA_FROM_AU = {
    "as-volume-A5": units.au_to_angstrom5,
    "atomic-units": lambda b: b,
    "atomic-units-x1e-8": lambda b: b * 1e8,
}


def to_internal(params: MoleculeParams) -> InternalParams:
    """Convert a `MoleculeParams` to atomic units.

    The conversion is exactly invertible; see `to_external`.
    """
    beta_conv = _BETA_TO_AU[params.beta_unit]
    return InternalParams(
        b=units.cm1_to_hartree(params.b_cm1),
        mu0=units.debye_to_au(params.mu0_debye),
        alpha_par=units.angstrom3_to_au(params.alpha_par_a3),
        alpha_perp=units.angstrom3_to_au(params.alpha_perp_a3),
        beta_par=beta_conv(params.beta_par),
        beta_perp=beta_conv(params.beta_perp),
        gj_even=params.gj_even,
        gj_odd=params.gj_odd,
    )


def to_external(internal: InternalParams, name="custom",
                beta_unit="as-volume-A5") -> MoleculeParams:
    """Inverse of `to_internal` (round-trips to 1e-12 relative)."""
    beta_conv = _BETA_FROM_AU[beta_unit]
    return MoleculeParams(
        name=name,
        b_cm1=units.hartree_to_cm1(internal.b),
        mu0_debye=units.au_to_debye(internal.mu0),
        alpha_par_a3=units.au_to_angstrom3(internal.alpha_par),
        alpha_perp_a3=units.au_to_angstrom3(internal.alpha_perp),
        beta_par=beta_conv(internal.beta_par),
        beta_perp=beta_conv(internal.beta_perp),
        beta_unit=beta_unit,
        gj_even=internal.gj_even,
        gj_odd=internal.gj_odd,
    )


def rotational_period_ps(params: MoleculeParams) -> float:
    """Full rotational revival period 1/(2*B*c) in picoseconds."""
    if params.b_cm1 <= 0:
        raise ConfigurationError("rotational constant must be positive")
    return 1.0 / (2.0 * params.b_cm1 * units.SPEED_OF_LIGHT_CM_S) * 1e12


# Literature constants for HBr (beta values carried verbatim from the cited
# tabulation; their printed unit is inconsistent with hyperpolarizability
# volumes, hence the explicit interpretation tag).
HBR = MoleculeParams(
    name="HBr",
    b_cm1=8.3482,
    mu0_debye=0.828,
    alpha_par_a3=3.64,
    alpha_perp_a3=3.315,
    beta_par=-1.07e9,
    beta_perp=4.3e8,
    beta_unit="atomic-units-x1e-8",
)

PRESETS = {"HBr": HBR}


def get_preset(name: str) -> MoleculeParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown molecule preset {name!r}; available: {sorted(PRESETS)}"
        ) from None


@dataclass(frozen=True)
class ThermalEnsemble:
    """Boltzmann-weighted set of initial rotor eigenstates.

    ``entries`` is a tuple of (J, M, weight).  Weights are strictly positive,
    sum to one, and all M states within a J level share the level weight
    equally.
    """

    entries: tuple
    temperature_k: float
    truncation_epsilon: float

    @property
    def j_max(self):
        return max(j for j, _, _ in self.entries)

    def weights_by_abs_m(self):
        """Group entries as {|M|: [(J, combined_weight), ...]}.

        +M and -M evolve identically under a linearly polarized field, so a
        propagation only needs one member per (J, |M|) with the weights of
        both signs combined.
        """
        groups = {}
        for j, m, w in self.entries:
            key = abs(m)
            groups.setdefault(key, {})
            groups[key][j] = groups[key].get(j, 0.0) + w
        return {
            m: sorted(jw.items()) for m, jw in sorted(groups.items())
        }


def _level_weights(params: MoleculeParams, temperature_k: float):
    """Unnormalized Boltzmann weights g_J*(2J+1)*exp(-B*J(J+1)/kT) by level."""
    kt_cm1 = temperature_k * units.KB_CM1_PER_K
    weights = []
    j = 0
    while True:
        gj = params.gj_even if j % 2 == 0 else params.gj_odd
        w = gj * (2 * j + 1) * np.exp(-params.b_cm1 * j * (j + 1) / kt_cm1)
        weights.append(w)
        # levels decay monotonically once B*(2J+2)/kT > ln((2J+3)/(2J+1));
        # stop when the running tail is numerically irrelevant
        if j >= 2 and w < 1e-18 * max(weights):
            break
        j += 1
    return np.array(weights)


def build_ensemble(params: MoleculeParams, temperature_k: float,
                   epsilon: float = 1e-6) -> ThermalEnsemble:
    """Construct the Boltzmann ensemble of initial |J,M> states.

    Levels are retained in increasing J until the omitted tail probability
    drops below ``epsilon``; each retained level is expanded into its 2J+1
    M states with equal shares, and the retained weights are renormalized
    to sum to one.

    At T = 0 the ensemble is the single ground state (0, 0, 1.0).
    """
    if temperature_k < 0:
        raise ConfigurationError("temperature must be non-negative")
    if not 0 < epsilon < 1:
        raise ConfigurationError("epsilon must lie in (0, 1)")
    if temperature_k == 0:
        return ThermalEnsemble(entries=((0, 0, 1.0),),
                               temperature_k=0.0,
                               truncation_epsilon=epsilon)

    level = _level_weights(params, temperature_k)
    z = level.sum()
    cumulative = np.cumsum(level) / z
    # smallest J_cut with omitted tail < epsilon
    j_cut = int(np.searchsorted(cumulative, 1.0 - epsilon))
    retained = level[: j_cut + 1]
    retained = retained / retained.sum()

    entries = []
    for j, level_weight in enumerate(retained):
        share = level_weight / (2 * j + 1)
        for m in range(-j, j + 1):
            entries.append((j, m, share))
    return ThermalEnsemble(entries=tuple(entries),
                           temperature_k=float(temperature_k),
                           truncation_epsilon=epsilon)
