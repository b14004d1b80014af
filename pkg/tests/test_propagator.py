"""Propagator checks: unitarity, analytic oracles, convergence order, modes."""

import dataclasses
import math

import numpy as np
import pytest

import rotalign as ra
from rotalign import units
from rotalign.basis import BasisSpec, RotorState, build_cos_operators
from rotalign.molecule import to_internal
from rotalign.propagator import (ConvergenceError, PropagationConfig,
                                 PropagationError, potential_on_grid,
                                 propagate, propagate_block,
                                 propagate_block_converged, step)

INTERNAL = to_internal(ra.HBR)
TROT = ra.rotational_period_ps(ra.HBR)


def zero_field(tau_ps=0.01):
    return ra.FieldConfig.single(ra.PulseSpec(tau_ps=tau_ps, i_tot_w_cm2=0.0))


def observables(traj, basis):
    ops = build_cos_operators(basis)
    orient = np.einsum("ki,ij,kj->k", np.conj(traj.coeffs), ops.c1,
                       traj.coeffs).real
    align = np.einsum("ki,ij,kj->k", np.conj(traj.coeffs), ops.c2,
                      traj.coeffs).real
    return orient, align


# ---------------------------------------------------------------------------
# potential evaluation

def test_potential_zero_field():
    x = np.linspace(-1.0, 1.0, 11)
    v = potential_on_grid(INTERNAL, (0.0, 0.0, 0.0), x)
    assert np.all(v == 0.0)


def test_potential_at_perpendicular_geometry():
    # at cos(theta) = 0 only the isotropic polarizability term survives
    e = 0.03
    v = potential_on_grid(INTERNAL, (e, e**2, e**3), np.array([0.0]))
    assert v[0] == pytest.approx(-0.5 * e**2 * INTERNAL.alpha_perp, rel=1e-14)


def test_potential_full_expression():
    e = 0.02
    x = np.array([0.6])
    v = potential_on_grid(INTERNAL, (e, e**2, e**3), x)
    expected = (-INTERNAL.mu0 * e * 0.6
                - 0.5 * e**2 * (INTERNAL.alpha_aniso * 0.36
                                + INTERNAL.alpha_perp)
                - e**3 / 6.0 * (INTERNAL.beta_cos3_coeff * 0.6**3
                                + 3.0 * INTERNAL.beta_perp * 0.6))
    assert v[0] == pytest.approx(expected, rel=1e-14)


def test_cycle_averaged_monochromatic_potential_is_even():
    pulse = ra.PulseSpec(tau_ps=0.2, gamma=1.0)
    from rotalign.field import cycle_averaged_moments
    moments = cycle_averaged_moments(ra.FieldConfig.single(pulse), 0.0)
    x = np.linspace(-1.0, 1.0, 21)
    v = potential_on_grid(INTERNAL, moments, x)
    assert np.abs(v - v[::-1]).max() < 1e-18


# ---------------------------------------------------------------------------
# stepping

def test_stationary_state_unchanged_up_to_phase():
    basis = BasisSpec(j_max=8, m=0)
    state = RotorState.pure(basis, 0)
    prop = PropagationConfig(t_start_ps=0.0, t_end_ps=0.01, dt_fs=5.0)
    out = step(state, INTERNAL, zero_field(), prop, 0.0)
    overlap = np.vdot(state.coeffs, out.coeffs)
    assert abs(abs(overlap) - 1.0) < 1e-14


def test_two_level_beat_matches_analytic_cosine():
    basis = BasisSpec(j_max=10, m=0)
    c0 = np.zeros(11, dtype=complex)
    c0[0] = c0[1] = 1.0 / math.sqrt(2.0)
    prop = PropagationConfig(t_start_ps=0.0, t_end_ps=2.0 * TROT, j_max=10)
    traj = propagate(RotorState(basis, c0), INTERNAL, zero_field(), prop)
    orient, _ = observables(traj, basis)
    expected = ra.cos_matrix_element(0, 0) * np.cos(
        2.0 * math.pi * traj.times_ps / TROT)
    assert np.abs(orient - expected).max() < 1e-8
    # half a period later the orientation is fully inverted
    k_half = np.argmin(np.abs(traj.times_ps - TROT / 2.0))
    assert orient[k_half] == pytest.approx(-0.57735, abs=1e-4)


def test_norm_conserved_over_many_literal_steps():
    # 1e5 genuine Strang steps through a plateau field; the basis must be
    # large enough that edge leakage stays below the unitarity budget
    basis = BasisSpec(j_max=40, m=0)
    pulse = ra.PulseSpec(tau_ps=0.3)
    config = ra.FieldConfig.single(pulse)
    prop = PropagationConfig(t_start_ps=-0.1, t_end_ps=0.1, dt_fs=0.002,
                             sample_every=1000, j_max=40,
                             exact_field_free=False)
    traj = propagate(RotorState.pure(basis, 0), INTERNAL, config, prop)
    n_steps = (len(traj.times_ps) - 1) * 1000
    assert n_steps == 100000
    assert np.abs(traj.norms - 1.0).max() < 1e-10


def test_field_free_revival_is_exact():
    # after exactly Trot every J phase is a multiple of 2 pi
    basis = BasisSpec(j_max=12, m=0)
    rng = np.random.RandomState(11)
    c0 = rng.normal(size=13) + 1j * rng.normal(size=13)
    c0 /= np.linalg.norm(c0)
    n = 8000
    prop = PropagationConfig(t_start_ps=0.0, t_end_ps=TROT,
                             dt_fs=TROT * 1e3 / n, sample_every=n, j_max=12,
                             exact_field_free=False)
    traj = propagate(RotorState(basis, c0), INTERNAL, zero_field(), prop)
    assert traj.times_ps[-1] == pytest.approx(TROT, abs=1e-12)
    assert np.abs(traj.coeffs[-1] - c0).max() < 1e-9


def test_exact_field_free_matches_literal_stepping():
    basis = BasisSpec(j_max=40, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.12))
    on, off = config.support_ps()
    base = PropagationConfig(t_start_ps=on - 0.02, t_end_ps=off + 0.5,
                             j_max=40)
    state = RotorState.pure(basis, 0)
    fast = propagate(state, INTERNAL, config, base)
    literal = propagate(state, INTERNAL, config,
                        dataclasses.replace(base, exact_field_free=False))
    assert np.abs(fast.coeffs - literal.coeffs).max() < 1e-9


def test_time_reversal_over_field_free_segment():
    # antiunitary reversal: conjugate, evolve forward, conjugate again
    basis = BasisSpec(j_max=14, m=1)
    rng = np.random.RandomState(5)
    c0 = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
    c0 /= np.linalg.norm(c0)
    prop = PropagationConfig(t_start_ps=0.0, t_end_ps=0.777, j_max=14,
                             exact_field_free=False)
    forward = propagate(RotorState(basis, c0), INTERNAL, zero_field(), prop)
    back = propagate(RotorState(basis, np.conj(forward.coeffs[-1])),
                     INTERNAL, zero_field(), prop)
    recovered = np.conj(back.coeffs[-1])
    assert np.abs(recovered - c0).max() < 1e-9


def test_second_order_accuracy():
    basis = BasisSpec(j_max=24, m=0)
    pulse = ra.PulseSpec(shape="gaussian", tau_ps=0.05)
    config = ra.FieldConfig.single(pulse)
    ops = build_cos_operators(basis)

    def final_alignment(dt_fs):
        prop = PropagationConfig(t_start_ps=-0.112, t_end_ps=0.112,
                                 dt_fs=dt_fs,
                                 sample_every=int(round(224.0 / dt_fs)),
                                 j_max=24, exact_field_free=False)
        traj = propagate(RotorState.pure(basis, 0), INTERNAL, config, prop)
        c = traj.coeffs[-1]
        return np.real(np.conj(c) @ ops.c2 @ c)

    reference = final_alignment(1.0)  # dt/8 of the coarsest run
    err_coarse = abs(final_alignment(8.0) - reference)
    err_fine = abs(final_alignment(4.0) - reference)
    assert 3.0 < err_coarse / err_fine < 5.5


def test_monochromatic_cycle_averaged_orientation_is_zero():
    basis = BasisSpec(j_max=30, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.12, gamma=1.0))
    on, off = config.support_ps()
    prop = PropagationConfig(t_start_ps=on, t_end_ps=off + TROT, j_max=30)
    traj = propagate(RotorState.pure(basis, 0), INTERNAL, config, prop)
    orient, align = observables(traj, basis)
    assert np.abs(orient).max() < 1e-12
    assert align.max() > 0.4  # the pulse does align


def test_full_field_agrees_with_cycle_averaged():
    basis = BasisSpec(j_max=40, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.12))
    on, off = config.support_ps()
    results = {}
    for mode in ("cycle-averaged", "full-field"):
        prop = PropagationConfig(mode=mode, t_start_ps=on - 0.05,
                                 t_end_ps=off + TROT, j_max=40)
        traj = propagate(RotorState.pure(basis, 0), INTERNAL, config, prop)
        orient, align = observables(traj, basis)
        results[mode] = (traj.times_ps, orient, align, traj.norms)
    t_ca, orient_ca, align_ca, norms_ca = results["cycle-averaged"]
    t_ff, orient_ff, align_ff, norms_ff = results["full-field"]
    assert np.abs(norms_ca - 1.0).max() < 1e-10
    assert np.abs(norms_ff - 1.0).max() < 1e-10
    after = t_ca > off
    align_ff_interp = np.interp(t_ca, t_ff, align_ff)
    orient_ff_interp = np.interp(t_ca, t_ff, orient_ff)
    assert np.abs(align_ca[after] - align_ff_interp[after]).max() < 0.01
    peak_ca = align_ca[after].max()
    peak_ff = align_ff_interp[after].max()
    assert abs(peak_ca - peak_ff) / peak_ff < 0.01
    o_ca = np.abs(orient_ca[after]).max()
    o_ff = np.abs(orient_ff_interp[after]).max()
    assert abs(o_ca - o_ff) / o_ff < 0.05


def test_full_field_dt_validation():
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.1))
    prop = PropagationConfig(mode="full-field", t_start_ps=0.0, t_end_ps=0.1,
                             dt_fs=0.25)
    with pytest.raises(PropagationError):
        prop.resolve(config)


def test_norm_blowup_raises():
    # deliberately tiny basis under a strong pulse: leakage trips the guard
    basis = BasisSpec(j_max=4, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.2, i_tot_w_cm2=7e13))
    prop = PropagationConfig(t_start_ps=-0.15, t_end_ps=0.15, j_max=4)
    with pytest.raises(PropagationError):
        propagate(RotorState.pure(basis, 0), INTERNAL, config, prop)


def test_block_propagation_matches_individual_columns():
    basis = BasisSpec(j_max=30, m=1)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.1))
    on, off = config.support_ps()
    prop = PropagationConfig(t_start_ps=on, t_end_ps=off + 0.3, j_max=30)
    block0 = np.zeros((basis.dim, 3), dtype=complex)
    block0[0, 0] = block0[1, 1] = block0[2, 2] = 1.0
    block = propagate_block(block0, basis, INTERNAL, config, prop)
    for col in range(3):
        single = propagate(RotorState(basis, block0[:, col]), INTERNAL,
                           config, prop)
        assert np.abs(block.coeffs[:, :, col] - single.coeffs).max() < 1e-13


def test_convergence_refinement():
    basis = BasisSpec(j_max=16, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.05, i_tot_w_cm2=2e13))
    on, off = config.support_ps()
    prop = PropagationConfig(t_start_ps=on, t_end_ps=off + 0.2, j_max=16,
                             convergence_tol=1e-6)
    block0 = np.zeros((basis.dim, 1), dtype=complex)
    block0[0, 0] = 1.0
    traj, used, rounds = propagate_block_converged(block0, basis, INTERNAL,
                                                   config, prop)
    assert rounds >= 1
    assert traj.basis.j_max > 16
    assert used.dt_fs < 0.25


def test_convergence_failure_raises():
    basis = BasisSpec(j_max=10, m=0)
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.05, i_tot_w_cm2=2e13))
    prop = PropagationConfig(t_start_ps=-0.05, t_end_ps=0.1, j_max=10,
                             convergence_tol=1e-30, max_refinements=1)
    block0 = np.zeros((basis.dim, 1), dtype=complex)
    block0[0, 0] = 1.0
    with pytest.raises(ConvergenceError) as err:
        propagate_block_converged(block0, basis, INTERNAL, config, prop)
    assert err.value.residual > 0.0
