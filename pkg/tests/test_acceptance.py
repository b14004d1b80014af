"""Acceptance suite: quantitative targets for the bundled HBr presets.

Every criterion prints one PASS/FAIL line (run with ``pytest -s`` to see
them live).  Orientation magnitudes (P6) depend on the hyperpolarizability
interpretation tag pinned in the HBr preset ("atomic-units-x1e-8"); the
alignment criteria are insensitive to it.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

import rotalign as ra
from rotalign.basis import BasisSpec, CosOperators, RotorState
from rotalign.harness import apply_sweep_value, preset, run_single, run_sweep
from rotalign.molecule import build_ensemble, to_internal
from rotalign.propagator import PropagationConfig, propagate

TROT = ra.rotational_period_ps(ra.HBR)
GAMMA_OPT = math.sqrt(2.0 / 3.0)

_RESULTS = []


def check(criterion, ok, detail):
    line = f"{criterion} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    _RESULTS.append(line)
    assert ok, line


def checks(criterion, parts):
    """parts: list of (ok, label); prints one line for the criterion."""
    ok = all(p[0] for p in parts)
    detail = "; ".join(("ok " if p_ok else "BAD ") + label
                       for p_ok, label in parts)
    check(criterion, ok, detail)


@pytest.fixture(scope="session", autouse=True)
def summary():
    yield
    print("\n=== acceptance summary ===")
    for line in _RESULTS:
        print(line)


def single_pulse_run(tau_ps, temperature, shape="trapezoid", i_tot=7e13,
                     gamma=GAMMA_OPT, delta=0.0):
    pulse = ra.PulseSpec(shape=shape, tau_ps=tau_ps, i_tot_w_cm2=i_tot,
                         gamma=gamma, delta_cep=delta)
    cfg = ra.ExperimentConfig(molecule=ra.HBR,
                              field=ra.FieldConfig.single(pulse),
                              temperatures=(temperature,))
    return run_single(cfg)


def two_pulse_run(tau_ps, t_delay, gamma1=GAMMA_OPT, delta2=0.0,
                  temperature=30.0):
    pulses = (ra.PulseSpec(tau_ps=tau_ps, gamma=gamma1),
              ra.PulseSpec(tau_ps=tau_ps, delta_cep=delta2))
    cfg = ra.ExperimentConfig(molecule=ra.HBR,
                              field=ra.FieldConfig(pulses=pulses,
                                                   t_delay_ps=t_delay),
                              temperatures=(temperature,))
    return run_single(cfg)


@pytest.fixture(scope="module")
def baseline_30k():
    """Single 0.1 ps two-color pulse at 30 K (P6 reference value)."""
    return single_pulse_run(0.1, 30.0)


def test_p1_optimal_two_color_ratio():
    started = time.monotonic()
    cfg = dataclasses.replace(preset("fig1"), temperatures=(1.0,))
    assert len(cfg.sweep.values) == 51  # grid step 0.02
    rows = run_sweep(cfg, workers=2)
    values = np.array([r.extrema.max_abs_orient_after for r in rows])
    grid = np.array([r.param for r in rows])
    argmax = grid[int(np.argmax(values))]
    elapsed = time.monotonic() - started
    checks("P1", [
        (abs(argmax - 0.67) <= 0.02 + 1e-12,
         f"orientation argmax gamma^2 = {argmax:.2f} (0.67 +- one 0.02 step)"),
        (elapsed <= 600.0, f"runtime {elapsed:.0f} s <= 600 s"),
    ])


def test_p2_rotational_period_and_revivals():
    period = ra.rotational_period_ps(ra.HBR)
    # sample grid commensurate with the period: 1000 samples per revival
    dt_fs = period * 1e3 / 8000.0
    pulse = ra.PulseSpec(tau_ps=0.12)
    cfg = ra.ExperimentConfig(
        molecule=ra.HBR, field=ra.FieldConfig.single(pulse),
        temperatures=(1.0,),
        prop=PropagationConfig(dt_fs=dt_fs, sample_every=8),
        post_window_ps=2.2 * period)
    result = run_single(cfg)
    t = result.series.times_ps
    _, t_off = result.series.pulse_window
    start = int(np.searchsorted(t, t_off)) + 1
    k_period = 1000  # samples per rotational period
    n = len(t) - start - k_period
    drift = max(
        np.abs(result.series.alignment[start + k_period: start + k_period + n]
               - result.series.alignment[start: start + n]).max(),
        np.abs(result.series.orientation[start + k_period: start + k_period + n]
               - result.series.orientation[start: start + n]).max())
    checks("P2", [
        (abs(period - 1.998) <= 0.001,
         f"T_rot = {period:.4f} ps (1.998 +- 0.001)"),
        (drift < 1e-8, f"post-pulse periodicity drift {drift:.2e} < 1e-8"),
    ])


def test_p3_peak_alignment_cold():
    cfg = ra.ExperimentConfig(
        molecule=ra.HBR, field=ra.FieldConfig.single(ra.PulseSpec()),
        temperatures=(1.0,),
        sweep=ra.SweepSpec("tau", tuple(np.arange(0.05, 0.401, 0.01))))
    rows = run_sweep(cfg, workers=2)
    values = np.array([r.extrema.max_align_after for r in rows])
    taus = np.array([r.param for r in rows])
    best = int(np.argmax(values))
    checks("P3", [
        (abs(values[best] - 0.867) <= 0.03,
         f"peak post-pulse alignment {values[best]:.3f} (0.867 +- 0.03)"),
        (abs(taus[best] - 0.18) <= 0.03,
         f"at tau = {taus[best]:.2f} ps (0.18 +- 0.03)"),
    ])


def test_p4_peak_alignment_30k():
    cfg = ra.ExperimentConfig(
        molecule=ra.HBR, field=ra.FieldConfig.single(ra.PulseSpec()),
        temperatures=(30.0,),
        sweep=ra.SweepSpec("tau", tuple(np.arange(0.06, 0.301, 0.01))))
    rows = run_sweep(cfg, workers=2)
    values = np.array([r.extrema.max_align_after for r in rows])
    taus = np.array([r.param for r in rows])
    best = int(np.argmax(values))
    checks("P4", [
        (abs(values[best] - 0.72) <= 0.04,
         f"peak post-pulse alignment {values[best]:.3f} (0.72 +- 0.04)"),
        (abs(taus[best] - 0.12) <= 0.03,
         f"at tau = {taus[best]:.2f} ps (0.12 +- 0.03)"),
    ])


def test_p5_cep_structure():
    grid = tuple(np.linspace(0.0, 2.0 * math.pi, 9))
    cfg = dataclasses.replace(preset("fig7"),
                              sweep=ra.SweepSpec("delta_cep_1", grid))
    rows = run_sweep(cfg, workers=2)
    pos = np.array([r.extrema.max_orient_pos_after for r in rows])
    neg = np.array([r.extrema.max_orient_neg_after for r in rows])
    amp = np.maximum(np.abs(pos), np.abs(neg))
    # indices on the 9-point grid: pi/2 -> 2, pi -> 4, 3pi/2 -> 6
    mirror = max(abs(pos[4 - k] - pos[4 + k]) for k in (1, 2, 3))
    checks("P5", [
        (amp[2] < 0.01, f"|orientation| at pi/2 = {amp[2]:.2e} < 0.01"),
        (amp[6] < 0.01, f"|orientation| at 3pi/2 = {amp[6]:.2e} < 0.01"),
        (mirror < 0.01, f"mirror asymmetry about pi = {mirror:.2e} < 0.01"),
        (abs(pos[0] + neg[4]) < 0.01,
         f"|pos(0)| vs |neg(pi)|: diff {abs(pos[0] + neg[4]):.2e} < 0.01"),
    ])


def test_p6_orientation_magnitudes(baseline_30k):
    # conditional on the hyperpolarizability tag pinned in the preset;
    # the two literal readings of the tabulated values put the interaction
    # orders of magnitude beyond physical and are recorded as non-reproducing
    assert ra.HBR.beta_unit == "atomic-units-x1e-8"
    base = baseline_30k.extrema.max_abs_orient_after

    cold = single_pulse_run(1.17, 1.0).extrema.max_abs_orient_after
    mono = two_pulse_run(0.1, 0.75 * TROT, gamma1=1.0)
    factor_mono = mono.extrema.max_abs_orient_after / base
    twocolor = two_pulse_run(0.1, TROT)
    factor_twocolor = twocolor.extrema.max_abs_orient_after / base
    off = two_pulse_run(0.1, TROT, delta2=math.pi)
    suppression = off.extrema.max_abs_orient_after / base
    flip0 = two_pulse_run(0.1, 1.5, delta2=0.0)
    flippi = two_pulse_run(0.1, 1.5, delta2=math.pi)
    factor_flip = (flippi.extrema.max_abs_orient_after
                   / flip0.extrema.max_abs_orient_after)

    checks("P6", [
        (abs(cold - 0.774) <= 0.05,
         f"peak orientation {cold:.3f} at tau=1.17 ps, 1 K (0.774 +- 0.05)"),
        (abs(base - 0.057) <= 0.01,
         f"single 0.1 ps pulse at 30 K: {base:.3f} (0.057 +- 0.01)"),
        (abs(factor_mono - 1.3) <= 0.1,
         f"monochromatic prepulse at 3T/4: x{factor_mono:.2f} (1.3 +- 0.1)"),
        (abs(factor_twocolor - 1.54) <= 0.1,
         f"two-color prepulse at T_rot: x{factor_twocolor:.2f} (1.54 +- 0.1)"),
        (suppression < 0.25,
         f"second pulse delta=pi at T_rot: {suppression:.2f} of single "
         f"(< 0.25)"),
        (abs(factor_flip - 1.4) <= 0.1,
         f"delta=pi vs 0 at t_d=1.5 ps: x{factor_flip:.2f} (1.4 +- 0.1)"),
    ])


def test_p7_trapezoid_beats_gaussian():
    rows_t = run_sweep(preset("fig4"), workers=2)
    rows_g = run_sweep(preset("fig4_gaussian"), workers=2)
    margins = [rt.extrema.max_align_after - rg.extrema.max_align_after
               for rt, rg in zip(rows_t, rows_g)]
    worst = min(margins)
    check("P7", all(m >= 0.0 for m in margins),
          f"trapezoid >= gaussian at all {len(margins)} intensities "
          f"(worst margin {worst:+.4f})")


def test_p8_property_suite(baseline_30k):
    parts = []

    # unitarity over full propagations (cold long pulse + warm ensemble)
    cold = single_pulse_run(1.17, 1.0)
    parts.append((cold.norm_error < 1e-10,
                  f"unitarity {max(cold.norm_error, baseline_30k.norm_error):.1e} < 1e-10"))
    parts.append((baseline_30k.norm_error < 1e-10, "ensemble unitarity"))

    # operator entries against an independent quadrature oracle
    from test_basis import oracle_cos_power_element
    ops = CosOperators(BasisSpec(j_max=12, m=1, pad=3))
    worst = 0.0
    js = np.arange(1, 13)
    for k, mat in ((1, ops.c1), (2, ops.c2), (3, ops.c3)):
        for a, ja in enumerate(js):
            for b, jb in enumerate(js):
                if ja <= 9 and jb <= 9 and abs(ja - jb) <= k:
                    worst = max(worst, abs(
                        mat[a, b] - oracle_cos_power_element(ja, jb, 1, k)))
    parts.append((worst < 1e-12, f"operator vs quadrature {worst:.1e} < 1e-12"))

    # thermal weights
    ens = build_ensemble(ra.HBR, 30.0)
    weight_err = abs(sum(w for _, _, w in ens.entries) - 1.0)
    parts.append((weight_err < 1e-12, f"weights sum error {weight_err:.1e}"))

    # isotropic initial values
    iso_align = abs(baseline_30k.series.alignment[0] - 1.0 / 3.0)
    iso_orient = abs(baseline_30k.series.orientation[0])
    parts.append((iso_align < 1e-10 and iso_orient < 1e-10,
                  f"isotropic start ({iso_align:.1e}, {iso_orient:.1e})"))

    # field-free two-level beat vs analytic cosine
    internal = to_internal(ra.HBR)
    basis = BasisSpec(j_max=10, m=0)
    c0 = np.zeros(11, dtype=complex)
    c0[0] = c0[1] = 1.0 / math.sqrt(2.0)
    zero = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.01, i_tot_w_cm2=0.0))
    traj = propagate(RotorState(basis, c0), internal, zero,
                     PropagationConfig(t_start_ps=0.0, t_end_ps=2 * TROT,
                                       j_max=10))
    ops10 = CosOperators(basis)
    orient = np.einsum("ki,ij,kj->k", np.conj(traj.coeffs), ops10.c1,
                       traj.coeffs).real
    beat_err = np.abs(orient - ra.cos_matrix_element(0, 0)
                      * np.cos(2 * math.pi * traj.times_ps / TROT)).max()
    parts.append((beat_err < 1e-8, f"two-level beat error {beat_err:.1e}"))

    # monochromatic cycle-averaged orientation is identically zero
    mono = single_pulse_run(0.12, 0.0, gamma=1.0)
    mono_orient = np.abs(mono.series.orientation).max()
    parts.append((mono_orient < 1e-12,
                  f"monochromatic orientation {mono_orient:.1e} < 1e-12"))

    # full-field / cycle-averaged agreement on the alignment peak
    config = ra.FieldConfig.single(ra.PulseSpec(tau_ps=0.12))
    on, off = config.support_ps()
    peaks = {}
    for mode in ("cycle-averaged", "full-field"):
        prop = PropagationConfig(mode=mode, t_start_ps=on - 0.05,
                                 t_end_ps=off + TROT, j_max=40)
        basis40 = BasisSpec(j_max=40, m=0)
        traj = propagate(RotorState.pure(basis40, 0), internal, config, prop)
        ops40 = CosOperators(basis40)
        align = np.einsum("ki,ij,kj->k", np.conj(traj.coeffs), ops40.c2,
                          traj.coeffs).real
        peaks[mode] = align[traj.times_ps > off].max()
    mode_gap = (abs(peaks["cycle-averaged"] - peaks["full-field"])
                / peaks["full-field"])
    parts.append((mode_gap < 0.01, f"mode consistency {mode_gap:.2%} < 1%"))

    # byte-identical sweep outputs across worker counts
    import tempfile
    payloads = []
    with tempfile.TemporaryDirectory() as tmp:
        for workers, sub in ((1, "w1"), (2, "w2")):
            cfg = ra.ExperimentConfig(
                molecule=ra.HBR, field=ra.FieldConfig.single(ra.PulseSpec()),
                temperatures=(10.0,), post_window_ps=1.0,
                sweep=ra.SweepSpec("tau", (0.06, 0.09, 0.12)),
                output=ra.OutputSpec(directory=f"{tmp}/{sub}", name="det"))
            run_sweep(cfg, workers=workers)
            with open(f"{tmp}/{sub}/det_sweep.csv", "rb") as fh:
                payloads.append(fh.read())
    parts.append((payloads[0] == payloads[1], "deterministic sweep output"))

    checks("P8", parts)
