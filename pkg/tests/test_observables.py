import math

import numpy as np
import pytest

import rotalign as ra
from rotalign.basis import BasisSpec, RotorState
from rotalign.observables import (ExtremaSummary, ObservableSeries,
                                  SeriesError, expectation, extract_extrema,
                                  thermal_average)

TROT = ra.rotational_period_ps(ra.HBR)


def make_series(times, orientation, alignment, window=(0.0, 0.1)):
    return ObservableSeries(times_ps=np.asarray(times, float),
                            orientation=np.asarray(orientation, float),
                            alignment=np.asarray(alignment, float),
                            envelopes=np.zeros((1, len(times))),
                            pulse_window=window)


def test_ground_state_expectations():
    basis = BasisSpec(j_max=6, m=0)
    state = RotorState.pure(basis, 0)
    assert expectation(state, 2) == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert expectation(state, 1) == 0.0


def test_superposition_orientation():
    basis = BasisSpec(j_max=6, m=0)
    c = np.zeros(7, dtype=complex)
    c[0] = c[1] = 1.0 / math.sqrt(2.0)
    assert expectation(RotorState(basis, c), 1) == pytest.approx(0.57735,
                                                                 abs=1e-5)


def test_expectation_rejects_higher_powers():
    basis = BasisSpec(j_max=4, m=0)
    with pytest.raises(SeriesError):
        expectation(RotorState.pure(basis, 0), 3)


def test_expectation_bounds_and_cauchy_schwarz():
    rng = np.random.RandomState(42)
    basis = BasisSpec(j_max=15, m=2)
    for _ in range(50):
        c = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
        c /= np.linalg.norm(c)
        state = RotorState(basis, c)
        orientation = expectation(state, 1)
        alignment = expectation(state, 2)
        assert -1.0 <= orientation <= 1.0
        assert 0.0 <= alignment <= 1.0
        assert orientation**2 <= alignment + 1e-14


def test_thermal_average_identity_and_linearity():
    t = np.linspace(0.0, 1.0, 11)
    a = make_series(t, 0.1 * np.ones(11), 0.2 * np.ones(11))
    b = make_series(t, -0.1 * np.ones(11), 0.6 * np.ones(11))
    same = thermal_average([(1.0, a)])
    assert np.array_equal(same.orientation, a.orientation)
    mixed = thermal_average([(0.5, a), (0.5, b)])
    assert np.allclose(mixed.alignment, 0.4)
    assert np.allclose(mixed.orientation, 0.0)


def test_thermal_average_rejects_mismatched_grids():
    a = make_series(np.linspace(0, 1, 5), np.zeros(5), np.ones(5) / 3)
    b = make_series(np.linspace(0, 2, 5), np.zeros(5), np.ones(5) / 3)
    with pytest.raises(SeriesError):
        thermal_average([(0.5, a), (0.5, b)])


def test_extrema_constant_series():
    t = np.linspace(-0.1, 1.0, 111)
    series = make_series(t, np.zeros(111), np.full(111, 1.0 / 3.0),
                         window=(0.0, 0.1))
    ex = extract_extrema(series, 0.5)
    assert ex.max_align_during == pytest.approx(1.0 / 3.0)
    assert ex.max_align_after == pytest.approx(1.0 / 3.0)
    assert ex.max_orient_pos_after == 0.0
    assert ex.max_orient_neg_after == 0.0


def test_extrema_synthetic_sinusoid():
    # alignment 1/3 + 0.1 sin(2 pi t / Trot) after the pulse peaks at 0.4333
    t = np.linspace(0.0, 2.5 * TROT, 5000)
    alignment = 1.0 / 3.0 + 0.1 * np.sin(2.0 * np.pi * t / TROT)
    orientation = 0.05 * np.sin(4.0 * np.pi * t / TROT)
    series = make_series(t, orientation, alignment, window=(0.0, 0.05))
    ex = extract_extrema(series, 2.0 * TROT)
    assert ex.max_align_after == pytest.approx(0.43333, abs=1e-4)
    assert ex.max_orient_pos_after == pytest.approx(0.05, abs=1e-4)
    assert ex.max_orient_neg_after == pytest.approx(-0.05, abs=1e-4)
    assert ex.t_max_align_after > 0.05
    assert ex.max_abs_orient_after == pytest.approx(0.05, abs=1e-4)


def test_extrema_window_growth_invariance():
    # field-free dynamics is Trot-periodic, so extrema cannot change when
    # the window grows from 2 to 4 periods
    t = np.linspace(0.0, 4.2 * TROT, 40000)
    alignment = 1.0 / 3.0 + 0.2 * np.cos(2.0 * np.pi * t / TROT) ** 2
    orientation = 0.3 * np.sin(2.0 * np.pi * t / TROT)
    series = make_series(t, orientation, alignment, window=(0.0, 0.01))
    two = extract_extrema(series, 2.0 * TROT)
    four = extract_extrema(series, 4.0 * TROT)
    assert two.max_align_after == pytest.approx(four.max_align_after, abs=1e-6)
    assert two.max_orient_pos_after == pytest.approx(
        four.max_orient_pos_after, abs=1e-6)


def test_extrema_requires_long_enough_series():
    t = np.linspace(0.0, 0.5, 100)
    series = make_series(t, np.zeros(100), np.ones(100) / 3,
                         window=(0.0, 0.1))
    with pytest.raises(SeriesError):
        extract_extrema(series, 2.0)


def test_after_extrema_strictly_after_pulse():
    t = np.linspace(0.0, 1.0, 101)
    alignment = np.full(101, 1.0 / 3.0)
    alignment[t <= 0.3] = 0.9  # peak inside the pulse window only
    series = make_series(t, np.zeros(101), alignment, window=(0.0, 0.3))
    ex = extract_extrema(series, 0.5)
    assert ex.max_align_during == pytest.approx(0.9)
    assert ex.max_align_after == pytest.approx(1.0 / 3.0)
    assert ex.t_max_align_after > 0.3


def test_series_csv_round_trip(tmp_path):
    t = np.linspace(-0.05, 0.4, 64)
    series = ObservableSeries(
        times_ps=t,
        orientation=np.sin(t),
        alignment=1.0 / 3.0 + 0.1 * np.cos(t),
        envelopes=np.vstack([np.exp(-t * t), 0.5 * np.exp(-t * t)]),
        pulse_window=(-0.02, 0.1))
    path = tmp_path / "series.csv"
    series.to_csv(path, header_lines=["test run"])
    loaded = ObservableSeries.from_csv(path)
    assert np.array_equal(loaded.times_ps, t)
    assert np.array_equal(loaded.orientation, series.orientation)
    assert np.array_equal(loaded.alignment, series.alignment)
    assert np.array_equal(loaded.envelopes, series.envelopes)


def test_series_validation():
    with pytest.raises(SeriesError):
        make_series(np.linspace(0, 1, 5), np.zeros(4), np.zeros(5))
