"""Alignment/orientation observables, thermal averaging and extrema.

The two quantities of interest are the orientation <cos(theta)> and the
alignment <cos^2(theta)> of the molecular axis relative to the polarization
axis.  An isotropic ensemble has alignment 1/3 and orientation 0.
"""

import io
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import BasisSpec, CosOperators, RotorState


class SeriesError(ValueError):
    """Structurally inconsistent observable series."""


@lru_cache(maxsize=None)
def _operators(j_max: int, m: int, pad: int, n_grid: int) -> CosOperators:
    return CosOperators(BasisSpec(j_max=j_max, m=m, pad=pad, n_grid=n_grid))


def expectation(state: RotorState, k: int) -> float:
    """<cos^k(theta)> of a normalized state, k in {1, 2}."""
    if k not in (1, 2):
        raise SeriesError(f"only k = 1, 2 supported, got {k}")
    ops = _operators(state.basis.j_max, state.basis.m, state.basis.pad,
                     state.basis.n_grid)
    mat = ops.c1 if k == 1 else ops.c2
    return float(np.real(np.conj(state.coeffs) @ (mat @ state.coeffs)))


@dataclass
class ObservableSeries:
    """Time series of orientation and alignment plus the driving envelopes.

    ``envelopes`` has one row per pulse, sampled on the same time grid, for
    plotting underneath the observables.  ``pulse_window`` is the (t_on,
    t_off) support of the total field.
    """

    times_ps: np.ndarray
    orientation: np.ndarray
    alignment: np.ndarray
    envelopes: np.ndarray
    pulse_window: tuple

    def __post_init__(self):
        n = len(self.times_ps)
        if len(self.orientation) != n or len(self.alignment) != n:
            raise SeriesError("observable columns disagree with the time grid")
        self.envelopes = np.atleast_2d(self.envelopes)
        if self.envelopes.shape[1] != n:
            raise SeriesError("envelope trace disagrees with the time grid")

    CSV_COLUMNS = ("time_ps", "orientation", "alignment",
                   "envelope_1", "envelope_2")

    def to_csv(self, path, header_lines=()):
        """Write the series as CSV; ``header_lines`` become '#' comments."""
        n_pulses = self.envelopes.shape[0]
        env2 = self.envelopes[1] if n_pulses > 1 else np.zeros_like(self.times_ps)
        with open(path, "w", encoding="utf-8") as fh:
            for line in header_lines:
                fh.write(f"# {line}\n")
            fh.write(",".join(self.CSV_COLUMNS) + "\n")
            for row in zip(self.times_ps, self.orientation, self.alignment,
                           self.envelopes[0], env2):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")

    @classmethod
    def from_csv(cls, path):
        with open(path, "r", encoding="utf-8") as fh:
            body = "".join(ln for ln in fh if not ln.startswith("#"))
        data = np.genfromtxt(io.StringIO(body), delimiter=",", names=True)
        times = np.atleast_1d(data["time_ps"])
        env = np.vstack([np.atleast_1d(data["envelope_1"]),
                         np.atleast_1d(data["envelope_2"])])
        on = times[env.max(axis=0) > 0]
        window = ((float(on[0]), float(on[-1])) if on.size
                  else (float(times[0]), float(times[0])))
        return cls(times_ps=times,
                   orientation=np.atleast_1d(data["orientation"]),
                   alignment=np.atleast_1d(data["alignment"]),
                   envelopes=env, pulse_window=window)


def thermal_average(weighted_series) -> ObservableSeries:
    """Weighted pointwise average of per-state series.

    Parameters
    ----------
    weighted_series : sequence of (weight, ObservableSeries)
        All series must share the same time grid; weights should sum to 1.
    """
    if not weighted_series:
        raise SeriesError("no series to average")
    _, first = weighted_series[0]
    orientation = np.zeros_like(first.orientation)
    alignment = np.zeros_like(first.alignment)
    for weight, series in weighted_series:
        if (len(series.times_ps) != len(first.times_ps)
                or not np.array_equal(series.times_ps, first.times_ps)):
            raise SeriesError("series time grids differ")
        orientation += weight * series.orientation
        alignment += weight * series.alignment
    return ObservableSeries(times_ps=first.times_ps.copy(),
                            orientation=orientation,
                            alignment=alignment,
                            envelopes=first.envelopes.copy(),
                            pulse_window=first.pulse_window)


@dataclass
class ExtremaSummary:
    """Peak observables during the pulse and in the field-free window after it."""

    max_align_during: float
    t_max_align_during: float
    max_align_after: float
    t_max_align_after: float
    max_orient_pos_after: float
    t_max_orient_pos_after: float
    max_orient_neg_after: float
    t_max_orient_neg_after: float
    post_window_ps: float

    @property
    def max_abs_orient_after(self) -> float:
        return max(self.max_orient_pos_after, -self.max_orient_neg_after)

    ROW_FIELDS = ("max_align_during", "max_align_after",
                  "max_orient_pos_after", "max_orient_neg_after",
                  "t_max_align_during", "t_max_align_after",
                  "t_max_orient_pos_after", "t_max_orient_neg_after")

    def as_row(self):
        return tuple(getattr(self, f) for f in self.ROW_FIELDS)


def extract_extrema(series: ObservableSeries,
                    post_window_ps: float) -> ExtremaSummary:
    """Locate the peak alignment/orientation during and after the pulse.

    The during-pulse window is the total field support [t_on, t_off]; the
    after-pulse extrema are scanned on (t_off, t_off + post_window].
    Positive and negative orientation extrema are reported separately.
    """
    t_on, t_off = series.pulse_window
    t = series.times_ps
    if t[-1] < t_off + post_window_ps - 1e-9:
        raise SeriesError(
            f"series ends at {t[-1]:.4f} ps but the post-pulse window "
            f"extends to {t_off + post_window_ps:.4f} ps")

    during = (t >= t_on - 1e-12) & (t <= t_off + 1e-12)
    after = (t > t_off + 1e-12) & (t <= t_off + post_window_ps + 1e-12)
    if not during.any() or not after.any():
        raise SeriesError("empty during- or after-pulse window")

    def peak(mask, values, sign=1.0):
        idx = np.flatnonzero(mask)
        k = idx[np.argmax(sign * values[idx])]
        return float(values[k]), float(t[k])

    a_d, t_a_d = peak(during, series.alignment)
    a_a, t_a_a = peak(after, series.alignment)
    o_p, t_o_p = peak(after, series.orientation, +1.0)
    o_n, t_o_n = peak(after, series.orientation, -1.0)
    return ExtremaSummary(
        max_align_during=a_d, t_max_align_during=t_a_d,
        max_align_after=a_a, t_max_align_after=t_a_a,
        max_orient_pos_after=o_p, t_max_orient_pos_after=t_o_p,
        max_orient_neg_after=o_n, t_max_orient_neg_after=t_o_n,
        post_window_ps=post_window_ps)
