"""Boosting (or cancelling) orientation with a second pulse.

A 0.1 ps two-color pulse is too short to orient a 30 K ensemble well on
its own.  Timing a prepulse to the rotational revivals helps:

* a monochromatic prepulse 3/4 of a period ahead pre-aligns the ensemble,
* a two-color prepulse one full period ahead does better still,
* the same second pulse with its carrier phase flipped (delta = pi) at a
  full period almost switches the orientation off,
* and at a badly tuned delay the phase flip turns loss back into gain.

Run:  python3 demos/05_two_pulse_strategies.py
"""

import numpy as np

import rotalign as ra

TROT = ra.rotational_period_ps(ra.HBR)
GAMMA_OPT = np.sqrt(2.0 / 3.0)


def orientation(field):
    cfg = ra.ExperimentConfig(molecule=ra.HBR, field=field,
                              temperatures=(30.0,))
    return ra.run_single(cfg).extrema.max_abs_orient_after


short = ra.PulseSpec(tau_ps=0.1)
base = orientation(ra.FieldConfig.single(short))
print(f"single 0.1 ps pulse at 30 K:              |<cos>|max = {base:.4f}\n")

strategies = [
    ("monochromatic prepulse, t_d = 3T/4",
     ra.FieldConfig(pulses=(ra.PulseSpec(tau_ps=0.1, gamma=1.0), short),
                    t_delay_ps=0.75 * TROT)),
    ("two-color prepulse,     t_d = T",
     ra.FieldConfig(pulses=(short, short), t_delay_ps=TROT)),
    ("phase-flipped second,   t_d = T",
     ra.FieldConfig(pulses=(short, ra.PulseSpec(tau_ps=0.1, delta_cep=np.pi)),
                    t_delay_ps=TROT)),
    ("two-color second,       t_d = 1.5 ps",
     ra.FieldConfig(pulses=(short, short), t_delay_ps=1.5)),
    ("phase-flipped second,   t_d = 1.5 ps",
     ra.FieldConfig(pulses=(short, ra.PulseSpec(tau_ps=0.1, delta_cep=np.pi)),
                    t_delay_ps=1.5)),
]

for label, field in strategies:
    value = orientation(field)
    print(f"{label}:  {value:.4f}  ({value / base:4.2f} x single pulse)")
