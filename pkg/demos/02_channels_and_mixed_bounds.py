"""
Kraus channels and mixed-state bounds
=====================================

Send halves of entangled states through noise channels and watch the
exact two-qubit concurrence sit between its lower and upper bounds.
"""

import numpy as np

from entbound import (
    KrausChannel,
    amplitude_damping,
    apply_one_sided,
    apply_two_sided,
    canonical_mes,
    canonical_probe,
    depolarizing,
    fidelity_lower_bound,
    upper_bound_one_sided,
    wootters_concurrence,
)

bell = canonical_mes((2, 2)).density()

# Amplitude damping with decay probability 0.2 on the first qubit.
damping = amplitude_damping(0.2)
print("Kraus operators:")
for m in damping.operators:
    print(m.real, "")
app = apply_one_sided(damping, bell, side="first")
print("trace preserving:", damping.trace_preserving, "-> probability", app.probability)
print("concurrence after damping:", wootters_concurrence(app.output))

# The fidelity-based lower bound never exceeds the exact value.
lb = fidelity_lower_bound(app.output)
print("lower bound (raw / clamped):", lb.raw, "/", lb.clamped)

# Evolving the canonical probe gives the matching upper bound.
probe = canonical_probe(2)
probe_rho = canonical_mes((2, 2)).density()  # same state, used as the probe input
evolved_probe = apply_one_sided(damping, probe_rho, side="first").output
ub = upper_bound_one_sided(wootters_concurrence(bell), evolved_probe, probe.matrix)
print("upper bound:", ub.raw, " (equality holds for pure inputs)")

# A non-trace-preserving channel: keep only the decay branch.  The
# application reports how likely that branch is.
decay_only = KrausChannel(2, (damping.operators[1],))
picked = apply_one_sided(decay_only, bell, side="first")
print("\ndecay-branch probability:", picked.probability)
print("conditional state concurrence:", wootters_concurrence(picked.output))

# Two-sided noise compounds: damping on one side, depolarizing on the other.
both = apply_two_sided(damping, depolarizing(0.3), bell)
exact = wootters_concurrence(both.output)
print("\ntwo-sided evolution: concurrence", exact)
print("sandwich:", fidelity_lower_bound(both.output).clamped, "<=", exact)
