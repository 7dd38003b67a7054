"""Quantified property suites behind the ``check`` command.

Each suite draws seeded random inputs, evaluates one of the library's
contracts at its stated tolerance, and reports the failure count plus
the worst residual seen.  Per-trial generators are seeded with
(seed, trial index) so any failure is reproducible from the suite name,
seed and trial number alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import channels as ch
from . import concurrence as conc
from . import probe as pr
from . import qlinalg as ql
from .serialize import channel_to_json, state_to_json

SUITE_NAMES = ("theorem1", "probe-invariance", "pt-equivalence", "sandwich",
               "mes-basis", "structural")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    trials: int
    failures: int
    worst_residual: float
    repro: dict = field(default=None)


def _rng(seed, trial):
    return np.random.default_rng([int(seed), int(trial)])


def _random_pure(dims, rng) -> ql.PureState:
    z = rng.standard_normal(dims[0] * dims[1]) + 1j * rng.standard_normal(dims[0] * dims[1])
    return ql.PureState(dims, z / np.linalg.norm(z))


def _random_density(dims, rank, rng) -> ql.DensityMatrix:
    d = dims[0] * dims[1]
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return ql.DensityMatrix(dims, rho / np.trace(rho).real)


def _random_tp_channel(dim, count, rng) -> ch.KrausChannel:
    gs = [rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
          for _ in range(count)]
    total = sum(g.conj().T @ g for g in gs)
    w, v = np.linalg.eigh(total)
    root_inv = v @ np.diag(1.0 / np.sqrt(w)) @ v.conj().T
    return ch.KrausChannel(dim, tuple(g @ root_inv for g in gs))


def _random_probe(dim, rng) -> pr.ProbeState:
    while True:
        p = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        p = p / np.linalg.norm(p)
        if np.linalg.svd(p, compute_uv=False)[-1] > 1e-4:
            return pr.probe_from_matrix(p)


def _probe_density(probe: pr.ProbeState) -> ql.DensityMatrix:
    vec = probe.matrix.reshape(-1)
    return ql.DensityMatrix((probe.dim, probe.dim), np.outer(vec, vec.conj()))


def _minor_sum_concurrence(psi: ql.PureState) -> float:
    """Coefficient-form concurrence: root of the summed squared 2x2 minors."""
    m = ql.state_to_matrix(psi)
    n1, n2 = psi.dims
    total = 0.0
    for i in range(n1):
        for j in range(n1):
            if i == j:
                continue
            for p in range(n2):
                for q in range(n2):
                    if p == q:
                        continue
                    total += abs(m[i, p] * m[j, q] - m[i, q] * m[j, p]) ** 2
    return float(np.sqrt(total))


def suite_mes_basis(seed=0, trials=None) -> SuiteResult:
    """Orthonormality and completeness of the generalized Bell basis, N = 2..4."""
    worst = 0.0
    failures = 0
    count = 0
    repro = None
    for n in (2, 3, 4):
        basis = pr.mes_basis(n)
        vecs = np.column_stack([s.amplitudes for s in basis.states])
        gram = vecs.conj().T @ vecs
        complete = vecs @ vecs.conj().T
        res = max(np.max(np.abs(gram - np.eye(n * n))),
                  np.max(np.abs(complete - np.eye(n * n))))
        schmidt_res = max(np.max(np.abs(ql.schmidt_decompose(s).coefficients - 1 / np.sqrt(n)))
                          for s in basis.states)
        res = max(res, schmidt_res)
        worst = max(worst, res)
        count += 1
        if res >= 1e-12:
            failures += 1
            repro = repro or {"suite": "mes-basis", "n": n, "residual": res}
    return SuiteResult("mes-basis", failures == 0, count, failures, worst, repro)


def suite_theorem1(seed=0, trials=1000) -> SuiteResult:
    """Saturation of the fidelity bounds: exact for two-qubit pure states,
    exact for maximally entangled states in higher dimension, strict otherwise."""
    worst = 0.0
    failures = 0
    repro = None
    count = 0
    for t in range(trials):
        psi = _random_pure((2, 2), _rng(seed, t))
        res = abs(conc.theorem1_bound(psi.density()).raw - conc.concurrence_pure(psi))
        worst = max(worst, res)
        count += 1
        if res > 1e-9:
            failures += 1
            repro = repro or {"suite": "theorem1", "seed": seed, "trial": t,
                              "state": state_to_json(psi), "residual": res}
    for n in (3, 4):
        mes = ql.canonical_mes((n, n))
        res = abs(conc.fidelity_lower_bound(mes.density()).raw - conc.concurrence_pure(mes))
        worst = max(worst, res)
        count += 1
        if res > 1e-12:
            failures += 1
            repro = repro or {"suite": "theorem1", "mes_dim": n, "residual": res}
        for t in range(max(1, trials // 50)):
            psi = _random_pure((n, n), _rng(seed, 10_000 * n + t))
            margin = conc.concurrence_pure(psi) - conc.fidelity_lower_bound(psi.density()).raw
            count += 1
            if margin <= 1e-10:  # bound must be strictly below away from MES
                failures += 1
                repro = repro or {"suite": "theorem1", "seed": seed, "dim": n,
                                  "trial": t, "margin": margin}
    return SuiteResult("theorem1", failures == 0, count, failures, worst, repro)


def suite_probe_invariance(seed=0, trials=100) -> SuiteResult:
    """Probe independence of the lower bound, and its agreement with the
    directly evolved state (one- and two-sided, non-TP truncations included)."""
    worst = 0.0
    failures = 0
    repro = None
    pairs = 0
    for n, n_pairs in ((2, 20), (3, 20)):
        for t in range(n_pairs):
            rng = _rng(seed, t + 1000 * n)
            rho = _random_density((n, n), int(rng.integers(1, n * n + 1)), rng)
            channel = _random_tp_channel(n, int(rng.integers(2, 4)), rng)
            if t % 4 == 0:  # non-trace-preserving truncation
                channel = ch.KrausChannel(n, channel.operators[:1])
            two_sided = t % 2 == 1
            if two_sided:
                channel_2 = _random_tp_channel(n, int(rng.integers(2, 4)), rng)
                evolved = ch.apply_one_sided(
                    channel_2, ch.apply_one_sided(channel, rho, "first").output, "second")
            else:
                evolved = ch.apply_one_sided(channel, rho, "first")
            direct = conc.fidelity_lower_bound(evolved.output).raw
            values = []
            for _ in range(trials):
                probe = _random_probe(n, rng)
                app = ch.apply_one_sided(channel, _probe_density(probe), side="first")
                if two_sided:
                    app2 = ch.apply_one_sided(channel_2, _probe_density(probe), side="second")
                    values.append(pr.lower_bound_two_sided(
                        rho, app.output, app2.output, probe,
                        p1_prime=app.probability, p2_prime=app2.probability).raw)
                else:
                    values.append(pr.lower_bound_one_sided(rho, app.output, probe,
                                                           p_prime=app.probability).raw)
            spread = max(values) - min(values)
            oracle_gap = max(abs(v - direct) for v in values)
            res = max(spread, oracle_gap)
            worst = max(worst, res)
            pairs += 1
            if res > 1e-8:
                failures += 1
                repro = repro or {"suite": "probe-invariance", "seed": seed,
                                  "dim": n, "pair": t, "spread": spread,
                                  "oracle_gap": oracle_gap,
                                  "state": state_to_json(rho),
                                  "channel": channel_to_json(channel)}
    return SuiteResult("probe-invariance", failures == 0, pairs, failures, worst, repro)


def suite_pt_equivalence(seed=0, trials=200) -> SuiteResult:
    """Agreement of the two p_t formulas, and p = p_t * p' against direct evolution."""
    worst = 0.0
    failures = 0
    repro = None
    for t in range(trials):
        rng = _rng(seed, t)
        n = 2 if t % 2 == 0 else 3
        rho = _random_density((n, n), int(rng.integers(1, n * n + 1)), rng)
        channel = _random_tp_channel(n, int(rng.integers(2, 4)), rng)
        trace_preserving = t % 3 != 0
        if not trace_preserving:
            channel = ch.KrausChannel(n, channel.operators[:1])
        probe = _random_probe(n, rng)
        app = ch.apply_one_sided(channel, _probe_density(probe), side="first")
        pt_red = pr.pt_via_reduced(rho, app.output, probe, p_prime=app.probability)
        pt_sum = pr.pt_via_mes_sum(rho, app.output, probe)
        res = abs(pt_red - pt_sum)
        if trace_preserving:
            res = max(res, abs(pt_red - 1.0))
        else:
            p_direct = ch.apply_one_sided(channel, rho, side="first").probability
            res = max(res, abs(pt_red * app.probability - p_direct))
        worst = max(worst, res)
        if res > 1e-10:
            failures += 1
            repro = repro or {"suite": "pt-equivalence", "seed": seed, "trial": t,
                              "residual": res, "state": state_to_json(rho),
                              "channel": channel_to_json(channel)}
    return SuiteResult("pt-equivalence", failures == 0, trials, failures, worst, repro)


def suite_sandwich(seed=0, trials=500) -> SuiteResult:
    """lower <= concurrence <= upper for random two-qubit states and TP channels.

    Pure inputs under a one-sided channel additionally saturate the upper
    bound, which is asserted as an equality.
    """
    worst = 0.0
    failures = 0
    repro = None
    for t in range(trials):
        rng = _rng(seed, t)
        probe = pr.canonical_probe(2) if t % 3 else _random_probe(2, rng)
        ch1 = _random_tp_channel(2, int(rng.integers(2, 4)), rng)
        app1 = ch.apply_one_sided(ch1, _probe_density(probe), side="first")
        if t % 2 == 0:
            # pure input, one-sided channel: the upper bound is an equality
            psi = _random_pure((2, 2), rng)
            rho = psi.density()
            evolved = ch.apply_one_sided(ch1, rho, "first").output
            exact = conc.wootters_concurrence(evolved)
            lower = conc.fidelity_lower_bound(evolved).clamped
            upper = conc.upper_bound_one_sided(conc.concurrence_pure(psi),
                                               app1.output, probe.matrix).raw
            res = max(lower - exact, abs(exact - upper))
        else:
            rho = _random_density((2, 2), int(rng.integers(1, 5)), rng)
            ch2 = _random_tp_channel(2, int(rng.integers(2, 4)), rng)
            app2 = ch.apply_one_sided(ch2, _probe_density(probe), side="second")
            evolved = ch.apply_two_sided(ch1, ch2, rho).output
            exact = conc.wootters_concurrence(evolved)
            lower = conc.fidelity_lower_bound(evolved).clamped
            upper = conc.upper_bound_two_sided(conc.wootters_concurrence(rho),
                                               app1.output, app2.output, probe.matrix).raw
            res = max(lower - exact, exact - upper)
        worst = max(worst, res)
        if res > 1e-9:
            failures += 1
            repro = repro or {"suite": "sandwich", "seed": seed, "trial": t,
                              "violation": res, "state": state_to_json(rho),
                              "channel_1": channel_to_json(ch1)}
    return SuiteResult("sandwich", failures == 0, trials, failures, worst, repro)


def suite_structural(seed=0, trials=1000) -> SuiteResult:
    """Dual concurrence formulas on random states; built-in channels trace preserving."""
    worst = 0.0
    failures = 0
    repro = None
    count = 0
    dims_cycle = ((2, 2), (2, 3), (3, 3))
    for t in range(trials):
        dims = dims_cycle[t % 3]
        psi = _random_pure(dims, _rng(seed, t))
        res = abs(conc.concurrence_pure(psi) - _minor_sum_concurrence(psi))
        worst = max(worst, res)
        count += 1
        if res > 1e-10:
            failures += 1
            repro = repro or {"suite": "structural", "seed": seed, "trial": t,
                              "state": state_to_json(psi), "residual": res}
    for maker, params in ((ch.amplitude_damping, np.linspace(0, 1, 11)),
                          (ch.depolarizing, np.linspace(0, 1, 11)),
                          (ch.phase_damping, np.linspace(0, 1, 11))):
        for value in params:
            defect = maker(float(value)).completeness_defect
            worst = max(worst, defect)
            count += 1
            if defect > 1e-12:
                failures += 1
                repro = repro or {"suite": "structural", "family": maker.__name__,
                                  "parameter": float(value), "defect": defect}
    return SuiteResult("structural", failures == 0, count, failures, worst, repro)


_SUITES = {
    "mes-basis": suite_mes_basis,
    "theorem1": suite_theorem1,
    "probe-invariance": suite_probe_invariance,
    "pt-equivalence": suite_pt_equivalence,
    "sandwich": suite_sandwich,
    "structural": suite_structural,
}


def run_suites(name: str, seed: int = 0, trials: int = None) -> list:
    """Run one named suite, or every suite for name "all"."""
    if name == "all":
        names = SUITE_NAMES
    elif name in _SUITES:
        names = (name,)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    results = []
    for item in names:
        fn = _SUITES[item]
        if trials is None:
            results.append(fn(seed=seed))
        else:
            results.append(fn(seed=seed, trials=trials))
    return results
