"""Command-line interface: sweep, bound, check and gen subcommands.

``sweep`` traces the lower bound, exact concurrence and upper bound of a
two-qubit state family under a pair of amplitude-damping channels and
writes the three curves as CSV.  ``bound`` evaluates the bounds for a
single state/channel combination from JSON files, ``check`` runs the
quantified property suites, and ``gen`` emits well-formed input files.

Logging verbosity follows the ENTBOUND_LOG environment variable
(quiet, info or debug).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channels import KrausChannel, amplitude_damping, apply_one_sided, apply_two_sided, \
    depolarizing, phase_damping
from .concurrence import fidelity_lower_bound, upper_bound_one_sided, upper_bound_two_sided, \
    wootters_concurrence
from .errors import DimensionMismatch, SingularProbe
from .probe import ProbeState, canonical_probe, lower_bound_one_sided, lower_bound_two_sided, \
    probe_from_matrix, pt_via_reduced
from .qlinalg import DensityMatrix, PureState, random_density, random_pure_state
from .serialize import channel_from_json, channel_to_json, dump_json, load_json, \
    probe_from_json, probe_to_json, state_from_json, state_to_json
from .suites import SUITE_NAMES, run_suites

log = logging.getLogger("entbound")

# Bundled two-qubit example: a 4-decimal rounded random mixed state.  Its
# printed trace is 1.0001, so it is normalized once here to satisfy the
# unit-trace invariant.
_EXAMPLE_RAW = np.array([
    [0.4322, 0.2113, 0.1073, 0.3369],
    [0.2113, 0.1845, 0.0406, 0.1798],
    [0.1073, 0.0406, 0.0504, 0.1144],
    [0.3369, 0.1798, 0.1144, 0.3330],
])


def default_base_state() -> DensityMatrix:
    return DensityMatrix((2, 2), _EXAMPLE_RAW / np.trace(_EXAMPLE_RAW))


def default_channels() -> tuple:
    return amplitude_damping(0.2), amplitude_damping(0.3)


@dataclass
class SweepConfig:
    """Inputs of the sweep experiment; defaults reproduce the bundled example."""

    x_grid: np.ndarray
    base_state: DensityMatrix
    channel_1: KrausChannel
    channel_2: KrausChannel
    probe: ProbeState
    seed: int = 0

    def __post_init__(self):
        grid = np.asarray(self.x_grid, dtype=float)
        if grid.size == 0:
            raise ValueError("x_grid must be nonempty")
        if np.any(grid < 0.0) or np.any(grid > 1.0):
            raise ValueError("x_grid values must lie in [0, 1]")
        if np.any(np.diff(grid) <= 0.0):
            raise ValueError("x_grid must be strictly increasing")
        self.x_grid = grid


def default_sweep_config() -> SweepConfig:
    ch1, ch2 = default_channels()
    return SweepConfig(
        x_grid=np.round(np.arange(0, 101) * 0.01, 10),
        base_state=default_base_state(),
        channel_1=ch1,
        channel_2=ch2,
        probe=canonical_probe(2),
        seed=0,
    )


def sweep_config_from_json(doc: dict) -> SweepConfig:
    cfg = default_sweep_config()
    if "x_grid" in doc:
        cfg_grid = np.asarray(doc["x_grid"], dtype=float)
    else:
        cfg_grid = cfg.x_grid
    base = state_from_json(doc["base_state"]) if "base_state" in doc else cfg.base_state
    if isinstance(base, PureState):
        base = base.density()
    if "probe" in doc:
        probe = probe_from_json(doc["probe"])
    elif base.dims[0] == base.dims[1]:
        probe = canonical_probe(base.dims[0])
    else:
        raise ValueError(f"a probe is required for non-square bipartition {base.dims}")
    return SweepConfig(
        x_grid=cfg_grid,
        base_state=base,
        channel_1=channel_from_json(doc["channel_1"]) if "channel_1" in doc else cfg.channel_1,
        channel_2=channel_from_json(doc["channel_2"]) if "channel_2" in doc else cfg.channel_2,
        probe=probe,
        seed=int(doc.get("seed", 0)),
    )


@dataclass
class BoundReport:
    """Everything one bound evaluation produced, ready for JSON output."""

    lower_raw: float
    lower: float
    exact: float  # None outside 2x2
    upper: float  # None outside 2x2
    p: float
    p_prime: float
    p_t: float
    method: str

    def to_json(self) -> dict:
        return {
            "lower_raw": self.lower_raw,
            "lower": self.lower,
            "exact": self.exact,
            "upper": self.upper,
            "p": self.p,
            "p_prime": self.p_prime,
            "p_t": self.p_t,
            "method": self.method,
        }


def _probe_density(probe: ProbeState) -> DensityMatrix:
    vec = probe.matrix.reshape(-1)
    return DensityMatrix((probe.dim, probe.dim), np.outer(vec, vec.conj()))


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def run_sweep(config: SweepConfig, output_path) -> None:
    """Evaluate lower bound, concurrence and upper bound over the x grid; write CSV.

    The exact (spin-flip) concurrence and the upper bound exist only for
    2x2 bipartitions; for larger states those two columns are left empty.
    """
    base = config.base_state.matrix
    dim = base.shape[0]
    two_qubit = config.base_state.dims == (2, 2)
    mix = np.eye(dim) / dim
    probe_rho = _probe_density(config.probe)
    app1 = apply_one_sided(config.channel_1, probe_rho, side="first")
    app2 = apply_one_sided(config.channel_2, probe_rho, side="second")

    lines = ["x,lower_bound,concurrence,upper_bound,p_total"]
    for x in config.x_grid:
        try:
            rho = DensityMatrix(config.base_state.dims, x * base + (1.0 - x) * mix)
            evolved = apply_two_sided(config.channel_1, config.channel_2, rho)
            lower = lower_bound_two_sided(rho, app1.output, app2.output, config.probe,
                                          p1_prime=app1.probability,
                                          p2_prime=app2.probability).clamped
            exact = upper = None
            if two_qubit:
                exact = wootters_concurrence(evolved.output)
                upper = upper_bound_two_sided(wootters_concurrence(rho), app1.output,
                                              app2.output, config.probe.matrix).raw
        except Exception as exc:
            raise RuntimeError(f"sweep failed at x={x}: {exc}") from exc
        lines.append(",".join("" if v is None else _fmt(v)
                              for v in (x, lower, exact, upper, evolved.probability)))
        log.debug("x=%s lower=%s exact=%s upper=%s", x, lower, exact, upper)

    with open(output_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
    log.info("wrote %d rows to %s", len(config.x_grid), output_path)


def _cmd_sweep(args) -> int:
    try:
        if args.config:
            config = sweep_config_from_json(load_json(args.config))
        else:
            config = default_sweep_config()
        if args.seed is not None:
            config.seed = args.seed
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: could not build sweep config: {exc}", file=sys.stderr)
        return 2
    try:
        run_sweep(config, args.output)
    except Exception as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


def evaluate_bound(rho: DensityMatrix, channels, side: str, probe, method: str) -> BoundReport:
    """Compute a full bound report for one or two channels on a state.

    ``probe`` may be None for non-square bipartitions with the direct
    method; probe-derived report fields are then left out.
    """
    if probe is None and method == "probe":
        raise DimensionMismatch("the probe method needs a square bipartition or a probe file")
    if len(channels) == 1:
        channel = channels[0]
        evolved = apply_one_sided(channel, rho, side=side)
        p_prime = p_t = None
        if probe is not None:
            app_probe = apply_one_sided(channel, _probe_density(probe), side=side)
            p_prime = app_probe.probability
            p_t = pt_via_reduced(rho, app_probe.output, probe, p_prime=p_prime, side=side)
        if method == "probe":
            lb = lower_bound_one_sided(rho, app_probe.output, probe,
                                       p_prime=p_prime, side=side)
        else:
            lb = fidelity_lower_bound(evolved.output)
        upper = exact = None
        if rho.dims == (2, 2):
            exact = wootters_concurrence(evolved.output)
            upper = upper_bound_one_sided(wootters_concurrence(rho), app_probe.output,
                                          probe.matrix).raw
        return BoundReport(lb.raw, lb.clamped, exact, upper,
                           evolved.probability, p_prime, p_t, method)

    ch1, ch2 = channels
    evolved = apply_two_sided(ch1, ch2, rho)
    p_prime = p_t = None
    if probe is not None:
        app1 = apply_one_sided(ch1, _probe_density(probe), side="first")
        app2 = apply_one_sided(ch2, _probe_density(probe), side="second")
        p_prime = app1.probability * app2.probability
        p_t = evolved.probability / p_prime
    if method == "probe":
        lb = lower_bound_two_sided(rho, app1.output, app2.output, probe,
                                   p1_prime=app1.probability, p2_prime=app2.probability)
    else:
        lb = fidelity_lower_bound(evolved.output)
    upper = exact = None
    if rho.dims == (2, 2):
        exact = wootters_concurrence(evolved.output)
        upper = upper_bound_two_sided(wootters_concurrence(rho), app1.output, app2.output,
                                      probe.matrix).raw
    return BoundReport(lb.raw, lb.clamped, exact, upper,
                       evolved.probability, p_prime, p_t, method)


def _cmd_bound(args) -> int:
    try:
        state = state_from_json(load_json(args.state))
        channels = tuple(channel_from_json(load_json(path)) for path in args.channels)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: could not parse inputs: {exc}", file=sys.stderr)
        return 2
    if isinstance(state, PureState):
        state = state.density()
    try:
        if args.probe_path:
            probe = probe_from_json(load_json(args.probe_path))
        elif state.dims[0] == state.dims[1]:
            probe = canonical_probe(state.dims[0])
        else:
            probe = None  # non-square bipartition: direct method only
    except SingularProbe as exc:
        print(f"error: singular probe: {exc}", file=sys.stderr)
        return 5
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: could not parse probe: {exc}", file=sys.stderr)
        return 2
    try:
        report = evaluate_bound(state, channels, args.side, probe, args.method)
    except SingularProbe as exc:
        print(f"error: singular probe: {exc}", file=sys.stderr)
        return 5
    except DimensionMismatch as exc:
        print(f"error: dimension mismatch: {exc}", file=sys.stderr)
        return 4
    print(json.dumps(report.to_json(), indent=2))
    return 0


def _cmd_check(args) -> int:
    try:
        results = run_suites(args.suite, seed=args.seed, trials=args.trials)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    all_passed = True
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{res.name}: {status} trials={res.trials} failures={res.failures} "
                     f"worst_residual={res.worst_residual:.3e}")
        all_passed = all_passed and res.passed
    report_text = "\n".join(lines) + "\n"
    print(report_text, end="")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report_text)
    if not all_passed:
        first_failure = next(r for r in results if not r.passed)
        base = args.report if args.report else f"entbound-{first_failure.name}"
        repro_path = f"{base}.repro.json"
        dump_json({"seed": args.seed, "trials": args.trials,
                   "failure": first_failure.repro}, repro_path)
        print(f"reproduction bundle written to {repro_path}", file=sys.stderr)
        return 1
    return 0


def _cmd_gen(args) -> int:
    try:
        if args.kind == "state":
            dims = (args.dims[0], args.dims[1])
            if args.rank is None:
                doc = state_to_json(random_pure_state(dims, args.seed))
            else:
                doc = state_to_json(random_density(dims, args.rank, args.seed))
        elif args.kind == "channel":
            if args.family == "amplitude-damping":
                channel = amplitude_damping(_require(args.gamma, "--gamma"))
            elif args.family == "depolarizing":
                channel = depolarizing(_require(args.prob, "--prob"))
            elif args.family == "phase-damping":
                channel = phase_damping(_require(args.lam, "--lam"))
            else:
                raise ValueError(f"unknown channel family {args.family!r}")
            doc = channel_to_json(channel)
        else:
            rng = np.random.default_rng(args.seed)
            while True:
                p = rng.standard_normal((args.dim, args.dim)) \
                    + 1j * rng.standard_normal((args.dim, args.dim))
                p = p / np.linalg.norm(p)
                if np.linalg.svd(p, compute_uv=False)[-1] > 1e-4:
                    break
            doc = probe_to_json(probe_from_matrix(p))
    except (ValueError, TypeError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return 2
    dump_json(doc, args.output)
    return 0


def _require(value, flag):
    if value is None:
        raise ValueError(f"{flag} is required for this family")
    return value


def _setup_logging():
    level_name = os.environ.get("ENTBOUND_LOG", "quiet").lower()
    levels = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level_name, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbound",
        description="Concurrence bounds for bipartite states under Kraus channels.")
    parser.add_argument("--version", action="version", version=f"entbound {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="trace bound curves over the x in [0,1] family")
    p_sweep.add_argument("--config", help="JSON sweep configuration file")
    p_sweep.add_argument("--output", required=True, help="CSV output path")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_bound = sub.add_parser("bound", help="evaluate bounds for one state and channel(s)")
    p_bound.add_argument("state", help="state JSON file")
    p_bound.add_argument("channels", nargs="+", help="one or two channel JSON files")
    p_bound.add_argument("--side", choices=("first", "second"), default="first",
                         help="subsystem a single channel acts on")
    p_bound.add_argument("--probe-path", help="probe JSON file (default: canonical MES)")
    p_bound.add_argument("--method", choices=("direct", "probe"), default="direct")
    p_bound.set_defaults(fn=_cmd_bound)

    p_check = sub.add_parser("check", help="run quantified property suites")
    p_check.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--trials", type=int, default=None)
    p_check.add_argument("--report", help="also write the report text to this path")
    p_check.set_defaults(fn=_cmd_check)

    p_gen = sub.add_parser("gen", help="generate input JSON files")
    p_gen.add_argument("kind", choices=("state", "channel", "probe"))
    p_gen.add_argument("output", help="output JSON path")
    p_gen.add_argument("--dims", type=int, nargs=2, default=(2, 2), metavar=("N1", "N2"))
    p_gen.add_argument("--rank", type=int, default=None,
                       help="density-matrix rank; omit for a pure state")
    p_gen.add_argument("--family", default="amplitude-damping",
                       choices=("amplitude-damping", "depolarizing", "phase-damping"))
    p_gen.add_argument("--gamma", type=float, default=None)
    p_gen.add_argument("--prob", type=float, default=None)
    p_gen.add_argument("--lam", type=float, default=None)
    p_gen.add_argument("--dim", type=int, default=2, help="probe dimension")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.set_defaults(fn=_cmd_gen)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
