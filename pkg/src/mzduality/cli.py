"""Command-line front end.

All angles are in radians and all probabilities are unitless numbers in
[0, 1]. Tabular output is CSV with 17 significant digits; scalar results are
JSON. Exit codes: 0 success, 1 inequality violation (``duality``), 2 bad
input, 3 degenerate output port, 4 closed form asked outside its regime.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import (
    DegeneratePortError,
    MZDualityError,
    ScenarioFormatError,
    UnsupportedRegimeError,
)
from .harness import run_suite
from .interferometer import (
    a_priori_visibility,
    detection_probability,
    fringe_visibility,
    path_weights,
    predictability,
)
from .io import load_scenario, load_strategy
from .unsharp import (
    UnsharpObservable,
    classify_margin,
    guess_observable,
    interference_observable,
    jm_closed_form,
    oracle_search,
)
from .which_path import Strategy

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_UNSUPPORTED = 4

R_GRID = (0.01, 0.99)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header: list[str], rows: list[list[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_fmt(v) for v in row] for row in rows])
    return buf.getvalue()


def _table(header, rows, summary, fmt: str) -> str:
    if fmt == "json":
        data = {"rows": [dict(zip(header, map(float, row))) for row in rows], "summary": summary}
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    return _csv(header, rows) + "# " + json.dumps(summary, sort_keys=True) + "\n"


def _fail(code: int, message: str) -> int:
    print(f"mzduality: {message}", file=sys.stderr)
    return code


def cmd_pattern(args) -> int:
    if args.phi_steps < 2:
        return _fail(EXIT_INPUT, "--phi-steps must be at least 2")
    config = load_scenario(args.scenario)
    summary = {
        "port": config.port,
        "P": predictability(config),
        "V0": a_priori_visibility(config),
        "V": fringe_visibility(config),
    }
    port_a = config.replace(port="A")
    rows = []
    for k in range(args.phi_steps):
        phi = 2.0 * math.pi * k / args.phi_steps
        p_a = detection_probability(port_a.replace(phi=phi))
        rows.append([phi, p_a, 1.0 - p_a])
    _emit(_table(["phi", "p_A", "p_B"], rows, summary, args.format), args.output)
    return EXIT_OK


def cmd_sweep_r(args) -> int:
    if args.r_steps < 2:
        return _fail(EXIT_INPUT, "--r-steps must be at least 2")
    config = load_scenario(args.scenario)
    rows = []
    for r in np.linspace(*R_GRID, args.r_steps):
        c = config.replace(r=float(r))
        wa, wb = path_weights(c).for_port(c.port)
        rows.append(
            [c.r, wa, wb, predictability(c), a_priori_visibility(c), fringe_visibility(c)]
        )
    summary = {"port": config.port, "phi": config.phi, "r_range": list(R_GRID)}
    _emit(_table(["r", "w1", "w2", "P", "V0", "V"], rows, summary, args.format), args.output)
    return EXIT_OK


def cmd_duality(args) -> int:
    if args.trials < 1:
        return _fail(EXIT_INPUT, "--trials must be at least 1")
    if not 2 <= args.detector_dim <= 8:
        return _fail(EXIT_INPUT, "--detector-dim must lie in [2, 8]")
    if args.seed < 0:
        return _fail(EXIT_INPUT, "--seed must be non-negative")
    if args.threads < 1:
        return _fail(EXIT_INPUT, "--threads must be at least 1")
    report = run_suite(
        args.seed,
        args.trials,
        args.detector_dim,
        pure_states=args.pure_states,
        optimal=args.optimal_strategy,
        check_jm=not args.skip_jm,
        threads=args.threads,
    )
    summary = report.summary_json() + "\n"
    if args.output:
        out = Path(args.output)
        out.write_text(report.to_csv())
        out.with_suffix(".json").write_text(summary)
        sys.stdout.write(summary)
    else:
        sys.stdout.write(report.to_csv())
        sys.stderr.write(summary)
    return EXIT_OK if report.violation_count == 0 else EXIT_VIOLATION


def _vector(text: str) -> np.ndarray:
    try:
        parts = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three components, got {text!r}")
    return np.array(parts)


def _indices(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected I,J,..., got {text!r}") from None


def _jm_pair(args) -> tuple[UnsharpObservable, UnsharpObservable]:
    if args.from_scenario:
        config = load_scenario(args.from_scenario)
        if args.strategy:
            strategy = load_strategy(args.strategy)
        else:
            strategy = Strategy.computational(config.detector_dim, args.subset or [])
        return (
            guess_observable(strategy, config.detector_state, config.detector_unitary),
            interference_observable(config),
        )
    if args.x is None or args.m is None or args.n is None:
        raise ScenarioFormatError("give --x, --m and --n, or --from-scenario")
    return UnsharpObservable(args.x, args.m), UnsharpObservable(args.y, args.n)


def cmd_jm(args) -> int:
    obs1, obs2 = _jm_pair(args)
    result: dict = {
        "first": {"bias": obs1.bias, "direction": obs1.direction.tolist()},
        "second": {"bias": obs2.bias, "direction": obs2.direction.tolist()},
        "method": args.method,
    }
    closed = None
    if args.method in ("closed", "both"):
        try:
            closed = jm_closed_form(obs1, obs2)
        except UnsupportedRegimeError as exc:
            if args.method == "closed":
                return _fail(EXIT_UNSUPPORTED, f"{exc} (try --method oracle)")
            result["closed_form"] = None
        else:
            result["closed_form"] = {
                "jointly_measurable": closed.jointly_measurable,
                "margin": closed.margin,
                "classification": classify_margin(closed.margin),
            }
    search = None
    if args.method in ("oracle", "both"):
        search = oracle_search(obs1, obs2)
        result["oracle"] = {
            "jointly_measurable": search.jointly_measurable,
            "min_eigenvalue": search.min_eigenvalue,
            "resolution": search.resolution,
            "witness_bloch": search.g.tolist() if search.jointly_measurable else None,
        }
    if closed is not None:
        result["jointly_measurable"] = closed.jointly_measurable
        result["margin"] = closed.margin
    else:
        result["jointly_measurable"] = search.jointly_measurable
        result["margin"] = None
    result["methods_agree"] = (
        closed.jointly_measurable == search.jointly_measurable
        if closed is not None and search is not None
        else None
    )
    _emit(json.dumps(result, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mzduality",
        description="Asymmetric Mach-Zehnder duality laboratory. Angles in radians; "
        "probabilities unitless in [0, 1].",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pattern", help="interference pattern p_A(phi), p_B(phi)")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--phi-steps", type=int, required=True, help="grid points on [0, 2pi)")
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("sweep-r", help="path weights and visibilities against reflectivity")
    p.add_argument("--scenario", required=True)
    p.add_argument("--r-steps", type=int, required=True, help="grid points on [0.01, 0.99]")
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep_r)

    p = sub.add_parser("duality", help="randomized verification of the duality inequalities")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--detector-dim", type=int, default=2, help="detector dimension (default 2)")
    p.add_argument("--pure-states", action="store_true", help="sample pure particle states")
    p.add_argument(
        "--optimal-strategy", action="store_true", help="use the optimal guessing strategy"
    )
    p.add_argument("--threads", type=int, default=1, help="worker threads (output unchanged)")
    p.add_argument(
        "--skip-jm", action="store_true", help="skip the grid-oracle cross-check per trial"
    )
    p.add_argument("--output", help="CSV path; the JSON summary goes next to it")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("jm", help="joint measurability of two unsharp qubit observables")
    p.add_argument("--x", type=float, help="bias of the first observable")
    p.add_argument("--m", type=_vector, help="direction of the first observable, X,Y,Z")
    p.add_argument("--y", type=float, default=0.0, help="bias of the second observable")
    p.add_argument("--n", type=_vector, help="direction of the second observable, X,Y,Z")
    p.add_argument("--from-scenario", help="use the pair induced by this scenario")
    p.add_argument("--subset", type=_indices, help="guess-path-1 outcomes, computational basis")
    p.add_argument("--strategy", help="strategy JSON file (overrides --subset)")
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="both")
    p.add_argument("--output")
    p.set_defaults(func=cmd_jm)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DegeneratePortError as exc:
        return _fail(EXIT_DEGENERATE, str(exc))
    except (MZDualityError, OSError) as exc:
        return _fail(EXIT_INPUT, str(exc))


if __name__ == "__main__":
    sys.exit(main())
