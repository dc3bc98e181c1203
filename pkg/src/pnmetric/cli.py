"""Command line front end.

    pnmetric validate SPACE [--profile P]
    pnmetric convert PARTIAL_METRIC --n N [--unchecked]
    pnmetric analyze SPACE {topology,metric,sequence} [--sequence SEQ] [--dot FILE]
    pnmetric solve --space SPACE --map MAP --start X [--strong]
                   [--certify r|phi --r V [--lambda L]]
    pnmetric orbit --space SPACE --map MAP --start X

Exit codes: 0 success, 1 axiom failure / invalid space, 2 orbit not Cauchy or
without special limit, 3 no hypothesis set holds, 4 certificate failed,
64 usage or input error, 70 internal contradiction.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import axioms, fixed_point, io, sequences, topology
from .errors import (
    CertificateFailed,
    HypothesesUnsatisfied,
    InvalidSpace,
    NoSpecialLimit,
    NotCauchy,
    NotCauchyOnPrefix,
    PartialMetricAxiomViolation,
    PNMetricError,
    TheoremContradicted,
    UniquenessViolation,
)
from .spaces import DEFAULT_TOL, from_partial_metric, max_table_entries, table_size

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NOT_CAUCHY = 2
EXIT_HYPOTHESES = 3
EXIT_CERTIFICATE = 4
EXIT_USAGE = 64
EXIT_INTERNAL = 70


@dataclass
class RunConfig:
    tolerance: float = DEFAULT_TOL
    window: int | None = None
    max_steps: int | None = None
    seed: int = 42
    output_format: str = "json"

    def __post_init__(self):
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max-steps must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(payload, config: RunConfig, out):
    if config.output_format == "json":
        out.write(io.dumps(payload))
    else:
        _write_text(payload, out)


def _write_text(payload, out, indent=""):
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)) and value:
                out.write(f"{indent}{key}:\n")
                _write_text(value, out, indent + "  ")
            else:
                out.write(f"{indent}{key}: {io.round_floats(value)}\n")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, (dict, list)):
                out.write(f"{indent}-\n")
                _write_text(item, out, indent + "  ")
            else:
                out.write(f"{indent}- {io.round_floats(item)}\n")
    else:
        out.write(f"{indent}{payload}\n")


def _warn_size(num_points, n):
    size = table_size(num_points, n)
    if size > max_table_entries():
        print(
            f"warning: table has {size} entries (limit {max_table_entries()}; "
            "set PNMETRIC_MAX_TABLE to change)",
            file=sys.stderr,
        )


def _load_space(path):
    space = io.load_space(path)
    _warn_size(len(space), space.n)
    return space


# --- commands ------------------------------------------------------------


def cmd_validate(args, config, out):
    space = _load_space(args.space)
    report = axioms.validate(space, args.profile, tol=config.tolerance)
    _emit(report.to_dict(), config, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_convert(args, config, out):
    pspace = io.load_partial_metric(args.partial_metric)
    _warn_size(len(pspace.points), args.n)
    try:
        space = from_partial_metric(
            pspace, args.n, checked=not args.unchecked, tol=config.tolerance
        )
    except PartialMetricAxiomViolation as exc:
        payload = {
            "error": "PartialMetricAxiomViolation",
            "violations": [v.to_dict() for v in exc.violations],
        }
        sys.stderr.write(io.dumps(payload))
        return EXIT_FAIL
    _emit(io.space_to_dict(space), config, out)
    return EXIT_OK


def _topology_report(space, config, dot_path):
    report = axioms.validate(space, "partial_n_metric", tol=config.tolerance)
    if not report.passed:
        raise InvalidSpace("space is not a partial n-metric space", report)
    balls = {}
    for x in space.points:
        grid = topology.radius_grid([space.gap(x, y) for y in space.points])
        seen = []
        for eps in grid:
            ball = topology.open_ball(space, x, eps)
            if not seen or seen[-1]["members"] != sorted(ball.members):
                seen.append(ball.to_dict())
        balls[x] = seen
    basis = topology.basis_check(space, seed=config.seed)
    payload = {
        "separation": topology.separation_class(space).to_dict(),
        "balls": balls,
        "basis_check": {
            "passed": basis.passed,
            "trials": basis.trials,
            "counterexample": basis.counterexample,
        },
        "specialization_order": [list(p) for p in topology.specialization_order(space)],
    }
    if axioms.validate(space, "n_metric", tol=config.tolerance).passed:
        cmp = topology.compare_topologies(space, config.tolerance)
        payload["metric_topology_agrees"] = {
            "passed": cmp.passed,
            "checked": cmp.checked,
            "counterexample": cmp.counterexample,
        }
    if dot_path:
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(topology.specialization_dot(space))
    return payload


def _metric_report(space, config):
    from .spaces import associated_metric

    metric = associated_metric(space, check=True, tol=config.tolerance)
    table = {
        x: {y: metric.distance(x, y) for y in space.points} for x in space.points
    }
    violations = axioms.check_metric(metric, config.tolerance)
    return {
        "associated_metric": table,
        "metric_axioms": "pass" if not violations else "fail",
        "violations": [v.to_dict() for v in violations],
    }


def _sequence_report(space, items, config):
    prefix = sequences.SequencePrefix(space, items)
    window = config.window
    tol = config.tolerance
    verdict = sequences.estimate_cauchy(prefix, window, tol)
    candidates = {}
    for a in space.points:
        row = {"limit": sequences.check_limit(prefix, a, tol, window)}
        if verdict.holds_on_prefix:
            row["special_limit"] = sequences.check_special_limit(prefix, a, tol, window)
        candidates[a] = row
    payload = {
        "sequence": list(items),
        "cauchy": verdict.to_dict(),
        "candidates": candidates,
        "special_limit": None,
    }
    if verdict.holds_on_prefix:
        try:
            payload["special_limit"] = sequences.special_limit_search(prefix, tol, window)
        except UniquenessViolation as exc:
            payload["uniqueness_violation"] = exc.candidates
    return payload


def cmd_analyze(args, config, out):
    space = _load_space(args.space)
    if args.target == "topology":
        payload = _topology_report(space, config, args.dot)
    elif args.target == "metric":
        payload = _metric_report(space, config)
    else:
        if not args.sequence:
            raise SystemExit(_usage("analyze sequence needs --sequence"))
        payload = _sequence_report(space, io.parse_sequence(args.sequence), config)
    _emit(payload, config, out)
    return EXIT_OK


def _diagnostic(kind, exc, extra=None):
    payload = {"error": kind, "message": str(exc), "fixed_point": None}
    if extra:
        payload.update(extra)
    return payload


def cmd_solve(args, config, out):
    space = _load_space(args.space)
    fmap = io.load_map(space, args.map)
    tol = config.tolerance
    try:
        if args.certify:
            if args.r is None:
                return _usage("--certify needs --r")
            result = fixed_point.solve_via_contractive(
                space,
                fmap,
                args.start,
                args.certify,
                args.r,
                lam=args.lam,
                max_steps=config.max_steps,
                tol=tol,
                strong_mode=args.strong,
            )
        else:
            result = fixed_point.solve_fixed_point(
                space, fmap, args.start, config.max_steps, tol, strong_mode=args.strong
            )
    except (NotCauchy, NoSpecialLimit) as exc:
        extra = {"orbit": exc.trace.to_dict()} if exc.trace is not None else None
        _emit(_diagnostic(type(exc).__name__, exc, extra), config, out)
        return EXIT_NOT_CAUCHY
    except HypothesesUnsatisfied as exc:
        extra = {"special_limit": exc.special_limit, "cases": exc.cases}
        _emit(_diagnostic("HypothesesUnsatisfied", exc, extra), config, out)
        return EXIT_HYPOTHESES
    except CertificateFailed as exc:
        extra = {"certificate": exc.certificate.to_dict()}
        _emit(_diagnostic("CertificateFailed", exc, extra), config, out)
        return EXIT_CERTIFICATE
    except TheoremContradicted as exc:
        _emit(_diagnostic("TheoremContradicted", exc), config, out)
        return EXIT_INTERNAL
    _emit(result.to_dict(), config, out)
    return EXIT_OK


def cmd_orbit(args, config, out):
    space = _load_space(args.space)
    fmap = io.load_map(space, args.map)
    trace = fixed_point.orbit(fmap, args.start, config.max_steps)
    _emit(trace.to_dict(), config, out)
    return EXIT_OK


def _usage(message):
    print(f"pnmetric: error: {message}", file=sys.stderr)
    return EXIT_USAGE


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-steps", type=int, default=None)
    common.add_argument("--window", type=int, default=None)

    parser = _Parser(prog="pnmetric", description="Partial n-metric space toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check the axioms of a space")
    p.add_argument("space")
    p.add_argument(
        "--profile", choices=sorted(axioms.PROFILES), default="partial_n_metric"
    )
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", parents=[common], help="lift a partial metric to arity n")
    p.add_argument("partial_metric")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--unchecked", action="store_true", help="skip the partial metric axiom check"
    )
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("analyze", parents=[common], help="topology, metric or sequence analysis")
    p.add_argument("space")
    p.add_argument("target", choices=("topology", "metric", "sequence"))
    p.add_argument("--sequence", help="JSON array or whitespace separated point names")
    p.add_argument("--dot", help="write the specialization preorder as DOT to this file")
    p.set_defaults(func=cmd_analyze)

    for name, func, text in (
        ("solve", cmd_solve, "find a fixed point by orbit iteration"),
        ("orbit", cmd_orbit, "dump the orbit of a point"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--space", required=True)
        p.add_argument("--map", required=True)
        p.add_argument("--start", required=True)
        if name == "solve":
            p.add_argument("--strong", action="store_true")
            p.add_argument("--certify", choices=("r", "phi"))
            p.add_argument("--r", type=float)
            p.add_argument("--lambda", dest="lam", type=float)
        p.set_defaults(func=func)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        config = RunConfig(args.tol, args.window, args.max_steps, args.seed, args.format)
    except ValueError as exc:
        return _usage(str(exc))
    try:
        return args.func(args, config, out)
    except SystemExit as exc:
        return exc.code
    except InvalidSpace as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if exc.report is not None:
            payload["report"] = exc.report.to_dict()
        _emit(payload, config, out)
        return EXIT_FAIL
    except NotCauchyOnPrefix as exc:
        print(f"pnmetric: error: {exc}", file=sys.stderr)
        return EXIT_NOT_CAUCHY
    except UniquenessViolation as exc:
        # two special limits can only happen on an invalid space
        print(f"pnmetric: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (PNMetricError, ValueError, KeyError) as exc:
        print(f"pnmetric: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
