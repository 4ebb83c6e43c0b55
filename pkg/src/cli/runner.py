import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..config.limits import Limits
from ..config.loader import ConfigLoader
from ..config.settings import Settings
from ..core.errors import MomentsError
from ..core.moments import OperatorKind, OperatorSpec, eta_moment, triangular_moment_closed_form
from ..core.partitions import AdaptationMode, adapted_partitions, enumerate_nc2
from ..core.profiles import VarianceProfile, label_profiles_from_config
from ..core.rationals import rational_to_json
from ..core.trees import (
    AlternationType, enumerate_alternating, enumerate_ordered_trees, tree_to_partition,
)
from ..core.volumes import count_linear_extensions, region_constraints, volume
from ..core.words import StarWord
from ..randmat.ensembles import EnsembleSpec, ensemble_registry
from ..randmat.estimator import (
    REPORT_FIELDS, convergence_report, estimate_moment, finite_n_first_moment, prediction_for,
)
from ..reporting import CsvReporter, JsonReporter, convergence_frame, render_table
from ..threads.pool import resolve_workers
from ..utils.logging_utils import LoggingUtils
from ..verify.acceptance import check_registry, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Flag combination rejected before any computation."""


class CommandFailed(Exception):
    """A command ran but an assertion it was asked to check did not hold."""


class Context:
    """Settings shared by every subcommand."""

    def __init__(self, args: argparse.Namespace):
        config_path = args.config
        if config_path is None and os.path.exists('config.json'):
            config_path = 'config.json'
        self.settings = Settings(config_path)
        log_config = self.settings.get_logging_config()
        if args.log_level:
            log_config['level'] = args.log_level
        LoggingUtils.setup_logging(log_config)
        self.limits = Limits.unbounded() if args.unsafe_limits else self.settings.get_limits()
        self.simulation = self.settings.get_simulation_config()
        self.workers = resolve_workers(args.workers if args.workers is not None else self.simulation['workers'])


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _emit_table(rows: List[Dict[str, Any]], columns: Optional[List[str]] = None) -> None:
    sys.stdout.write(render_table(pd.DataFrame.from_records(rows, columns=columns)) + "\n")


def _word_from_args(args, required: bool = True) -> Optional[StarWord]:
    if getattr(args, 'tt_power', None) is not None:
        if args.tt_power < 0:
            raise UsageError("--tt-power must be nonnegative")
        return StarWord.tt_power(args.tt_power)
    if getattr(args, 'word', None) is not None:
        return StarWord.parse(args.word)
    if required:
        raise UsageError("a word is required (--word or --tt-power)")
    return None


def _load_profile(path: str):
    config = ConfigLoader().load_profile(path)
    return VarianceProfile.from_config(config), label_profiles_from_config(config)


def _frac(value) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def cmd_enumerate(args, ctx: Context) -> int:
    word = _word_from_args(args, required=False)
    m = args.m if args.m is not None else (len(word) if word is not None else None)
    if m is None:
        raise UsageError("enumerate needs --m or a word")
    if word is not None and len(word) != m:
        raise UsageError(f"--m {m} does not match word length {len(word)}")
    mode = AdaptationMode.parse(args.mode)
    if word is None:
        partitions = enumerate_nc2(m, limit=ctx.limits.max_m)
    else:
        partitions = adapted_partitions(word, mode, limit=ctx.limits.max_m)
    logger.info(f"{len(partitions)} partitions for m={m}")
    rows = [{"partition": p.to_list(), "outer": list(p.outer_map())} for p in partitions]
    if args.format == 'table':
        _emit_table([{"partition": str(p), "outer": " ".join(map(str, p.outer_map()))} for p in partitions],
                    columns=["partition", "outer"])
    else:
        _emit({"m": m, "word": str(word) if word is not None else None, "mode": mode.value,
               "count": len(rows), "partitions": rows})
    return EXIT_OK


def cmd_volume(args, ctx: Context) -> int:
    word = _word_from_args(args)
    if args.m is not None and args.m != len(word):
        raise UsageError(f"--m {args.m} does not match word length {len(word)}")
    mode = AdaptationMode.parse(args.mode)
    rows = []
    total_extensions = 0
    total = 0
    for p in adapted_partitions(word, mode, limit=ctx.limits.max_m):
        q = region_constraints(p, word, mode)
        count = count_linear_extensions(q, limit=ctx.limits.max_poset)
        vol = volume(p, word, mode, limit=ctx.limits.max_poset)
        total_extensions += count
        total += vol
        rows.append({"partition": p.to_list(), "constraints": q.to_dict()["constraints"],
                     "extensions": count, "volume": rational_to_json(vol)})
    summary = {"word": str(word), "mode": mode.value, "partitions": len(rows),
               "extensions": total_extensions, "volume": rational_to_json(total)}
    if args.format == 'table':
        table = [{"partition": json.dumps(r["partition"]), "extensions": r["extensions"],
                  "volume": f'{r["volume"]["num"]}/{r["volume"]["den"]}'} for r in rows]
        if args.per_partition:
            _emit_table(table, columns=["partition", "extensions", "volume"])
        sys.stdout.write(f"total: {total_extensions} extensions, volume {_frac(total)}\n")
    else:
        if args.per_partition:
            summary["per_partition"] = rows
        _emit(summary)
    return EXIT_OK


def _operator_from_args(args) -> OperatorSpec:
    kind = OperatorKind.parse(args.operator)
    if kind is OperatorKind.PROFILE:
        if not args.profile:
            raise UsageError("--operator profile needs --profile FILE")
        profile, labels = _load_profile(args.profile)
        return OperatorSpec.from_profile(profile, labels)
    if args.profile:
        raise UsageError("--profile only applies to --operator profile")
    return OperatorSpec(kind)


def cmd_moment(args, ctx: Context) -> int:
    spec = _operator_from_args(args)
    if args.closed_form is not None and args.closed_form < 0:
        raise UsageError("--closed-form must be nonnegative")
    word = _word_from_args(args, required=args.closed_form is None)
    if word is None:
        word = StarWord.tt_power(args.closed_form)
    if args.closed_form is not None:
        if spec.kind is OperatorKind.TRIANGULAR and word != StarWord.tt_power(args.closed_form):
            raise UsageError(f"--closed-form {args.closed_form} applies to the word {StarWord.tt_power(args.closed_form)}")
    result = eta_moment(word, spec, workers=ctx.workers, limit=ctx.limits.max_m)
    payload = result.to_dict()
    failed = None
    if args.closed_form is not None:
        closed = triangular_moment_closed_form(args.closed_form)
        payload["closed_form"] = rational_to_json(closed)
        if spec.kind is OperatorKind.TRIANGULAR:
            payload["matches"] = closed == result.value
            if closed != result.value:
                failed = f"partition sum {result.value} != closed form {closed} for n={args.closed_form}"
    if args.format == 'table':
        _emit_table([{"partition": p.to_json(), "contribution": _frac(v)} for p, v in result.contributions],
                    columns=["partition", "contribution"])
        sys.stdout.write(f"value: {_frac(result.value)}\n")
        if "closed_form" in payload:
            sys.stdout.write(f"closed form: {_frac(triangular_moment_closed_form(args.closed_form))}\n")
    else:
        _emit(payload)
    if failed:
        raise CommandFailed(failed)
    return EXIT_OK


def cmd_trees(args, ctx: Context) -> int:
    v = args.vertices
    if v < 1:
        raise UsageError("--vertices must be at least 1")
    if args.alternating:
        which = AlternationType.parse(args.alternating)
        if v < 2:
            raise UsageError("alternating trees need at least 2 vertices")
        trees = enumerate_alternating(v - 1, which, limit=ctx.limits.max_alternating_n)
        shapes = [t.tree for t in trees]
        nested = [t.to_nested() for t in trees]
    else:
        shapes = enumerate_ordered_trees(v, limit=ctx.limits.max_vertices)
        nested = [t.to_nested() for t in shapes]
    if args.count_only:
        _emit(len(nested))
        return EXIT_OK
    if args.bijection:
        rows = [{"tree": tree, "partition": tree_to_partition(shape).to_list()}
                for tree, shape in zip(nested, shapes)]
    else:
        rows = [{"tree": tree} for tree in nested]
    if args.format == 'table':
        _emit_table([{k: json.dumps(val, separators=(",", ":")) for k, val in row.items()} for row in rows])
    else:
        _emit({"vertices": v, "alternating": args.alternating, "count": len(rows), "trees": rows})
    return EXIT_OK


def _int_list(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(',') if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def cmd_simulate(args, ctx: Context) -> int:
    word = _word_from_args(args)
    sim = ctx.simulation
    n = args.n if args.n is not None else sim['n']
    trials = args.trials if args.trials is not None else sim['trials']
    seed = args.seed if args.seed is not None else sim['seed']
    if n < 1 or trials < 1:
        raise UsageError("--n and --trials must be positive")
    profile, labels = (None, {})
    if args.profile:
        profile, labels = _load_profile(args.profile)
    if args.kind == 'profile' and profile is None:
        raise UsageError("--kind profile needs --profile FILE")
    ns = _int_list(args.ns)
    rs = _int_list(args.rs)

    if ns or rs:
        rows = convergence_report(word, args.kind, ns or [n], rs=rs, profile=profile,
                                  trials=trials, seed=seed, workers=ctx.workers, label_profiles=labels)
        records = [row.to_record() for row in rows]
        payload = {"word": str(word), "kind": args.kind, "rows": [row.to_dict() for row in rows]}
        if args.format == 'table':
            sys.stdout.write(render_table(convergence_frame(rows, columns=REPORT_FIELDS)) + "\n")
        else:
            _emit(payload)
    else:
        spec = EnsembleSpec(n, args.kind, profile=profile, label_profiles=labels)
        estimate = estimate_moment(word, spec, trials, seed, ctx.workers)
        exact = prediction_for(word, spec)
        payload = estimate.to_dict()
        payload.update({"kind": args.kind, "seed": seed, "exact": rational_to_json(exact),
                        "abs_gap": abs(estimate.mean - float(exact))})
        if word == StarWord.tt_power(1) and args.kind in ('iid', 'strict-upper'):
            payload["finite_n_exact"] = rational_to_json(finite_n_first_moment(args.kind, n))
        records = [{'n': n, 'r': profile.r if profile else '', 'trials': trials, 'seed': seed,
                    'estimate': estimate.mean, 'stderr': estimate.stderr,
                    'exact_num': str(exact.numerator), 'exact_den': str(exact.denominator),
                    'abs_gap': payload["abs_gap"]}]
        if args.format == 'table':
            sys.stdout.write(render_table(convergence_frame(records, columns=REPORT_FIELDS)) + "\n")
        else:
            _emit(payload)

    if args.csv:
        reporter = CsvReporter(args.csv, REPORT_FIELDS)
        for record in records:
            reporter.record(record)
        reporter.finalize()
        logger.info(f"Wrote {len(records)} rows to {args.csv}")
    if args.json:
        reporter = JsonReporter(args.json)
        for record in records:
            reporter.record(record)
        reporter.finalize()
        logger.info(f"Wrote {len(records)} rows to {args.json}")
    return EXIT_OK


def cmd_verify(args, ctx: Context) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    if 2 * args.max_n > ctx.limits.max_m:
        raise UsageError(f"--max-n {args.max_n} needs m={2 * args.max_n} above the limit {ctx.limits.max_m}")
    for name in args.check or []:
        if name not in check_registry:
            raise UsageError(f"unknown check {name!r}; choose from {', '.join(check_registry)}")
    sim = ctx.simulation
    results = run_suite(max_n=args.max_n, seed=args.seed, workers=ctx.workers, names=args.check,
                        sim_n=args.sim_n if args.sim_n is not None else sim['n'],
                        trials=args.trials if args.trials is not None else sim['trials'],
                        max_m=ctx.limits.max_m)
    rows = [r.to_dict() for r in results]
    if args.format == 'json':
        _emit({"max_n": args.max_n, "seed": args.seed, "passed": all(r.passed for r in results), "checks": rows})
    else:
        _emit_table([{"check": r["check"], "result": "PASS" if r["passed"] else "FAIL",
                      "seconds": r["seconds"], "detail": r["detail"]} for r in rows],
                    columns=["check", "result", "seconds", "detail"])
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise CommandFailed(f"failed checks: {', '.join(failed)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', '-c', default=None,
                        help='Path to the settings file (default: config.json when present)')
    common.add_argument('--log-level', default=None, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])
    common.add_argument('--unsafe-limits', action='store_true', help='Lift the enumeration limits')
    common.add_argument('--workers', type=int, default=None, help='Worker threads (env MOMENTS_WORKERS)')

    def output_flags(sub, default='json'):
        sub.add_argument('--format', choices=['json', 'table'], default=default)

    def word_flags(sub, required=False):
        group = sub.add_mutually_exclusive_group(required=required)
        group.add_argument('--word', help='Comma-separated letters, e.g. "*1,1,*1,1"')
        group.add_argument('--tt-power', type=int, help='Shorthand for the word (*1,1)^n')

    parser = argparse.ArgumentParser(prog='moments',
                                     description='Exact and Monte Carlo moments of triangular operators')
    subparsers = parser.add_subparsers(dest='command', required=True)

    sub = subparsers.add_parser('enumerate', parents=[common], help='Noncrossing pair partitions')
    sub.add_argument('--m', type=int)
    word_flags(sub)
    sub.add_argument('--mode', choices=[m.value for m in AdaptationMode], default='eta')
    output_flags(sub)
    sub.set_defaults(handler=cmd_enumerate)

    sub = subparsers.add_parser('volume', parents=[common], help='Region volumes of adapted partitions')
    sub.add_argument('--m', type=int)
    word_flags(sub)
    sub.add_argument('--mode', choices=[m.value for m in AdaptationMode], default='eta')
    sub.add_argument('--per-partition', action='store_true')
    output_flags(sub)
    sub.set_defaults(handler=cmd_volume)

    sub = subparsers.add_parser('moment', parents=[common], help='Exact mixed moments')
    sub.add_argument('--operator', choices=[k.value for k in OperatorKind], default='triangular')
    word_flags(sub)
    sub.add_argument('--profile', help='Variance profile file (.json, .json5, .yaml)')
    sub.add_argument('--closed-form', type=int, metavar='N')
    output_flags(sub)
    sub.set_defaults(handler=cmd_moment)

    sub = subparsers.add_parser('trees', parents=[common], help='Ordered and alternating trees')
    sub.add_argument('--vertices', type=int, required=True)
    sub.add_argument('--alternating', choices=[t.value for t in AlternationType])
    sub.add_argument('--count-only', action='store_true')
    sub.add_argument('--bijection', action='store_true', help='Print each tree with its partition')
    output_flags(sub)
    sub.set_defaults(handler=cmd_trees)

    sub = subparsers.add_parser('simulate', parents=[common], help='Monte Carlo estimate of a moment')
    sub.add_argument('--kind', choices=sorted(ensemble_registry), default='strict-upper')
    sub.add_argument('--n', type=int)
    sub.add_argument('--trials', type=int)
    sub.add_argument('--seed', type=int)
    word_flags(sub)
    sub.add_argument('--profile', help='Variance profile file for --kind profile')
    sub.add_argument('--ns', help='Comma-separated dimensions for a convergence report')
    sub.add_argument('--rs', help='Comma-separated grid resolutions for a convergence report')
    sub.add_argument('--csv', help='Write report rows to this CSV file')
    sub.add_argument('--json', help='Write report rows to this JSON file')
    output_flags(sub)
    sub.set_defaults(handler=cmd_simulate)

    sub = subparsers.add_parser('verify', parents=[common], help='Run the acceptance suite')
    sub.add_argument('--max-n', type=int, default=7)
    sub.add_argument('--seed', type=int, default=42)
    sub.add_argument('--check', action='append', help='Run only this check (repeatable)')
    sub.add_argument('--sim-n', type=int)
    sub.add_argument('--trials', type=int)
    output_flags(sub, default='table')
    sub.set_defaults(handler=cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one subcommand and return its exit code.

    0 on success, 2 for rejected flags, 1 when a verification or
    closed-form assertion fails.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    try:
        ctx = Context(args)
        return args.handler(args, ctx)
    except (UsageError, MomentsError) as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog} {args.command}: error: {e}\n")
        return EXIT_USAGE
    except (FileNotFoundError, ValueError) as e:
        sys.stderr.write(f"{parser.prog} {args.command}: error: {e}\n")
        return EXIT_USAGE
    except CommandFailed as e:
        sys.stderr.write(f"{parser.prog} {args.command}: FAILED: {e}\n")
        return EXIT_FAILURE


def main():
    sys.exit(run())
