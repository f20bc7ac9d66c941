"""psph command line: synth -> mine -> build -> genq / estimate / evaluate."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .estimator import EstimatorConfig, estimate
from .evaluation import EvaluationError, evaluate, write_report
from .histogram import (
    HistogramError,
    RedundancyConfig,
    build,
    load_catalog,
    save_catalog,
)
from .miner import (
    FormatError,
    MinedPattern,
    Mode,
    MinerConfig,
    MinerError,
    PatternSet,
    load_patterns,
    mine,
    save_patterns,
)
from .patterns import PatternError, read_dataset
from .synth import generate_corpus, write_corpus
from .workload import (
    WorkloadError,
    WorkloadSpec,
    gen_group1,
    gen_group2,
    gen_group3,
    load_queries,
    save_queries,
)

log = logging.getLogger("psph")

_FAILURES = (
    PatternError,
    MinerError,
    HistogramError,
    FormatError,
    EvaluationError,
    WorkloadError,
    OSError,
    ValueError,
)


def _minsup(text: str) -> int | float:
    """`N` rows absolute, or `X%` as a fraction of the dataset."""
    try:
        if text.endswith("%"):
            value = float(text[:-1]) / 100.0
            if not 0 < value <= 1:
                raise ValueError
            return value
        value = int(text)
        if value <= 0:
            raise ValueError
        return value
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"minsup must be a positive integer or a percentage like 1.5%, got {text!r}"
        ) from None


def _cmd_mine(args) -> None:
    db = read_dataset(args.input)
    mode = Mode.POSITIONAL if args.mode == "positional" else Mode.REGULAR
    cfg = MinerConfig(minsup=args.minsup, mode=mode, max_pattern_literals=args.max_literals)
    mined = mine(db, cfg)
    resolved = cfg.resolve_minsup(db.size)
    log.info("mined %d patterns from %d rows (minsup_count=%d)", len(mined), db.size, resolved)
    save_patterns(PatternSet(tuple(mined), resolved, db.size, mode), args.out)


def _cmd_build(args) -> None:
    ps = load_patterns(args.patterns)
    redundancy = RedundancyConfig(delta=args.rpe_delta, enabled=not args.no_rpe)
    h = build(ps, args.buckets, t_percent=args.t_percent, redundancy=redundancy)
    log.info("selected %d bucket endpoints from %d patterns", len(h.buckets), len(ps.patterns))
    save_catalog(h, args.out)


def _cmd_estimate(args) -> None:
    h = load_catalog(args.catalog)
    t = h.t_percent if args.t_percent is None else args.t_percent
    cfg = EstimatorConfig(
        epsilon=args.epsilon, t_percent=t, partitioning_enabled=not args.no_partitioning
    )
    if args.pattern is not None:
        r = estimate(args.pattern, h, cfg)
        witness = ",".join(r.witness) or "-"
        print(f"{args.pattern}\t{r.selectivity!r}\t{r.match_case.name}\t{witness}")
        return
    for _, raw in load_queries(args.queries):
        r = estimate(raw, h, cfg)
        print(f"{raw}\t{r.selectivity!r}\t{r.match_case.name}")


def _cmd_evaluate(args) -> None:
    db = read_dataset(args.dataset)
    h = load_catalog(args.catalog)
    t = h.t_percent if args.t_percent is None else args.t_percent
    cfg = EstimatorConfig(
        epsilon=args.epsilon, t_percent=t, partitioning_enabled=not args.no_partitioning
    )
    report = evaluate(load_queries(args.queries), db, h, cfg)
    for a in report.aggregates:
        log.info(
            "group %d: %d queries, %d excluded, mean_rel=%s mean_abs=%s",
            a.group, a.query_count, a.excluded_count,
            a.mean_relative_error, a.mean_absolute_error,
        )
    log.info("mean estimation time: %.3g s", report.mean_estimation_seconds)
    write_report(report, args.out)


def _cmd_genq(args) -> None:
    db = read_dataset(args.dataset)
    spec = WorkloadSpec(seed=args.seed, count=args.count)
    generators = {1: gen_group1, 2: gen_group2, 3: gen_group3}
    queries = generators[args.group](db, spec)
    log.info("group %d: %d queries generated", args.group, len(queries))
    save_queries(args.group, queries, args.out)


def _cmd_synth(args) -> None:
    rows = generate_corpus(
        args.rows, args.alphabet, (args.min_len, args.max_len), seed=args.seed
    )
    write_corpus(rows, args.out)


def _parser() -> argparse.ArgumentParser:
    # -v lives on a parent parser so it is accepted on either side of the
    # subcommand; the shared dest survives because argparse only applies a
    # default when the namespace attribute is still missing.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="info-level logging")
    parser = argparse.ArgumentParser(
        prog="psph",
        description="Histogram-based selectivity estimation for SQL LIKE predicates.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"psph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, help: str):
        return sub.add_parser(name, help=help, parents=[common])

    p = add_parser("mine", help="mine frequent closed patterns from a dataset")
    p.add_argument("--input", required=True)
    p.add_argument("--minsup", required=True, type=_minsup)
    p.add_argument("--mode", choices=["positional", "regular"], default="positional")
    p.add_argument("--max-literals", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mine)

    p = add_parser("build", help="build a histogram catalog from mined patterns")
    p.add_argument("--patterns", required=True)
    p.add_argument("--buckets", type=int, default=2048)
    p.add_argument("--rpe-delta", type=float, default=0.00216)
    p.add_argument("--no-rpe", action="store_true")
    p.add_argument("--t-percent", type=float, default=10.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = add_parser("estimate", help="estimate selectivity of LIKE predicates")
    p.add_argument("--catalog", required=True)
    who = p.add_mutually_exclusive_group(required=True)
    who.add_argument("--pattern")
    who.add_argument("--queries")
    p.add_argument("--epsilon", type=int, default=1)
    p.add_argument("--t-percent", type=float, default=None)
    p.add_argument("--no-partitioning", action="store_true")
    p.set_defaults(func=_cmd_estimate)

    p = add_parser("evaluate", help="score a workload against ground truth")
    p.add_argument("--dataset", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--queries", required=True)
    p.add_argument("--epsilon", type=int, default=1)
    p.add_argument("--t-percent", type=float, default=None)
    p.add_argument("--no-partitioning", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = add_parser("genq", help="generate a query workload group")
    p.add_argument("--dataset", required=True)
    p.add_argument("--group", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_genq)

    p = add_parser("synth", help="generate a deterministic synthetic dataset")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=26)
    p.add_argument("--min-len", type=int, default=18)
    p.add_argument("--max-len", type=int, default=60)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_synth)
    return parser


def run(argv) -> int:
    level = os.environ.get("PSPH_LOG")
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=(level or ("INFO" if args.verbose else "WARNING")).upper(),
        format="%(name)s: %(message)s",
    )
    out = getattr(args, "out", None)
    out_existed = out is not None and Path(out).exists()
    try:
        args.func(args)
    except _FAILURES as exc:
        print(f"psph: error: {exc}", file=sys.stderr)
        if out is not None and not out_existed and Path(out).exists():
            Path(out).unlink()
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
