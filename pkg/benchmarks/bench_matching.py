#!/usr/bin/env python3
"""Time the compiled row-scan kernels against the pure-Python fallback.

Mining spends nearly all of its wall time in node_scan, one call per search
node, so per-node latency decides whether a corpus mines in seconds or in
minutes.  This script replays identical node sweeps through the compiled
implementation and through the fallback bodies and reports the speedup.
With --mine it also times complete mine() runs in fresh interpreters,
because the implementation is fixed at import time from PSPH_NO_NUMBA.

Run from the repository root:

    python3 benchmarks/bench_matching.py
    python3 benchmarks/bench_matching.py --rows 2000 --nodes 80 --mine
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from psph import kernels
from psph.miner import MinerConfig, mine
from psph.patterns import database, row_matches
from psph.synth import generate_corpus


def _sample_nodes(db, minsup: float, limit: int):
    """(runs_flat, run_offsets, sel) for the most frequent mined patterns."""
    mined = mine(db, MinerConfig(minsup=minsup))
    mined.sort(key=lambda m: (-m.frequency, m.pattern.render()))
    nodes = []
    for m in mined[:limit]:
        sel = np.array(
            [i for i, row in enumerate(db.rows) if row_matches(m.pattern, row)],
            dtype=np.int64,
        )
        runs_flat, run_offsets = kernels.encode_runs(m.pattern.runs)
        nodes.append((runs_flat, run_offsets, sel))
    return nodes


def _best_of(repeats: int, fn) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def _bench_kernels(args) -> None:
    db = database(generate_corpus(
        args.rows, alphabet_size=args.alphabet,
        length_range=(args.min_len, args.max_len), seed=args.seed,
    ))
    flat, offsets = kernels.encode_rows(db.rows)
    alpha = np.array([ord(c) for c in db.alphabet()], dtype=np.int32)
    lookup = kernels.build_lookup(alpha)
    nodes = _sample_nodes(db, args.minsup, args.nodes)
    if not nodes:
        sys.exit("no frequent patterns at this support; lower --minsup")
    print(f"corpus: {args.rows} rows, alphabet {args.alphabet}, "
          f"{len(nodes)} node sweeps, {alpha.shape[0]} live items")

    def run_compiled():
        for runs_flat, run_offsets, sel in nodes:
            kernels.node_scan(flat, offsets, sel, runs_flat, run_offsets,
                              alpha, lookup, True)

    def run_fallback():
        for runs_flat, run_offsets, sel in nodes:
            kernels.node_scan_py(flat, offsets, sel, runs_flat, run_offsets,
                                 lookup, alpha.shape[0], True)

    run_compiled()  # compilation / cache load stays out of the timings
    compiled = _best_of(args.repeats, run_compiled)
    fallback = _best_of(args.repeats, run_fallback)
    label = "compiled" if kernels.HAS_NUMBA else "wrapper (numba inactive)"
    print(f"{label:<26} {compiled / len(nodes) * 1e3:8.3f} ms/node   "
          f"total {compiled:.3f} s, best of {args.repeats}")
    print(f"{'pure-python fallback':<26} {fallback / len(nodes) * 1e3:8.3f} ms/node   "
          f"total {fallback:.3f} s, best of {args.repeats}")
    print(f"{'speedup':<26} {fallback / compiled:8.1f}x")
    if not kernels.HAS_NUMBA:
        print("note: numba is inactive in this process, both rows ran the same bodies")


_MINE_SNIPPET = """
import time
from psph.synth import generate_corpus
from psph.patterns import database
from psph.miner import MinerConfig, mine
db = database(generate_corpus({rows}, alphabet_size={alphabet},
                              length_range=({min_len}, {max_len}), seed={seed}))
cfg = MinerConfig(minsup={minsup})
mine(db, cfg)  # warm: compilation or cache load
t0 = time.perf_counter()
out = mine(db, cfg)
print(f"{{len(out)}} patterns {{time.perf_counter() - t0:.3f}}")
"""


def _bench_mine(args) -> None:
    snippet = _MINE_SNIPPET.format(
        rows=args.rows, alphabet=args.alphabet, min_len=args.min_len,
        max_len=args.max_len, seed=args.seed, minsup=args.minsup,
    )
    print(f"\nfull mine() in fresh interpreters, {args.rows} rows at minsup {args.minsup}:")
    for label, extra in (("numba", {}), ("fallback", {"PSPH_NO_NUMBA": "1"})):
        env = dict(os.environ, **extra)
        out = subprocess.run(
            [sys.executable, "-c", snippet], env=env,
            capture_output=True, text=True, check=True,
        ).stdout.strip()
        print(f"  {label:<10} {out}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", type=int, default=800)
    parser.add_argument("--alphabet", type=int, default=26)
    parser.add_argument("--min-len", type=int, default=10)
    parser.add_argument("--max-len", type=int, default=18)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--minsup", type=float, default=0.05)
    parser.add_argument("--nodes", type=int, default=40)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--mine", action="store_true",
                        help="also time complete mine() runs in subprocesses")
    args = parser.parse_args()
    _bench_kernels(args)
    if args.mine:
        _bench_mine(args)


if __name__ == "__main__":
    main()
