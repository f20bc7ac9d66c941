"""Hot row-scanning loops, compiled with numba when available.

Rows and pattern runs travel as flat int32 code-point arrays with offset
tables, so one kernel call covers a whole node of the mining search: the
first occurrence of every alphabet item behind the prefix (gap
extensions), the embedding of every single-item elongation of the last
run (adjacent extensions), and the per-period character presence the
backward closure test intersects.

Set ``PSPH_NO_NUMBA=1`` to force the plain-Python fallback; the functions
are written so the same bodies run under both regimes and the test suite
holds the two bit-identical.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("PSPH_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}

if NUMBA_DISABLED:
    HAS_NUMBA = False
else:
    try:
        from numba import njit as _numba_njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False


def _compile(fn):
    if HAS_NUMBA:
        return _numba_njit(cache=True)(fn)
    return fn


def encode_rows(rows) -> tuple[np.ndarray, np.ndarray]:
    """Flatten strings to (codepoints, offsets); offsets has len(rows)+1 entries."""
    offsets = np.zeros(len(rows) + 1, dtype=np.int64)
    for i, row in enumerate(rows):
        offsets[i + 1] = offsets[i] + len(row)
    flat = np.empty(int(offsets[-1]), dtype=np.int32)
    pos = 0
    for row in rows:
        for c in row:
            flat[pos] = ord(c)
            pos += 1
    return flat, offsets


encode_runs = encode_rows


def build_lookup(alpha: np.ndarray) -> np.ndarray:
    """code point -> alphabet index table (-1 for strangers)."""
    if alpha.size == 0:
        return np.full(1, -1, dtype=np.int64)
    lookup = np.full(int(alpha.max()) + 1, -1, dtype=np.int64)
    lookup[alpha] = np.arange(alpha.size, dtype=np.int64)
    return lookup


def _first_ends(flat, offsets, sel, runs_flat, run_offsets):
    n_sel = sel.shape[0]
    n_runs = run_offsets.shape[0] - 1
    out = np.full(n_sel, -1, dtype=np.int64)
    for i in range(n_sel):
        start = offsets[sel[i]]
        length = offsets[sel[i] + 1] - start
        pos = 0
        ok = True
        for j in range(n_runs):
            rs = run_offsets[j]
            rl = run_offsets[j + 1] - rs
            found = np.int64(-1)
            p = pos
            while p + rl <= length:
                hit = True
                for q in range(rl):
                    if flat[start + p + q] != runs_flat[rs + q]:
                        hit = False
                        break
                if hit:
                    found = p
                    break
                p += 1
            if found < 0:
                ok = False
                break
            pos = found + rl
        if ok:
            out[i] = pos
    return out


def _scan_items(flat, offsets, sel, starts, lookup, n_alpha):
    n_sel = sel.shape[0]
    out = np.full((n_sel, n_alpha), -1, dtype=np.int64)
    for i in range(n_sel):
        start = offsets[sel[i]]
        length = offsets[sel[i] + 1] - start
        remaining = n_alpha
        p = starts[i]
        while p < length and remaining > 0:
            k = lookup[flat[start + p]]
            if k >= 0 and out[i, k] < 0:
                out[i, k] = p + 1
                remaining -= 1
            p += 1
    return out


def _node_scan(flat, offsets, sel, runs_flat, run_offsets, lookup, n_alpha, want_adjacent):
    n_sel = sel.shape[0]
    n_runs = run_offsets.shape[0] - 1
    gap_ends = np.full((n_sel, n_alpha), -1, dtype=np.int64)
    adj_ends = np.full((n_sel, n_alpha), -1, dtype=np.int64)
    common = np.ones((n_runs, n_alpha), dtype=np.bool_)
    greedy = np.empty(n_runs, dtype=np.int64)
    rstart = np.empty(n_runs, dtype=np.int64)
    present = np.zeros(n_alpha, dtype=np.bool_)
    alive = n_runs * n_alpha
    for i in range(n_sel):
        start = offsets[sel[i]]
        length = offsets[sel[i] + 1] - start
        pos = 0
        ok = True
        for j in range(n_runs):
            rs = run_offsets[j]
            rl = run_offsets[j + 1] - rs
            found = np.int64(-1)
            p = pos
            while p + rl <= length:
                hit = True
                for q in range(rl):
                    if flat[start + p + q] != runs_flat[rs + q]:
                        hit = False
                        break
                if hit:
                    found = p
                    break
                p += 1
            if found < 0:
                ok = False
                break
            pos = found + rl
            greedy[j] = pos
        if not ok:
            continue
        window = greedy[n_runs - 1]

        remaining = n_alpha
        p = window
        while p < length and remaining > 0:
            k = lookup[flat[start + p]]
            if k >= 0 and gap_ends[i, k] < 0:
                gap_ends[i, k] = p + 1
                remaining -= 1
            p += 1

        if want_adjacent:
            base = greedy[n_runs - 2] if n_runs >= 2 else np.int64(0)
            rs = run_offsets[n_runs - 1]
            rl = run_offsets[n_runs] - rs
            remaining = n_alpha
            p = base
            while p + rl + 1 <= length and remaining > 0:
                hit = True
                for q in range(rl):
                    if flat[start + p + q] != runs_flat[rs + q]:
                        hit = False
                        break
                if hit:
                    k = lookup[flat[start + p + rl]]
                    if k >= 0 and adj_ends[i, k] < 0:
                        adj_ends[i, k] = p + rl + 1
                        remaining -= 1
                p += 1

        if alive > 0:
            limit = window
            for j in range(n_runs - 1, -1, -1):
                rs = run_offsets[j]
                rl = run_offsets[j + 1] - rs
                p = limit - rl
                while p >= 0:
                    hit = True
                    for q in range(rl):
                        if flat[start + p + q] != runs_flat[rs + q]:
                            hit = False
                            break
                    if hit:
                        break
                    p -= 1
                rstart[j] = p
                limit = p
            for j in range(n_runs):
                left = np.int64(0) if j == 0 else greedy[j - 1]
                right = rstart[j]
                for q in range(n_alpha):
                    present[q] = False
                for p in range(left, right):
                    k = lookup[flat[start + p]]
                    if k >= 0:
                        present[k] = True
                for q in range(n_alpha):
                    if common[j, q] and not present[q]:
                        common[j, q] = False
                        alive -= 1
    return gap_ends, adj_ends, common


first_ends_py = _first_ends
scan_items_py = _scan_items
node_scan_py = _node_scan

_first_ends_impl = _compile(_first_ends)
_scan_items_impl = _compile(_scan_items)
_node_scan_impl = _compile(_node_scan)


def first_instance_ends(flat, offsets, runs_flat, run_offsets, sel=None) -> np.ndarray:
    """Greedy first-instance end per selected row, -1 where the pattern is absent."""
    if sel is None:
        sel = np.arange(offsets.shape[0] - 1, dtype=np.int64)
    return _first_ends_impl(flat, offsets, sel, runs_flat, run_offsets)


def scan_items(flat, offsets, sel, starts, alpha, lookup) -> np.ndarray:
    """First occurrence end of each alphabet item in row[starts[i]:], else -1."""
    return _scan_items_impl(flat, offsets, sel, starts, lookup, alpha.shape[0])


def node_scan(flat, offsets, sel, runs_flat, run_offsets, alpha, lookup, want_adjacent):
    """One mining-node sweep over the supporting rows.

    Returns (gap_ends, adj_ends, common): per-row embedding ends of every
    gap extension and every adjacent extension (columns follow alpha order,
    -1 where unsupported), and the runs-by-alphabet matrix of characters
    present in the same semi-maximum period of every row.  The pattern is
    closed exactly when common holds no True cell.
    """
    return _node_scan_impl(
        flat, offsets, sel, runs_flat, run_offsets, lookup, alpha.shape[0], want_adjacent
    )
