"""Exhaustive subset-search engine.

Candidate sets are 64-bit member masks over the graph's alternative order.
For each alternative x the engine precomputes, per potential coverer y with
y > x, the mask of "violators": reference-set members whose presence blocks
"y covers x".  A mask S is a covering set iff for every alternative x,

    covered(x, S) = any(y in S and S & violators(y, x) == 0)  over  y > x

equals False for members of S (internal stability) and True for non-members
(external stability; the reference set S + {x} gives the same test because x
itself can never be a coverer of x or a violator, by asymmetry).

Scans run in chunks so wall-clock and subset budgets are enforced between
chunks.  Kernels are JIT-compiled with numba when available; a pure-Python
implementation with identical semantics is used as fallback and can be forced
with the environment variable COVERS_NO_JIT=1.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

import numpy as np

from .budgets import SolverBudget
from .covering import Direction
from .errors import ResourceError
from .graph import DominanceGraph

try:  # pragma: no cover - exercised implicitly by which path runs
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

USE_JIT = _HAVE_NUMBA and os.environ.get("COVERS_NO_JIT", "") != "1"

_JIT_CHUNK = 1 << 22
_PY_CHUNK = 1 << 14

U0 = np.uint64(0)
U1 = np.uint64(1)
U2 = np.uint64(2)


# --------------------------------------------------------------------------
# precomputed per-graph arrays


@dataclass
class CoverArrays:
    """Per-(graph, direction) tables for the covered(x, S) test."""

    n: int
    indptr: np.ndarray   # int64[n + 1]
    src: np.ndarray      # uint64[m]: coverer index y per entry
    cmask: np.ndarray    # uint64[m]: violator mask per entry
    py_rows: list        # list of list[(y, violators)] as Python ints


def build_arrays(graph: DominanceGraph, direction: Direction) -> CoverArrays:
    n = graph.size
    up = direction is Direction.UPWARD
    indptr = np.zeros(n + 1, dtype=np.int64)
    src: list[int] = []
    cmask: list[int] = []
    py_rows: list[list[tuple[int, int]]] = []
    for x in range(n):
        row: list[tuple[int, int]] = []
        dominators = graph.dominator_mask(x)
        remaining = dominators
        while remaining:
            low = remaining & -remaining
            y = low.bit_length() - 1
            remaining ^= low
            if up:
                violators = graph.dominator_mask(y) & ~graph.dominator_mask(x)
            else:
                violators = graph.dominated_mask(x) & ~graph.dominated_mask(y)
            row.append((y, violators))
        row.sort()
        py_rows.append(row)
        for y, violators in row:
            src.append(y)
            cmask.append(violators)
        indptr[x + 1] = len(src)
    return CoverArrays(
        n=n,
        indptr=indptr,
        src=np.array(src, dtype=np.uint64),
        cmask=np.array(cmask, dtype=np.uint64),
        py_rows=py_rows,
    )


# --------------------------------------------------------------------------
# budget tracking


@dataclass
class BudgetTracker:
    """Mutable accounting shared by all scans of one solver operation."""

    max_subsets: int
    deadline: float | None
    started: float = field(default_factory=time.monotonic)
    examined: int = 0

    @classmethod
    def from_budget(cls, budget: SolverBudget) -> "BudgetTracker":
        return cls(
            max_subsets=budget.max_subsets,
            deadline=time.monotonic() + budget.max_seconds,
        )

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def fail(self, reason: str):
        err = ResourceError(
            f"{reason} after examining {self.examined} subsets "
            f"({self.elapsed():.2f}s)"
        )
        err.examined = self.examined
        err.elapsed = self.elapsed()
        raise err

    def allowance(self) -> int:
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.fail("wall-time budget exhausted")
        remaining = self.max_subsets - self.examined
        if remaining <= 0:
            self.fail("subset budget exhausted")
        return remaining


# --------------------------------------------------------------------------
# pure-Python reference path (also the fallback when numba is unavailable)


def _py_stable(S: int, rows, n: int) -> bool:
    for x in range(n):
        covered = False
        for y, violators in rows[x]:
            if S >> y & 1 and S & violators == 0:
                covered = True
                break
        if covered == bool(S >> x & 1):
            return False
    return True


def _py_deposit(c: int, positions) -> int:
    S = 0
    j = 0
    while c:
        if c & 1:
            S |= 1 << positions[j]
        c >>= 1
        j += 1
    return S


def _gosper_next(c: int) -> int:
    u = c & -c
    v = c + u
    return v | ((c ^ v) >> 2) // u


# --------------------------------------------------------------------------
# scan compaction
#
# A scan fixes three classes of alternatives: base members (in every candidate
# S), free positions (the scanned bits), and the rest (never in S).  When the
# free positions are not already the low bits, the kernels fall back to
# depositing each counter value bit-by-bit, which dominates the runtime.
# Compaction rebuilds the tables in a smaller bit space where the free
# positions are bits 0..k-1, so the kernels take their contiguous fast path:
#
#   * rows whose violator mask meets the base can never fire - dropped;
#   * rows whose coverer is never present can never fire - dropped;
#   * base members collapse onto one always-on bit: a base member must stay
#     uncovered, i.e. no row of any of them may fire, so their rows can be
#     unioned under a single bit whose membership test is always "inside";
#   * every never-present alternative keeps its own always-out bit, because
#     each must be covered individually (the constraints are conjunctive);
#   * violator masks shrink to their free part (never-present bits cannot
#     block a row, base bits were handled above).
#
# The compact space needs k + 1 + #outside <= n bits whenever the base is
# nonempty (it replaces >= 1 base bits with one), and exactly n bits when the
# base is empty, so it always fits the 64-bit mask width.


@dataclass
class _CompactScan:
    arrays: CoverArrays
    base: int
    positions: list          # list(range(k)): contiguous by construction
    orig_base: int
    orig_positions: list

    def restore(self, mask: int) -> int:
        """Translate a hit from the compact space back to a full-graph mask."""
        free = mask & ((1 << len(self.orig_positions)) - 1)
        return self.orig_base | _py_deposit(free, self.orig_positions)


def _arrays_from_rows(n: int, py_rows: list) -> CoverArrays:
    indptr = np.zeros(n + 1, dtype=np.int64)
    src: list[int] = []
    cmask: list[int] = []
    for x in range(n):
        for y, violators in py_rows[x]:
            src.append(y)
            cmask.append(violators)
        indptr[x + 1] = len(src)
    return CoverArrays(
        n=n,
        indptr=indptr,
        src=np.array(src, dtype=np.uint64),
        cmask=np.array(cmask, dtype=np.uint64),
        py_rows=py_rows,
    )


def compact_scan(arrays: CoverArrays, base: int,
                 positions: list) -> _CompactScan:
    k = len(positions)
    new_bit = {p: j for j, p in enumerate(positions)}
    free_mask = 0
    for p in positions:
        free_mask |= 1 << p
    vbit = k if base else None

    def convert_rows(x: int) -> list:
        rows = []
        for y, cm in arrays.py_rows[x]:
            if cm & base:
                continue
            if base >> y & 1:
                y2 = vbit
            elif free_mask >> y & 1:
                y2 = new_bit[y]
            else:
                continue
            cm2 = 0
            rem = cm & free_mask
            while rem:
                low = rem & -rem
                cm2 |= 1 << new_bit[low.bit_length() - 1]
                rem ^= low
            rows.append((y2, cm2))
        return rows

    py_rows: list[list[tuple[int, int]]] = [
        sorted(convert_rows(p)) for p in positions
    ]
    if base:
        merged: set[tuple[int, int]] = set()
        rem = base
        while rem:
            low = rem & -rem
            merged.update(convert_rows(low.bit_length() - 1))
            rem ^= low
        py_rows.append(sorted(merged))
    for x in range(arrays.n):
        if not (base >> x & 1) and not (free_mask >> x & 1):
            py_rows.append(sorted(convert_rows(x)))

    return _CompactScan(
        arrays=_arrays_from_rows(len(py_rows), py_rows),
        base=0 if vbit is None else 1 << vbit,
        positions=list(range(k)),
        orig_base=base,
        orig_positions=list(positions),
    )


# --------------------------------------------------------------------------
# numba kernels (same semantics as the Python path, uint64 throughout)


if _HAVE_NUMBA:

    @njit(cache=True)
    def _k_scan_counter(start, count, posbit, contiguous, base,
                        indptr, src, cmask, n, hits, hit_start, max_hits):
        n_hits = hit_start
        c = start
        for _ in range(count):
            if contiguous:
                S = base | c
            else:
                S = base
                cc = c
                j = 0
                while cc != U0:
                    if cc & U1 != U0:
                        S |= posbit[j]
                    cc >>= U1
                    j += 1
            stable = True
            for x in range(n):
                covered = False
                for e in range(indptr[x], indptr[x + 1]):
                    y = src[e]
                    if (S >> y) & U1 != U0 and (S & cmask[e]) == U0:
                        covered = True
                        break
                inside = (S >> np.uint64(x)) & U1 != U0
                if covered == inside:
                    stable = False
                    break
            if stable:
                if n_hits < max_hits:
                    hits[n_hits] = S
                n_hits += 1
            c += U1
        return n_hits

    @njit(cache=True)
    def _k_scan_class(comb, limit, count, posbit, contiguous, base,
                      indptr, src, cmask, n, hits, hit_start, max_hits,
                      stop_on_first):
        n_hits = hit_start
        examined = 0
        while comb < limit and examined < count:
            if contiguous:
                S = base | comb
            else:
                S = base
                cc = comb
                j = 0
                while cc != U0:
                    if cc & U1 != U0:
                        S |= posbit[j]
                    cc >>= U1
                    j += 1
            stable = True
            for x in range(n):
                covered = False
                for e in range(indptr[x], indptr[x + 1]):
                    y = src[e]
                    if (S >> y) & U1 != U0 and (S & cmask[e]) == U0:
                        covered = True
                        break
                inside = (S >> np.uint64(x)) & U1 != U0
                if covered == inside:
                    stable = False
                    break
            examined += 1
            u = comb & (U0 - comb)
            v = comb + u
            nxt = v | ((comb ^ v) >> U2) // u
            if stable:
                if n_hits < max_hits:
                    hits[n_hits] = S
                n_hits += 1
                if stop_on_first:
                    return n_hits, examined, nxt
            comb = nxt
        return n_hits, examined, comb


# --------------------------------------------------------------------------
# drivers


def check_mask(arrays: CoverArrays, mask: int) -> bool:
    return _py_stable(mask, arrays.py_rows, arrays.n)


def _overflow(n_hits: int, max_hits: int):
    raise ResourceError(
        f"found {n_hits} covering sets, more than the materialization "
        f"limit of {max_hits}"
    )


def _restored(remap: "_CompactScan | None", masks: list) -> list:
    return masks if remap is None else [remap.restore(m) for m in masks]


def scan_counter(arrays: CoverArrays, base: int, positions: list[int],
                 tracker: BudgetTracker, max_hits: int) -> list[int]:
    """Check every subset of ``positions`` (joined with ``base``) in counter
    order; return all covering masks found."""
    k = len(positions)
    total = 1 << k
    contiguous = positions == list(range(k))
    remap = None
    if not contiguous:
        remap = compact_scan(arrays, base, positions)
        arrays, base, positions = remap.arrays, remap.base, remap.positions
        contiguous = True
    if USE_JIT:
        posbit = np.array([1 << p for p in positions] or [0], dtype=np.uint64)
        hits = np.empty(max_hits, dtype=np.uint64)
        n_hits = 0
        start = 0
        while start < total:
            count = min(_JIT_CHUNK, total - start, tracker.allowance())
            n_hits = int(
                _k_scan_counter(
                    np.uint64(start), np.int64(count), posbit, contiguous,
                    np.uint64(base), arrays.indptr, arrays.src, arrays.cmask,
                    arrays.n, hits, np.int64(min(n_hits, max_hits)),
                    np.int64(max_hits),
                )
            )
            tracker.examined += count
            start += count
        if n_hits > max_hits:
            _overflow(n_hits, max_hits)
        return _restored(remap, [int(h) for h in hits[:n_hits]])

    found: list[int] = []
    n_hits = 0
    start = 0
    while start < total:
        count = min(_PY_CHUNK, total - start, tracker.allowance())
        for c in range(start, start + count):
            S = base | (c if contiguous else _py_deposit(c, positions))
            if _py_stable(S, arrays.py_rows, arrays.n):
                n_hits += 1
                if n_hits <= max_hits:
                    found.append(S)
        tracker.examined += count
        start += count
    if n_hits > max_hits:
        _overflow(n_hits, max_hits)
    return _restored(remap, found)


def scan_class(arrays: CoverArrays, base: int, positions: list[int],
               card: int, tracker: BudgetTracker, max_hits: int,
               stop_on_first: bool = False) -> list[int]:
    """Check the subsets of ``positions`` with exactly ``card`` members
    (joined with ``base``); return covering masks found.  With
    ``stop_on_first`` the scan ends at the first hit."""
    k = len(positions)
    if card > k:
        return []
    if card == 0:
        tracker.allowance()
        tracker.examined += 1
        return [base] if check_mask(arrays, base) else []
    contiguous = positions == list(range(k))
    remap = None
    if not contiguous:
        remap = compact_scan(arrays, base, positions)
        arrays, base, positions = remap.arrays, remap.base, remap.positions
        contiguous = True
    limit = 1 << k
    comb = (1 << card) - 1

    if USE_JIT:
        posbit = np.array([1 << p for p in positions], dtype=np.uint64)
        hits = np.empty(max_hits, dtype=np.uint64)
        n_hits = 0
        while comb < limit:
            count = min(_JIT_CHUNK, tracker.allowance())
            n_hits, examined, nxt = _k_scan_class(
                np.uint64(comb), np.uint64(limit), np.int64(count), posbit,
                contiguous, np.uint64(base), arrays.indptr, arrays.src,
                arrays.cmask, arrays.n, hits,
                np.int64(min(n_hits, max_hits)), np.int64(max_hits),
                stop_on_first,
            )
            n_hits = int(n_hits)
            tracker.examined += int(examined)
            comb = int(nxt)
            if stop_on_first and n_hits > 0:
                break
        if n_hits > max_hits:
            _overflow(n_hits, max_hits)
        return _restored(remap, [int(h) for h in hits[:n_hits]])

    found: list[int] = []
    n_hits = 0
    while comb < limit:
        count = min(_PY_CHUNK, tracker.allowance())
        examined = 0
        while comb < limit and examined < count:
            S = base | (comb if contiguous else _py_deposit(comb, positions))
            examined += 1
            nxt = _gosper_next(comb)
            if _py_stable(S, arrays.py_rows, arrays.n):
                n_hits += 1
                if n_hits <= max_hits:
                    found.append(S)
                if stop_on_first:
                    comb = nxt
                    tracker.examined += examined
                    return _restored(remap, found)
            comb = nxt
        tracker.examined += examined
    if n_hits > max_hits:
        _overflow(n_hits, max_hits)
    return _restored(remap, found)
