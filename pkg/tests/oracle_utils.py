"""Brute-force subset-enumeration oracles used only by the tests.

These deliberately avoid the dynamic-programming recurrence: a pattern
count is obtained by materializing every size-m position subset and
comparing the selected symbols against y.  Keep it that way — the whole
point is an independent route to the same numbers.

Index conventions match the library: an integer index read big-endian is
the sequence text, i.e. symbol j of index v is bit (n-1-j) of v.
"""

from __future__ import annotations

import itertools

import numpy as np


def combo_positions(n: int, m: int) -> np.ndarray:
    """(C(n,m), m) array of kept-position subsets in ascending order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.combinations(range(n), m)), dtype=np.int64)


def oracle_counts_grid(n: int, m: int) -> np.ndarray:
    """(2^n, 2^m) matrix of #(x, y) for every pair, by subset enumeration."""
    combos = combo_positions(n, m)
    shifts = (n - 1 - combos).astype(np.int64)
    xs = np.arange(2**n, dtype=np.int64)
    nums = np.zeros((2**n, combos.shape[0]), dtype=np.int64)
    for t in range(m):
        nums += ((xs[:, None] >> shifts[None, :, t]) & 1) << (m - 1 - t)
    counts = np.zeros((2**n, 2**m), dtype=np.int64)
    for i in range(2**n):
        counts[i] = np.bincount(nums[i], minlength=2**m)
    return counts


def _half_tables(h: int) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
    """Per-mask selections over an h-symbol block, for every block value.

    Returns (values, sizes, masks_by_size) where values[mask, xh] is the
    numeral of the symbols of xh kept by mask (in symbol order), sizes[mask]
    is the popcount, and masks_by_size[k] lists the masks keeping k symbols.
    """
    xs = np.arange(2**h, dtype=np.int64)
    values = np.zeros((2**h, 2**h), dtype=np.int64)
    sizes = np.zeros(2**h, dtype=np.int64)
    for mask in range(2**h):
        kept = [j for j in range(h) if (mask >> (h - 1 - j)) & 1]
        sizes[mask] = len(kept)
        acc = np.zeros(2**h, dtype=np.int64)
        for t, j in enumerate(kept):
            acc += ((xs >> (h - 1 - j)) & 1) << (len(kept) - 1 - t)
        values[mask] = acc
    masks_by_size = [np.nonzero(sizes == k)[0] for k in range(h + 1)]
    return values, sizes, masks_by_size


def oracle_counts_pairs_split(n: int, pairs: list[tuple[int, int, int]]) -> list[int]:
    """#(x, y) for (x_numeral, m, y_numeral) pairs by split-half enumeration.

    Each deletion pattern on n symbols is exactly one (left mask, right
    mask) pair over the two halves, so counting mask pairs whose kept
    symbols spell y enumerates every pattern once.  No DP recurrence is
    involved; this is the fast enumerator for n up to 18 or so.
    """
    h = n // 2
    g = n - h
    lvalues, _, lmasks = _half_tables(h)
    rvalues, _, rmasks = _half_tables(g)
    by_m: dict[int, list[tuple[int, int, int]]] = {}
    for i, (x, m, y) in enumerate(pairs):
        by_m.setdefault(m, []).append((i, x, y))
    out = [0] * len(pairs)
    for m, group in sorted(by_m.items()):
        idx = np.array([i for i, _, _ in group])
        xv = np.array([x for _, x, _ in group], dtype=np.int64)
        yv = np.array([y for _, _, y in group], dtype=np.int64)
        xl = xv >> g
        xr = xv & ((1 << g) - 1)
        total = np.zeros(len(group), dtype=np.int64)
        for k in range(max(0, m - g), min(h, m) + 1):
            ypre = yv >> (m - k)
            ysuf = yv & ((1 << (m - k)) - 1)
            lcount = (lvalues[np.ix_(lmasks[k], xl)] == ypre[None, :]).sum(axis=0)
            rcount = (rvalues[np.ix_(rmasks[m - k], xr)] == ysuf[None, :]).sum(axis=0)
            total += lcount * rcount
        out_idx = idx
        for i, v in zip(out_idx, total):
            out[i] = int(v)
    return out


def oracle_counts_pairs(n: int, pairs: list[tuple[int, int, int]], chunk: int = 512) -> list[int]:
    """#(x, y) for (x_numeral, m, y_numeral) pairs, by subset enumeration.

    Pairs are grouped by m so each position-subset table is built once.
    """
    by_m: dict[int, list[tuple[int, int, int]]] = {}
    for i, (x, m, y) in enumerate(pairs):
        by_m.setdefault(m, []).append((i, x, y))
    out = [0] * len(pairs)
    for m, group in sorted(by_m.items()):
        combos = combo_positions(n, m)
        shifts = (n - 1 - combos).astype(np.int64)
        # keep the (batch, C(n,m)) work arrays modest for the big m
        batch = max(1, min(chunk, (1 << 22) // max(1, combos.shape[0])))
        for lo in range(0, len(group), batch):
            part = group[lo : lo + batch]
            xs = np.array([x for _, x, _ in part], dtype=np.int64)
            nums = np.zeros((len(part), combos.shape[0]), dtype=np.int64)
            for t in range(m):
                nums += ((xs[:, None] >> shifts[None, :, t]) & 1) << (m - 1 - t)
            for row, (i, _, y) in zip(nums, part):
                out[i] = int(np.count_nonzero(row == y))
    return out
