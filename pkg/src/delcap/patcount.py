"""Deletion-pattern counting.

#(x, y) is the number of deletion patterns taking x to y: binary masks over
the positions of x, of weight len(x) - len(y), whose surviving positions
spell y.  Equivalently it is the number of distinct embeddings of y as a
subsequence of x.  The scalar routines return exact Python ints; the
vectorized sweep uses int64, which holds every reachable count (the maximum
at n <= 63 is C(63, 31) < 2^63).

Two independent routes are provided on purpose: a prefix dynamic program
(`count_deletion_patterns`) and a brute-force enumerator over kept-position
subsets (`count_deletion_patterns_oracle`).  Tests cross-check one against
the other; do not merge them.
"""

from __future__ import annotations

import itertools

import numpy as np

from .bitseq import BinarySequence, CapExceededError

# Subset enumeration costs C(n, m) passes; past 20 bits it stops being a
# practical oracle.
ORACLE_MAX_N = 20

# The vectorized sweep allocates 2^n counters; 24 matches the exhaustive
# search cap.
VECTOR_MAX_N = 24


def count_deletion_patterns(x: BinarySequence, y: BinarySequence) -> int:
    """Number of deletion patterns transforming x into y.

    Rolling-row dynamic program over prefix pairs, O(len(x) * len(y)) word
    operations.  Empty y counts exactly one pattern (delete everything).
    """
    n, m = len(x), len(y)
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    # row[k] = number of embeddings of y[:k] in the processed prefix of x
    row = [0] * (m + 1)
    row[0] = 1
    for j in range(n):
        xb = x.bit(j)
        for k in range(min(j + 1, m), 0, -1):
            if y.bit(k - 1) == xb:
                row[k] += row[k - 1]
    return row[m]


def count_deletion_patterns_oracle(x: BinarySequence, y: BinarySequence) -> int:
    """Same contract as count_deletion_patterns, by brute-force enumeration.

    Walks every subset of len(y) kept positions and compares the induced
    subsequence against y.  Verification oracle only; capped at
    len(x) <= ORACLE_MAX_N.
    """
    n, m = len(x), len(y)
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > ORACLE_MAX_N:
        raise CapExceededError(f"oracle capped at n <= {ORACLE_MAX_N}, got {n}")
    target = tuple(y)
    count = 0
    for kept in itertools.combinations(range(n), m):
        if tuple(x.bit(i) for i in kept) == target:
            count += 1
    return count


def transition_probability(x: BinarySequence, y: BinarySequence, d: float) -> float:
    """W(y|x) for an i.i.d. deletion channel: #(x,y) * (1-d)^len(y) * d^(len(x)-len(y))."""
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"deletion probability {d} outside [0, 1]")
    n, m = len(x), len(y)
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    return count_deletion_patterns(x, y) * (1.0 - d) ** m * d ** (n - m)


def counts_for_all_inputs(y: BinarySequence, n: int) -> np.ndarray:
    """#(x, y) for every x in {0,1}^n at once.

    Returns an int64 array of length 2^n indexed by the numeral value of x.
    Same rolling DP as the scalar routine, with the whole input space as the
    vector lane.  This is the kernel behind the exhaustive search and the
    channel-matrix build.
    """
    m = len(y)
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > VECTOR_MAX_N:
        raise CapExceededError(f"vector sweep capped at n <= {VECTOR_MAX_N}, got {n}")
    size = 1 << n
    ybits = [y.bit(k) for k in range(m)]
    idx = np.arange(size, dtype=np.int64)
    state = np.zeros((m + 1, size), dtype=np.int64)
    state[0] = 1
    for j in range(n):
        xbit = (idx >> (n - 1 - j)) & 1
        for k in range(min(j + 1, m), 0, -1):
            mask = xbit == ybits[k - 1]
            np.add(state[k], state[k - 1], out=state[k], where=mask)
    return state[m]
