"""Maximum deletion matching: exhaustive search and duplication estimates.

For a fixed output y and input length n, the search finds
max over x in {0,1}^n of #(x, y) by sweeping the whole input space with the
vectorized pattern counter.  The duplication estimate replaces the true
maximizer with the candidate that repeats every bit of y the same number of
times; its count has the closed product form prod_l C(l*F, l)^(R_l) over the
run-length profile of y.  The ratio of the two is at most 1 because the
duplication candidate is feasible.

When len(y) does not divide n the repeat factor is fractional and three
estimates are offered: hand the leftover bits to the trailing runs, hand
them to the longest runs, or drop the integrality requirement altogether by
moving to Gamma functions.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .bitseq import (
    MAX_LEN,
    BinarySequence,
    CapExceededError,
    canonical_form,
    complement,
    reverse,
    run_length_profile,
    runs,
)
from .patcount import VECTOR_MAX_N, count_deletion_patterns, counts_for_all_inputs

# Exhaustive search sweeps 2^n inputs per output class.
SEARCH_MAX_N = VECTOR_MAX_N


class DupApproach(str, Enum):
    """How to place the leftover bits when len(y) does not divide n."""

    ASSIGN_TO_LAST = "assign-to-last"
    ASSIGN_BY_LENGTH = "assign-by-length"
    GAMMA = "gamma"


@dataclass(frozen=True)
class MdmResult:
    """One solved output: certified maximizer plus the duplication estimate.

    x_dup is None and dup_count is a float when the Gamma estimate was used;
    otherwise dup_count is the exact pattern count of the concrete candidate
    x_dup.
    """

    y: BinarySequence
    n: int
    x_star: BinarySequence
    max_count: int
    x_dup: Optional[BinarySequence]
    dup_count: Union[int, float]
    ratio: float


@dataclass(frozen=True)
class MdmTable:
    """All outputs of one (n, m) sweep, in ascending numeral order of y."""

    n: int
    m: int
    rows: list


def dup_count_formula(y: BinarySequence, F: int) -> int:
    """prod_l C(l*F, l)^(R_l) over the run-length profile of y.

    Equals #(x_dup, y) for the candidate that repeats each bit F times.
    """
    if F < 1:
        raise ValueError(f"repeat factor must be >= 1, got {F}")
    profile = run_length_profile(y)
    out = 1
    for l, r in profile.counts.items():
        out *= math.comb(l * F, l) ** r
    return out


def build_dup_sequence(y: BinarySequence, F: int) -> BinarySequence:
    """Each bit of y repeated F times, in order."""
    if F < 1:
        raise ValueError(f"repeat factor must be >= 1, got {F}")
    if F * len(y) > MAX_LEN:
        raise CapExceededError(f"duplicated length {F * len(y)} exceeds {MAX_LEN}")
    text = "".join(str(b) * F for b in y)
    return BinarySequence.from_string(text)


def approximate_dup_sequence(
    y: BinarySequence, n: int, approach: DupApproach
) -> Union[BinarySequence, float]:
    """Duplication candidate for a fractional repeat factor F = n / len(y).

    The two assignment approaches first repeat every bit floor(F) times and
    then hand the n - m*floor(F) leftover bits to whole runs, at most l extra
    bits to an l-run (so each run absorbs at most one extra copy per original
    bit).  ASSIGN_TO_LAST walks the runs from the last one backwards;
    ASSIGN_BY_LENGTH walks them longest first, ties broken by earlier
    position.  Both return a concrete length-n sequence.

    GAMMA instead returns the real-valued product with each binomial
    C(l*F, l) generalized to Gamma(l*F+1) / (Gamma(l+1) * Gamma(l*F-l+1)).
    """
    m = len(y)
    if m == 0:
        raise ValueError("cannot stretch an empty sequence")
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > MAX_LEN:
        raise CapExceededError(f"input length {n} exceeds {MAX_LEN}")
    if approach is DupApproach.GAMMA:
        F = n / m
        log_est = 0.0
        for l, r in run_length_profile(y).counts.items():
            log_est += r * (
                math.lgamma(l * F + 1)
                - math.lgamma(l + 1)
                - math.lgamma(l * F - l + 1)
            )
        return math.exp(log_est)
    base, extra = divmod(n, m)
    run_list = runs(y)
    if approach is DupApproach.ASSIGN_TO_LAST:
        order = range(len(run_list) - 1, -1, -1)
    else:
        order = sorted(range(len(run_list)), key=lambda j: (-run_list[j][1], j))
    bonus = [0] * len(run_list)
    left = extra
    for j in order:
        if left == 0:
            break
        take = min(left, run_list[j][1])
        bonus[j] = take
        left -= take
    # extra < m = sum of run lengths, so the leftover always fits
    text = "".join(str(v) * (l * base + bonus[j]) for j, (v, l) in enumerate(run_list))
    return BinarySequence.from_string(text)


def _dup_estimate(
    y: BinarySequence, n: int, approach: DupApproach
) -> tuple[Optional[BinarySequence], Union[int, float]]:
    """Duplication candidate and its count for integer or fractional factor."""
    m = len(y)
    if m == 0:
        # only the all-deleting pattern; the candidate slot still needs length n
        return BinarySequence(0, n), 1
    if n % m == 0:
        F = n // m
        return build_dup_sequence(y, F), dup_count_formula(y, F)
    if approach is DupApproach.GAMMA:
        return None, approximate_dup_sequence(y, n, approach)
    x = approximate_dup_sequence(y, n, approach)
    return x, count_deletion_patterns(x, y)


def mdm_solve(
    y: BinarySequence, n: int, approach: DupApproach = DupApproach.ASSIGN_TO_LAST
) -> MdmResult:
    """Certified maximizer of #(x, y) over x in {0,1}^n.

    Ties are broken toward the smallest numeral value of x.  The result also
    carries the duplication candidate and ratio; when len(y) divides n the
    exact product formula applies, otherwise the configured approach fills
    the estimate.
    """
    m = len(y)
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > SEARCH_MAX_N:
        raise CapExceededError(f"search capped at n <= {SEARCH_MAX_N}, got {n}")
    counts = counts_for_all_inputs(y, n)
    max_count = int(counts.max())
    x_star = BinarySequence.from_numeral(int(counts.argmax()), n)
    x_dup, dup_count = _dup_estimate(y, n, approach)
    return MdmResult(
        y=y,
        n=n,
        x_star=x_star,
        max_count=max_count,
        x_dup=x_dup,
        dup_count=dup_count,
        ratio=dup_count / max_count,
    )


def _bit_reverse(values: np.ndarray, n: int) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    out = np.zeros_like(v)
    for b in range(n):
        out = (out << 1) | ((v >> b) & 1)
    return out


def _orbit_members(y: BinarySequence) -> list[tuple[str, BinarySequence]]:
    """Distinct members of {y, ~y, rev y, ~rev y} tagged by transform."""
    out: list[tuple[str, BinarySequence]] = []
    seen = set()
    for tag, member in (
        ("i", y),
        ("c", complement(y)),
        ("r", reverse(y)),
        ("cr", complement(reverse(y))),
    ):
        if member.bits not in seen:
            seen.add(member.bits)
            out.append((tag, member))
    return out


def _solve_class(rep_text: str, n: int) -> tuple[str, int, dict]:
    """Solve one symmetry class and derive every member's tie-broken maximizer.

    The maximizer set of a transformed output is the transformed maximizer
    set, so each member's numeral-minimal x_star falls out of the same count
    vector without re-running the sweep.
    """
    y = BinarySequence.from_string(rep_text)
    counts = counts_for_all_inputs(y, n)
    max_count = int(counts.max())
    arg = np.flatnonzero(counts == max_count)
    full = (1 << n) - 1
    stars: dict[str, str] = {}
    for tag, member in _orbit_members(y):
        if tag == "i":
            best = int(arg.min())
        elif tag == "c":
            # complement maps numeral v to full - v, reversing the order
            best = full - int(arg.max())
        elif tag == "r":
            best = int(_bit_reverse(arg, n).min())
        else:
            best = full - int(_bit_reverse(arg, n).max())
        stars[member.to_string()] = BinarySequence.from_numeral(best, n).to_string()
    return rep_text, max_count, stars


def _format_checkpoint_line(rep: str, max_count: int, stars: dict) -> str:
    members = " ".join(f"{m}:{x}" for m, x in sorted(stars.items()))
    return f"{rep} {max_count} {members}"


def _parse_checkpoint(path: str, n: int, m: int) -> dict:
    """Completed classes from a checkpoint file; malformed lines are skipped."""
    done: dict[str, tuple[int, dict]] = {}
    if not os.path.exists(path):
        return done
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if len(parts) < 3:
                continue
            rep, count_text = parts[0], parts[1]
            if len(rep) != m or not count_text.isdigit():
                continue
            stars = {}
            ok = True
            for pair in parts[2:]:
                member, _, star = pair.partition(":")
                if len(member) != m or len(star) != n:
                    ok = False
                    break
                stars[member] = star
            if ok and stars:
                done[rep] = (int(count_text), stars)
    return done


def mdm_table(
    n: int,
    m: int,
    use_canonical: bool = True,
    approach: DupApproach = DupApproach.ASSIGN_TO_LAST,
    threads: int = 1,
    checkpoint_path: Optional[str] = None,
) -> MdmTable:
    """Solve every y in {0,1}^m against inputs of length n.

    One search per symmetry class when use_canonical is set (complement and
    reversal leave pattern counts unchanged), re-expanded so the table still
    carries one row per y, sorted by numeral.  A checkpoint file, when given,
    records one completed class per line and lets an interrupted sweep resume
    without changing the final table.
    """
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > SEARCH_MAX_N:
        raise CapExceededError(f"search capped at n <= {SEARCH_MAX_N}, got {n}")
    if threads < 1:
        raise ValueError("thread count must be >= 1")

    if use_canonical:
        reps: list[str] = []
        seen = set()
        for v in range(1 << m):
            rep = canonical_form(BinarySequence.from_numeral(v, m)).to_string()
            if rep not in seen:
                seen.add(rep)
                reps.append(rep)
    else:
        reps = [BinarySequence.from_numeral(v, m).to_string() for v in range(1 << m)]

    solved: dict[str, tuple[int, dict]] = {}
    if checkpoint_path:
        solved = _parse_checkpoint(checkpoint_path, n, m)
    todo = [rep for rep in reps if rep not in solved]

    checkpoint_fh = None
    if checkpoint_path:
        checkpoint_fh = open(checkpoint_path, "a", encoding="ascii")
    try:
        if threads > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for rep, max_count, stars in pool.map(
                    _solve_class, todo, [n] * len(todo), chunksize=8
                ):
                    solved[rep] = (max_count, stars)
                    if checkpoint_fh:
                        checkpoint_fh.write(
                            _format_checkpoint_line(rep, max_count, stars) + "\n"
                        )
                        checkpoint_fh.flush()
        else:
            for rep in todo:
                rep, max_count, stars = _solve_class(rep, n)
                solved[rep] = (max_count, stars)
                if checkpoint_fh:
                    checkpoint_fh.write(
                        _format_checkpoint_line(rep, max_count, stars) + "\n"
                    )
                    checkpoint_fh.flush()
    finally:
        if checkpoint_fh:
            checkpoint_fh.close()

    rows = []
    for v in range(1 << m):
        y = BinarySequence.from_numeral(v, m)
        text = y.to_string()
        rep = canonical_form(y).to_string() if use_canonical else text
        max_count, stars = solved[rep]
        x_star = BinarySequence.from_string(stars[text])
        x_dup, dup_count = _dup_estimate(y, n, approach)
        rows.append(
            MdmResult(
                y=y,
                n=n,
                x_star=x_star,
                max_count=max_count,
                x_dup=x_dup,
                dup_count=dup_count,
                ratio=dup_count / max_count,
            )
        )
    return MdmTable(n=n, m=m, rows=rows)


def _class_max(rep_text: str, n: int) -> tuple[str, int]:
    y = BinarySequence.from_string(rep_text)
    return rep_text, int(counts_for_all_inputs(y, n).max())


def sum_max_counts(n: int, m: int, threads: int = 1) -> int:
    """Sum over all y in {0,1}^m of max_x #(x, y), exactly.

    This is the log argument of the maximum-likelihood capacity bound; only
    class maxima are searched, weighted by orbit size.
    """
    if m > n:
        raise ValueError(f"output longer than input ({m} > {n})")
    if n > SEARCH_MAX_N:
        raise CapExceededError(f"search capped at n <= {SEARCH_MAX_N}, got {n}")
    weight: dict[str, int] = {}
    for v in range(1 << m):
        rep = canonical_form(BinarySequence.from_numeral(v, m)).to_string()
        weight[rep] = weight.get(rep, 0) + 1
    reps = sorted(weight)
    if threads > 1 and len(reps) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            maxima = dict(pool.map(_class_max, reps, [n] * len(reps), chunksize=8))
    else:
        maxima = dict(_class_max(rep, n) for rep in reps)
    return sum(weight[rep] * maxima[rep] for rep in reps)


def duplication_ratio(y: BinarySequence, n: int) -> Fraction:
    """Exact ratio dup_count / max_count for integer repeat factor n/len(y)."""
    m = len(y)
    if m == 0 or n % m:
        raise ValueError("repeat factor n/len(y) must be a positive integer")
    counts = counts_for_all_inputs(y, n)
    return Fraction(dup_count_formula(y, n // m), int(counts.max()))


def min_duplication_ratio(n: int, F: int) -> tuple[BinarySequence, float]:
    """Minimizing y of the duplication ratio over {0,1}^(n/F) and its ratio.

    Requires F to divide n.  Ties go to the smallest numeral y.  The ratio is
    symmetry-class invariant, so one search per class suffices.
    """
    if F < 1 or n % F:
        raise ValueError(f"factor {F} must be >= 1 and divide n = {n}")
    if n > SEARCH_MAX_N:
        raise CapExceededError(f"search capped at n <= {SEARCH_MAX_N}, got {n}")
    m = n // F
    cache: dict[str, Fraction] = {}
    best: Optional[tuple[Fraction, BinarySequence]] = None
    for v in range(1 << m):
        y = BinarySequence.from_numeral(v, m)
        rep = canonical_form(y).to_string()
        if rep not in cache:
            cache[rep] = duplication_ratio(BinarySequence.from_string(rep), n)
        gamma = cache[rep]
        if best is None or gamma < best[0]:
            best = (gamma, y)
    assert best is not None
    return best[1], float(best[0])


def flip_sequence(m: int) -> BinarySequence:
    """The alternating sequence 0101... of length m."""
    return BinarySequence.from_string("".join("01"[i % 2] for i in range(m)))


def is_alternating(y: BinarySequence) -> bool:
    """True when every run of y has length 1."""
    return len(y) > 0 and run_length_profile(y).counts == {1: len(y)}


def stirling_lower_bound(n: int, F: int) -> float:
    """Analytic floor F^(n/F) / C(n, n/F) under the minimal duplication ratio.

    Follows from bounding the flip sequence's maximal count by C(n, n - m).
    """
    if F < 1 or n % F:
        raise ValueError(f"factor {F} must be >= 1 and divide n = {n}")
    m = n // F
    return F**m / math.comb(n, m)
