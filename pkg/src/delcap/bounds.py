"""Capacity bound evaluators.

Closed forms for the erasure and flip channels, the finite-n
maximum-likelihood bound for the deletion channel (exact search or
duplication estimates), the explicit closed-form approximation built from
run-length statistics, and the golden-ratio reference curve.  Bound values
are bits per symbol throughout; pattern counts stay exact integers until the
final log.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .bitseq import BinarySequence, run_length_profile
from .mdm import DupApproach, MdmTable, sum_max_counts

# ceil(n * p) snaps to the nearest integer within this slack so that
# grid-aligned products like 10 * 0.3 do not ceil one step too far.
CEIL_SNAP = 1e-9

_TWO_PI_OVER_E = 2.0 * math.pi / math.e
_GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

FINITE_CHECK_MAX_N = 60
DUP_BOUND_MAX_N = 63


class DegenerateOutputError(ValueError):
    """The typical output length rounded down to zero for this (n, d)."""


class BoundKind(str, Enum):
    BEC_CLOSED = "bec_closed"
    BSC_CLOSED = "bsc_closed"
    BDC_ML_RAW = "bdc_ml_raw"
    BDC_ML_ADJUSTED = "bdc_ml_adjusted"
    BDC_DUP_APPROX = "bdc_dup_approx"
    EXPLICIT_APPROX = "explicit_approx"
    REFERENCE_GOLDEN = "reference_golden"
    TRIVIAL_ONE_MINUS_D = "trivial_one_minus_d"
    BAA_PROXY = "baa_proxy"
    DOBRUSHIN_LOWER = "dobrushin_lower"


@dataclass(frozen=True)
class BoundPoint:
    """One evaluated bound: channel parameter d, block length n (0 for
    closed-form/asymptotic kinds), value in bits per symbol."""

    d: float
    n: int
    value: float
    kind: BoundKind
    approach: Optional[DupApproach] = None

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0:
            raise ValueError(f"parameter {self.d} outside [0, 1]")
        if not math.isfinite(self.value):
            raise ValueError("bound value must be finite")
        if self.kind is BoundKind.TRIVIAL_ONE_MINUS_D and self.value != 1.0 - self.d:
            raise ValueError("trivial bound must equal 1 - d exactly")


@dataclass(frozen=True)
class BoundCurve:
    """Bound points sampled over a d-grid, strictly increasing in d."""

    points: list
    kind: BoundKind
    n: int
    grid_step: float = 0.0
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        ds = [p.d for p in self.points]
        if any(b <= a for a, b in zip(ds, ds[1:])):
            raise ValueError("curve points must be strictly increasing in d")


def _ceil_snap(value: float) -> int:
    return math.ceil(value - CEIL_SNAP)


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _check_open_unit(p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ValueError(f"parameter {p} outside (0, 1)")


def bec_bound(p: float) -> float:
    """Erasure channel: the ML bound is tight and equals capacity 1 - p."""
    _check_open_unit(p)
    return 1.0 - p


def bsc_bound(p: float) -> float:
    """Flip channel: the ML bound is tight and equals capacity 1 - h(p)."""
    _check_open_unit(p)
    return 1.0 - binary_entropy(p)


def bec_finite_n_check(n: int, p: float) -> float:
    """Finite-n ML bound for the erasure channel via closed-form set sizes.

    With k = ceil(n*p) erasures the bound is (1/n) log 2^(n-k) = (n-k)/n,
    computed as 1 - k/n so that grid-aligned p reproduces 1 - p bit for bit.
    """
    if not 1 <= n <= FINITE_CHECK_MAX_N:
        raise ValueError(f"block length {n} outside [1, {FINITE_CHECK_MAX_N}]")
    _check_open_unit(p)
    k = _ceil_snap(n * p)
    return 1.0 - k / n


def bsc_finite_n_check(n: int, p: float) -> float:
    """Finite-n ML bound for the flip channel: (1/n) log(2^n / C(n, ceil(np)))."""
    if not 1 <= n <= FINITE_CHECK_MAX_N:
        raise ValueError(f"block length {n} outside [1, {FINITE_CHECK_MAX_N}]")
    _check_open_unit(p)
    k = _ceil_snap(n * p)
    return 1.0 - math.log2(math.comb(n, k)) / n


def typical_output_length(n: int, d: float) -> int:
    """m = ceil(n * (1 - d)); raises when every bit is typically deleted."""
    _check_open_unit(d)
    m = _ceil_snap(n * (1.0 - d))
    if m <= 0:
        raise DegenerateOutputError(
            f"typical output length is 0 at n = {n}, d = {d}"
        )
    return m


def bdc_ml_bound_n(
    n: int,
    d: float,
    table: Optional[MdmTable] = None,
    threads: int = 1,
) -> tuple[float, float]:
    """Finite-n ML bound for the deletion channel as (raw, adjusted).

    raw = (1/n) log2 sum over y in {0,1}^m of max_x #(x, y) with
    m = ceil(n(1-d)); adjusted subtracts (1/n) log2 C(n, m), the finite-n
    counterpart of the asymptotic entropy term, and never exceeds
    1 - d + log2(n+1)/n.  A precomputed table for the same (n, m) short-cuts
    the search.
    """
    m = typical_output_length(n, d)
    if table is not None:
        if table.n != n or table.m != m:
            raise ValueError(
                f"table is for (n={table.n}, m={table.m}), need (n={n}, m={m})"
            )
        total = sum(row.max_count for row in table.rows)
    else:
        total = sum_max_counts(n, m, threads=threads)
    log_total = math.log2(total)
    raw = log_total / n
    adjusted = (log_total - math.log2(math.comb(n, m))) / n
    return raw, adjusted


def _dup_sum_integer(m: int, F: int):
    """sum over y in {0,1}^m of prod_l C(l*F, l)^(R_l), exactly.

    Splitting off the final run gives g(t) = sum_l C(l*F, l) g(t-l); the
    factor 2 counts the starting bit, after which run values are forced.
    """
    c = [0] + [math.comb(l * F, l) for l in range(1, m + 1)]
    g = [0] * (m + 1)
    g[0] = 1
    for t in range(1, m + 1):
        g[t] = sum(c[l] * g[t - l] for l in range(1, t + 1))
    return 2 * g[m]


def _dup_sum_gamma(m: int, F: float) -> float:
    """Same recurrence with the Gamma generalization of each binomial."""
    c = [0.0] * (m + 1)
    for l in range(1, m + 1):
        c[l] = math.exp(
            math.lgamma(l * F + 1) - math.lgamma(l + 1) - math.lgamma(l * F - l + 1)
        )
    g = [0.0] * (m + 1)
    g[0] = 1.0
    for t in range(1, m + 1):
        g[t] = sum(c[l] * g[t - l] for l in range(1, t + 1))
    return 2.0 * g[m]


def _dup_sum_assign_to_last(m: int, base: int, extra: int):
    """Trailing-runs assignment summed over all y, exactly.

    Peeling runs from the end keeps the handout deterministic: the final run
    takes min(left, l) of the leftover bits, so the state is (remaining
    length, leftover bits).  A blown-up run of length l*base + e matches its
    l-run in C(l*base + e, l) ways, and the product over runs is the pattern
    count of the assembled candidate.
    """
    h = [[0] * (extra + 1) for _ in range(m + 1)]
    h[0][0] = 1
    for t in range(1, m + 1):
        for r in range(extra + 1):
            acc = 0
            for l in range(1, t + 1):
                e = min(r, l)
                acc += math.comb(l * base + e, l) * h[t - l][r - e]
            h[t][r] = acc
    return 2 * h[m][extra]


def _partitions(m: int):
    """Non-increasing positive partitions of m."""
    stack: list[int] = []

    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield tuple(stack)
            return
        for part in range(min(cap, remaining), 0, -1):
            stack.append(part)
            yield from rec(remaining - part, part)
            stack.pop()

    yield from rec(m, m)


def _dup_sum_assign_by_length(m: int, base: int, extra: int):
    """Longest-runs assignment summed over all y, exactly.

    The handout depends only on the sorted run lengths, so group sequences
    by run-length partition: a partition with k parts and multiplicities a_l
    covers 2 * k! / prod(a_l!) sequences.
    """
    total = 0
    for parts in _partitions(m):
        left = extra
        weight = 1
        for l in parts:  # already non-increasing
            e = min(left, l)
            left -= e
            weight *= math.comb(l * base + e, l)
        arrangements = math.factorial(len(parts))
        mult: dict[int, int] = {}
        for l in parts:
            mult[l] = mult.get(l, 0) + 1
        for a in mult.values():
            arrangements //= math.factorial(a)
        total += 2 * arrangements * weight
    return total


def bdc_dup_bound_n(
    n: int, d: float, approach: DupApproach = DupApproach.GAMMA
) -> float:
    """Finite-n deletion bound with the max replaced by the duplication estimate.

    No exhaustive search is involved, so this evaluates up to n = 63.  For
    integer repeat factors all approaches coincide with the exact product
    formula; otherwise the chosen approach fills the gap.
    """
    if not 1 <= n <= DUP_BOUND_MAX_N:
        raise ValueError(f"block length {n} outside [1, {DUP_BOUND_MAX_N}]")
    m = typical_output_length(n, d)
    base, extra = divmod(n, m)
    if extra == 0:
        total = _dup_sum_integer(m, base)
    elif approach is DupApproach.GAMMA:
        total = _dup_sum_gamma(m, n / m)
    elif approach is DupApproach.ASSIGN_TO_LAST:
        total = _dup_sum_assign_to_last(m, base, extra)
    else:
        total = _dup_sum_assign_by_length(m, base, extra)
    return math.log2(total) / n


def mu_d(y: BinarySequence, d: float) -> float:
    """(1/2) sum_l R_l ln((2 pi / e)^2 * d * l) over the run profile of y."""
    _check_open_unit(d)
    total = 0.0
    for l, r in run_length_profile(y).counts.items():
        total += r * math.log(_TWO_PI_OVER_E**2 * d * l)
    return 0.5 * total


def expected_runs(m: int, ell: int) -> float:
    """Mean number of ell-runs in a uniform length-m sequence: m / 2^(ell+1).

    This is the infinite-sequence rate; see expected_runs_exact for the
    boundary-corrected value.
    """
    if not 1 <= ell <= m:
        raise ValueError(f"run length {ell} outside [1, {m}]")
    return m / 2 ** (ell + 1)


def expected_runs_exact(m: int, ell: int) -> float:
    """Exact mean number of ell-runs in a uniform length-m sequence.

    Maximal runs at the two boundaries are half as constrained as interior
    ones, which lifts the rate to (m - ell + 3) / 2^(ell+1) for ell < m; the
    two constant sequences give 2^(1-m) at ell = m.
    """
    if not 1 <= ell <= m:
        raise ValueError(f"run length {ell} outside [1, {m}]")
    if ell == m:
        return 2.0 ** (1 - m)
    return (m - ell + 3) / 2 ** (ell + 1)


def _psi_constant() -> float:
    # terms past l = 64 are below 2^-64 * ln(8 pi / e) < 1e-17, beyond double
    # resolution of the ~1.09 total
    total = 0.0
    for l in range(1, 65):
        total += math.log(_TWO_PI_OVER_E * math.sqrt(l)) / 2**l
    return total


PSI_CONSTANT = _psi_constant()


def psi(d: float) -> float:
    """(1/2) log2 d plus the run-length series constant 1.09179...

    The constant term sum_l ln((2 pi / e) sqrt(l)) / 2^l is a natural-log
    series; the d term is in bits.  The mix is deliberate and matches the
    explicit approximation this feeds (psi(1) is exactly the constant).
    """
    if not 0.0 < d <= 1.0:
        raise ValueError(f"parameter {d} outside (0, 1]")
    return 0.5 * math.log2(d) + PSI_CONSTANT


def explicit_approx(d: float) -> float:
    """Closed-form capacity approximation 1 - d - (1/2) psi(d) (1 - d).

    Stated for d >= 1/2; evaluable below that with a warning.  Assumes the
    duplication estimate is asymptotically tight.
    """
    if not 0.0 < d <= 1.0:
        raise ValueError(f"parameter {d} outside (0, 1]")
    if d < 0.5:
        warnings.warn(
            "explicit approximation is stated for d >= 1/2", stacklevel=2
        )
    return 1.0 - d - 0.5 * psi(d) * (1.0 - d)


def reference_golden_bound(d: float) -> float:
    """Golden-ratio comparison curve: 1 - d log2(4/phi) below d = 1/2,
    (1-d) log2(phi) at and above it; the branches agree at 1/2."""
    _check_open_unit(d)
    if d < 0.5:
        return 1.0 - d * math.log2(4.0 / _GOLDEN)
    return (1.0 - d) * math.log2(_GOLDEN)
