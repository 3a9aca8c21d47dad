"""Tests for the exhaustive search and the duplication heuristics."""

import math
import random
from fractions import Fraction

import pytest

from delcap import (
    BinarySequence,
    CapExceededError,
    DupApproach,
    approximate_dup_sequence,
    build_dup_sequence,
    count_deletion_patterns,
    counts_for_all_inputs,
    dup_count_formula,
    duplication_ratio,
    flip_sequence,
    is_alternating,
    mdm_solve,
    mdm_table,
    min_duplication_ratio,
    stirling_lower_bound,
    sum_max_counts,
)

# frozen by two independent routes: the vectorized sweep and per-pair
# subset enumeration, cross-checked under reversal/complement symmetry
SMALL_TABLE = {
    "0000": 70,
    "0001": 40,
    "0010": 24,
    "0011": 36,
    "0100": 24,
    "0101": 16,
    "0110": 24,
    "0111": 40,
}


def _seq(text):
    return BinarySequence.from_string(text)


def test_solve_worked_example():
    r = mdm_solve(_seq("0101"), 8)
    assert r.max_count == 16
    assert r.x_star.to_string() == "00101011"
    assert r.x_dup.to_string() == "00110011"
    assert r.dup_count == 16
    assert r.ratio == 1.0


def test_small_table_frozen_counts():
    table = mdm_table(8, 4)
    assert len(table.rows) == 16
    for row in table.rows:
        text = row.y.to_string()
        rep = min(
            text,
            text[::-1],
            text.translate(str.maketrans("01", "10")),
            text.translate(str.maketrans("01", "10"))[::-1],
        )
        assert row.max_count == SMALL_TABLE[rep]
        assert row.ratio == 1.0
        assert count_deletion_patterns(row.x_star, row.y) == row.max_count


def test_x_star_is_smallest_numeral_argmax():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(2, 11)
        m = rng.randint(1, n)
        y = BinarySequence.from_numeral(rng.getrandbits(m), m)
        r = mdm_solve(y, n)
        counts = counts_for_all_inputs(y, n)
        assert r.max_count == counts.max()
        assert r.x_star.numeral() == int(counts.argmax())


def test_dup_count_formula_and_sequence():
    y = _seq("0101010")
    x = build_dup_sequence(y, 2)
    assert x.to_string() == "00110011001100"
    assert dup_count_formula(y, 2) == 128
    assert count_deletion_patterns(x, y) == 128
    # two runs of unequal length
    y2 = _seq("011")
    assert build_dup_sequence(y2, 3).to_string() == "000111111"
    assert dup_count_formula(y2, 3) == math.comb(3, 1) * math.comb(6, 2)


def test_dup_sequence_cap():
    with pytest.raises(CapExceededError):
        build_dup_sequence(BinarySequence(0, 32), 3)


def test_dup_count_matches_direct_count():
    rng = random.Random(32)
    for _ in range(60):
        m = rng.randint(1, 7)
        F = rng.randint(1, 63 // m)
        y = BinarySequence.from_numeral(rng.getrandbits(m), m)
        x = build_dup_sequence(y, F)
        assert count_deletion_patterns(x, y) == dup_count_formula(y, F)


def test_approach_worked_examples():
    y = _seq("010001")
    to_last = approximate_dup_sequence(y, 15, DupApproach.ASSIGN_TO_LAST)
    by_length = approximate_dup_sequence(y, 15, DupApproach.ASSIGN_BY_LENGTH)
    assert to_last.to_string() == "001100000000111"
    assert by_length.to_string() == "001100000000011"


def test_approaches_agree_for_integer_stretch():
    rng = random.Random(33)
    for _ in range(30):
        m = rng.randint(1, 7)
        F = rng.randint(1, 63 // m)
        y = BinarySequence.from_numeral(rng.getrandbits(m), m)
        want = build_dup_sequence(y, F)
        for approach in (DupApproach.ASSIGN_TO_LAST, DupApproach.ASSIGN_BY_LENGTH):
            assert approximate_dup_sequence(y, F * m, approach) == want


def test_approximate_sequences_preserve_output():
    rng = random.Random(34)
    for _ in range(60):
        m = rng.randint(1, 10)
        n = rng.randint(m, min(40, 4 * m))
        y = BinarySequence.from_numeral(rng.getrandbits(m), m)
        for approach in (DupApproach.ASSIGN_TO_LAST, DupApproach.ASSIGN_BY_LENGTH):
            x = approximate_dup_sequence(y, n, approach)
            assert len(x) == n
            assert count_deletion_patterns(x, y) >= 1


def test_gamma_approach_fractional_value():
    table = mdm_table(7, 3, approach=DupApproach.GAMMA)
    row = {r.y.to_string(): r for r in table.rows}["010"]
    # three unit runs, each contributing Gamma(F+1)/(Gamma(2)Gamma(F)) = F
    assert row.x_dup is None
    assert row.dup_count == pytest.approx((7 / 3) ** 3, rel=1e-12)


def test_gamma_approach_integer_stretch_is_exact():
    ta = mdm_table(8, 4, approach=DupApproach.GAMMA)
    tb = mdm_table(8, 4, approach=DupApproach.ASSIGN_TO_LAST)
    for ra, rb in zip(ta.rows, tb.rows):
        assert ra.x_dup == rb.x_dup
        assert ra.dup_count == rb.dup_count


def test_table_canonical_matches_full_enumeration():
    full = mdm_table(9, 4, use_canonical=False)
    folded = mdm_table(9, 4, use_canonical=True)
    assert [(r.y, r.x_star, r.max_count, r.dup_count) for r in full.rows] == [
        (r.y, r.x_star, r.max_count, r.dup_count) for r in folded.rows
    ]


def test_table_threads_equivalence():
    one = mdm_table(11, 5, threads=1)
    four = mdm_table(11, 5, threads=4)
    assert [(r.y, r.x_star, r.max_count) for r in one.rows] == [
        (r.y, r.x_star, r.max_count) for r in four.rows
    ]


def test_table_rows_sorted_and_complete():
    table = mdm_table(10, 4)
    assert [r.y.numeral() for r in table.rows] == list(range(16))
    assert table.n == 10 and table.m == 4


def test_search_cap():
    with pytest.raises(CapExceededError):
        mdm_table(25, 4)


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "progress.ckpt"
    reference = mdm_table(10, 5, checkpoint_path=str(path))
    lines = path.read_text().splitlines()
    assert len(lines) > 4
    # keep half the finished classes, then resume
    path.write_text("\n".join(lines[: len(lines) // 2]) + "\n")
    resumed = mdm_table(10, 5, checkpoint_path=str(path))
    assert [(r.y, r.x_star, r.max_count) for r in reference.rows] == [
        (r.y, r.x_star, r.max_count) for r in resumed.rows
    ]
    assert sorted(path.read_text().splitlines()) == sorted(lines)


def test_checkpoint_ignores_malformed_lines(tmp_path):
    path = tmp_path / "progress.ckpt"
    path.write_text("not a checkpoint line\n\n0101 999\n")
    table = mdm_table(8, 4, checkpoint_path=str(path))
    for row in table.rows:
        assert row.max_count == SMALL_TABLE[
            min(
                row.y.to_string(),
                row.y.to_string()[::-1],
                row.y.to_string().translate(str.maketrans("01", "10")),
                row.y.to_string().translate(str.maketrans("01", "10"))[::-1],
            )
        ]


def test_duplication_ratio_exact_fraction():
    assert duplication_ratio(_seq("0101010"), 14) == Fraction(128, 204)
    assert duplication_ratio(_seq("0000"), 8) == Fraction(1)


def test_min_duplication_ratio():
    y_min, gamma = min_duplication_ratio(14, 2)
    assert y_min.to_string() == "0101010"
    assert gamma == pytest.approx(128 / 204, rel=0, abs=1e-15)
    # all ratios are 1 here, so the smallest-numeral sequence wins the tie
    y8, g8 = min_duplication_ratio(8, 2)
    assert y8.to_string() == "0000"
    assert g8 == 1.0


def test_flip_sequence_and_alternating():
    assert flip_sequence(5).to_string() == "01010"
    assert is_alternating(_seq("0101"))
    assert is_alternating(_seq("1010"))
    assert is_alternating(_seq("0"))
    assert not is_alternating(_seq("0110"))


def test_stirling_lower_bound_holds():
    for n in (8, 10, 12, 14):
        _, gamma = min_duplication_ratio(n, 2)
        floor = stirling_lower_bound(n, 2)
        assert floor == pytest.approx(2 ** (n // 2) / math.comb(n, n // 2), rel=1e-12)
        assert floor <= gamma + 1e-12


def test_sum_max_counts():
    assert sum_max_counts(8, 4) == 548
    table = mdm_table(10, 5)
    assert sum_max_counts(10, 5) == sum(r.max_count for r in table.rows)
