"""Packed binary sequences and run-length profiles.

A sequence holds up to 63 bits in a single Python int, with bit i of the
word storing symbol i (low bits first).  The textual form is the usual
left-to-right string of '0'/'1': symbol 0 is the leftmost character.

All orderings in this package (table row order, orbit minima, tie-breaking
between maximizers) compare the textual form read as a binary numeral, so
"0101" < "1010".  The numeral is the bit-reversal of the packed word; the
packing order itself never leaks into any output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_LEN = 63


class CapExceededError(ValueError):
    """A hard size cap was exceeded (sequence length, search width, matrix size)."""


@dataclass(frozen=True)
class BinarySequence:
    """Fixed-length bit sequence packed into one machine word.

    bits above position length-1 must be zero; length 0 is the empty
    sequence (a fully deleted channel output).
    """

    bits: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= MAX_LEN:
            raise CapExceededError(
                f"sequence length {self.length} outside [0, {MAX_LEN}]"
            )
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits above position length-1 must be zero")

    @classmethod
    def from_string(cls, text: str) -> "BinarySequence":
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid symbol {ch!r} in sequence string")
        return cls(bits, len(text))

    @classmethod
    def from_numeral(cls, value: int, length: int) -> "BinarySequence":
        """Sequence whose textual form is `value` written in binary, `length` wide."""
        if value < 0 or value >> length:
            raise ValueError(f"numeral {value} does not fit in {length} bits")
        bits = 0
        for i in range(length):
            if (value >> (length - 1 - i)) & 1:
                bits |= 1 << i
        return cls(bits, length)

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def numeral(self) -> int:
        """Textual form read as a binary numeral; basis of every ordering."""
        v = 0
        for i in range(self.length):
            v = (v << 1) | self.bit(i)
        return v

    def to_string(self) -> str:
        return "".join("01"[self.bit(i)] for i in range(self.length))

    def __str__(self) -> str:
        return self.to_string()

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return (self.bit(i) for i in range(self.length))


@dataclass(frozen=True)
class RunLengthProfile:
    """Counts of maximal runs: counts[l] is the number of l-runs.

    Satisfies sum(l * counts[l]) == total_len.
    """

    counts: dict
    total_len: int

    def __post_init__(self):
        if sum(l * r for l, r in self.counts.items()) != self.total_len:
            raise ValueError("run lengths do not add up to the sequence length")
        for l, r in self.counts.items():
            if r < 0 or not 1 <= l <= self.total_len:
                raise ValueError(f"invalid run-length entry {l}: {r}")


def runs(y: BinarySequence) -> list[tuple[int, int]]:
    """Maximal runs of y in positional order as (bit value, run length) pairs."""
    out: list[tuple[int, int]] = []
    i = 0
    while i < len(y):
        j = i
        while j < len(y) and y.bit(j) == y.bit(i):
            j += 1
        out.append((y.bit(i), j - i))
        i = j
    return out


def run_length_profile(y: BinarySequence) -> RunLengthProfile:
    """Multiset of maximal-run lengths of y."""
    counts: dict[int, int] = {}
    for _, l in runs(y):
        counts[l] = counts.get(l, 0) + 1
    return RunLengthProfile(counts, len(y))


def complement(x: BinarySequence) -> BinarySequence:
    """Every bit flipped, same length."""
    mask = (1 << x.length) - 1
    return BinarySequence(x.bits ^ mask, x.length)


def reverse(x: BinarySequence) -> BinarySequence:
    """Bit order reversed, same length."""
    bits = 0
    for i in range(x.length):
        if x.bit(i):
            bits |= 1 << (x.length - 1 - i)
    return BinarySequence(bits, x.length)


def canonical_form(y: BinarySequence) -> BinarySequence:
    """Numeral-minimal member of the orbit {y, ~y, rev y, ~rev y}; idempotent.

    Pattern counts are invariant under complement and reversal, so this orbit
    is the symmetry class the search modules reduce over.
    """
    orbit = [y, complement(y), reverse(y), complement(reverse(y))]
    return min(orbit, key=BinarySequence.numeral)


def all_sequences(length: int) -> Iterator[BinarySequence]:
    """All sequences of the given length in ascending numeral order."""
    for v in range(1 << length):
        yield BinarySequence.from_numeral(v, length)
