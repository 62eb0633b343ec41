"""Compositions, set partitions and the block/gap encodings.

Compositions are plain tuples of positive ints.  A set partition of
{1..n} is stored as its restricted-growth sequence: a tuple whose i-th
entry is the (1-based) label of the block holding element i+1, blocks
being numbered in order of appearance.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]
SetPartition = tuple[int, ...]

DEFAULT_PARTITION_LIMIT = 12


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidSequenceError(ValueError):
    """An increment sequence does not start with a 1."""


def check_composition(c: Sequence[int]) -> Composition:
    c = tuple(int(x) for x in c)
    if not c or any(x < 1 for x in c):
        raise DomainError(f"not a composition: {c!r}")
    return c


def _same_space(y: Sequence[int], z: Sequence[int]) -> None:
    if len(y) != len(z) or sum(y) != sum(z):
        raise DomainError(f"{tuple(y)} and {tuple(z)} are not in the same S(n,k)")


def enumerate_compositions(n: int, k: int) -> list[Composition]:
    """All compositions of n into k parts, in decreasing dictionary order."""
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    out: list[Composition] = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for first in range(remaining - slots + 1, 0, -1):
            prefix.append(first)
            rec(prefix, remaining - first, slots - 1)
            prefix.pop()

    rec([], n, k)
    return out


def all_compositions(n: int) -> list[Composition]:
    """Every composition of n, grouped by k = 1..n."""
    return [c for k in range(1, n + 1) for c in enumerate_compositions(n, k)]


def enumerate_set_partitions(n: int, limit: int | None = DEFAULT_PARTITION_LIMIT) -> Iterator[SetPartition]:
    """Yield every partition of {1..n} once, as a restricted-growth sequence.

    ``limit`` guards against accidentally walking Bell(n) for large n;
    pass ``None`` to lift it.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if limit is not None and n > limit:
        raise DomainError(f"n={n} exceeds the enumeration limit {limit}")
    seq = [1] * n
    maxes = [1] * n  # maxes[i] = max(seq[:i+1])
    while True:
        yield tuple(seq)
        # rightmost position that can still be incremented
        i = n - 1
        while i > 0 and seq[i] > maxes[i - 1]:
            i -= 1
        if i == 0:
            return
        seq[i] += 1
        maxes[i] = max(maxes[i - 1], seq[i])
        for j in range(i + 1, n):
            seq[j] = 1
            maxes[j] = maxes[i]


def is_restricted_growth(seq: Sequence[int]) -> bool:
    top = 0
    for label in seq:
        if label < 1 or label > top + 1:
            return False
        top = max(top, label)
    return len(seq) > 0


def from_blocks(blocks: Iterable[Iterable[int]]) -> SetPartition:
    """Build the restricted-growth sequence of a partition given as blocks of {1..n}."""
    blocks = [sorted(b) for b in blocks]
    if any(not b for b in blocks):
        raise DomainError("empty block")
    blocks.sort(key=lambda b: b[0])
    n = sum(len(b) for b in blocks)
    seq = [0] * n
    for label, block in enumerate(blocks, start=1):
        for x in block:
            if not 1 <= x <= n or seq[x - 1]:
                raise DomainError(f"blocks do not partition 1..{n}")
            seq[x - 1] = label
    return tuple(seq)


def to_blocks(p: SetPartition) -> list[list[int]]:
    blocks: list[list[int]] = [[] for _ in range(max(p))]
    for element, label in enumerate(p, start=1):
        blocks[label - 1].append(element)
    return blocks


def block_sizes(p: SetPartition) -> Composition:
    sizes = [0] * max(p)
    for label in p:
        sizes[label - 1] += 1
    return tuple(sizes)


def increments(p: SetPartition) -> tuple[int, ...]:
    bits = []
    top = 0
    for label in p:
        bits.append(1 if label > top else 0)
        top = max(top, label)
    return tuple(bits)


def gap_encode(bits: Sequence[int]) -> Composition:
    """Distances between consecutive 1s, closing with n+1 minus the last 1's position."""
    if not bits or bits[0] != 1:
        raise InvalidSequenceError(f"increment sequence must start with 1: {tuple(bits)}")
    if any(b not in (0, 1) for b in bits):
        raise InvalidSequenceError(f"increment sequence must be binary: {tuple(bits)}")
    ones = [i for i, b in enumerate(bits, start=1) if b == 1]
    ones.append(len(bits) + 1)
    return tuple(b - a for a, b in zip(ones, ones[1:]))


def gap_decode(d: Sequence[int]) -> tuple[int, ...]:
    d = check_composition(d)
    bits: list[int] = []
    for gap in d:
        bits.append(1)
        bits.extend([0] * (gap - 1))
    return tuple(bits)


def prefix_sums(c: Sequence[int]) -> list[int]:
    out, total = [], 0
    for x in c:
        total += x
        out.append(total)
    return out


def partial_order_geq(y: Sequence[int], z: Sequence[int]) -> bool:
    """Prefix-sum dominance: every prefix sum of y is at least that of z."""
    _same_space(y, z)
    return all(a >= b for a, b in zip(prefix_sums(y), prefix_sums(z)))


def dict_order_greater(y: Sequence[int], z: Sequence[int]) -> bool:
    """Strict lexicographic comparison within one S(n,k)."""
    _same_space(y, z)
    return tuple(y) > tuple(z)


def count_partitions_with_sizes(b: Sequence[int]) -> int:
    """Number of partitions of {1..n} whose ordered block sizes are b.

    Block i takes the smallest unused element plus b_i - 1 of the others.
    """
    b = check_composition(b)
    remaining = sum(b)
    total = 1
    for size in b:
        total *= comb(remaining - 1, size - 1)
        remaining -= size
    return total
