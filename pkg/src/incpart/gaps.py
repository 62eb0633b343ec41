"""Gap representations: binary sequences whose gaps between 1s are
distributed like the unordered block sizes of a partition.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import Composition, DomainError, count_partitions_with_sizes, gap_decode, gap_encode
from .laws import PartitionLaw, _complete_table, forward_map, product_law

Multiset = tuple[int, ...]  # sorted descending


def canonical(parts: Sequence[int]) -> Multiset:
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True, init=False)
class BinarySequenceLaw:
    """Law of (Y_1..Y_n) with Y_1 = 1, keyed by gap encoding like an increment law."""

    n: int
    table: dict[Composition, Fraction]

    def __init__(self, n: int, table, fill_missing: bool = False):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", _complete_table(n, table, fill_missing))

    @classmethod
    def independent(cls, v: Sequence) -> "BinarySequenceLaw":
        v = [Fraction(x) for x in v]
        if not v or v[0] != 1:
            raise DomainError("first marginal must be 1")
        if any(not 0 <= x <= 1 for x in v):
            raise DomainError("marginals must lie in [0, 1]")
        return cls(len(v), product_law(len(v), v))

    @classmethod
    def deterministic(cls, bits: Sequence[int]) -> "BinarySequenceLaw":
        return cls(len(bits), {gap_encode(bits): 1}, fill_missing=True)


def gap_size_distribution(y: BinarySequenceLaw) -> dict[Multiset, Fraction]:
    out: dict[Multiset, Fraction] = {}
    for d, v in y.table.items():
        key = canonical(d)
        out[key] = out.get(key, Fraction(0)) + v
    return {m: v for m, v in sorted(out.items(), reverse=True) if v}


def block_size_distribution(p: PartitionLaw) -> dict[Multiset, Fraction]:
    out: dict[Multiset, Fraction] = {}
    for b, v in p.table.items():
        key = canonical(b)
        out[key] = out.get(key, Fraction(0)) + v * count_partitions_with_sizes(b)
    return {m: v for m, v in sorted(out.items(), reverse=True) if v}


def partial_sum_distributions(table: dict[Composition, Fraction], n: int) -> list[list[Fraction]]:
    """dists[m-1][s] = P(first m bits contain exactly s ones), for m = 1..n."""
    dists = [[Fraction(0)] * (m + 1) for m in range(1, n + 1)]
    for d, v in table.items():
        if not v:
            continue
        ones = 0
        for m, bit in enumerate(gap_decode(d), start=1):
            ones += bit
            dists[m - 1][ones] += v
    return dists


@dataclass
class PartialSumReport:
    n: int
    block_counts: list[list[Fraction]]  # from the partition's increments
    sequence_counts: list[list[Fraction]]  # from Y
    mismatches: list[int] = field(default_factory=list)

    @property
    def first_mismatch(self) -> int | None:
        return self.mismatches[0] if self.mismatches else None


def verify_partial_sum_identity(p: PartitionLaw, y: BinarySequenceLaw) -> tuple[bool, PartialSumReport]:
    """Compare, for each m <= n, the law of the number of blocks of the
    partition restricted to {1..m} with the law of Y_1 + ... + Y_m.
    """
    if p.n != y.n:
        raise DomainError(f"laws on different n: {p.n} and {y.n}")
    x = partial_sum_distributions(forward_map(p).table, p.n)
    z = partial_sum_distributions(y.table, y.n)
    bad = [m for m in range(1, p.n + 1) if x[m - 1] != z[m - 1]]
    return not bad, PartialSumReport(p.n, x, z, bad)


def marginals_from_partial_sums(dists: list[list[Fraction]]) -> list[Fraction]:
    """u_m = E[S_m] - E[S_{m-1}]; the marginals of independent bits are
    determined by the partial-sum laws this way."""
    means = [sum(s * v for s, v in enumerate(dist)) for dist in dists]
    return [means[0]] + [b - a for a, b in zip(means, means[1:])]


def check_gap_representation(law_for_n, seq_for_n, n_max: int) -> tuple[int | None, str]:
    """Check block sizes vs gaps and the partial-sum identity for n = 1..n_max.

    Returns (first failing n, reason) or (None, "").
    """
    for n in range(1, n_max + 1):
        p, y = law_for_n(n), seq_for_n(n)
        if gap_size_distribution(y) != block_size_distribution(p):
            return n, "gap sizes differ from block sizes"
        ok, report = verify_partial_sum_identity(p, y)
        if not ok:
            return n, f"partial sums differ at m={report.first_mismatch}"
    return None, ""
