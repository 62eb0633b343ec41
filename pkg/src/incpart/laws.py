"""Partition laws p, increment laws q, and the exact maps between them.

A partition law assigns to each composition b of n the probability p(b)
of any single partition whose ordered block sizes are b.  An increment
law assigns to each gap encoding d the probability q(d) of the
corresponding increment sequence.  Both are complete tables of
``Fraction`` values over all 2^(n-1) compositions of n.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .coefficients import r_via_formula
from .combinatorics import (
    Composition,
    all_compositions,
    block_sizes,
    check_composition,
    count_partitions_with_sizes,
    enumerate_compositions,
    enumerate_set_partitions,
    gap_decode,
    gap_encode,
    increments,
)


class IncompleteLawError(ValueError):
    """A law table is missing compositions or has keys that are not compositions of n."""


def _complete_table(n: int, table: Mapping, fill_missing: bool) -> dict[Composition, Fraction]:
    if n < 1:
        raise IncompleteLawError(f"n must be positive, got {n}")
    out = {}
    for key, value in table.items():
        key = check_composition(key)
        if sum(key) != n:
            raise IncompleteLawError(f"{key} is not a composition of {n}")
        out[key] = Fraction(value)
    expected = all_compositions(n)
    missing = [c for c in expected if c not in out]
    if missing:
        if not fill_missing:
            raise IncompleteLawError(f"law for n={n} is missing {missing[0]} ({len(missing)} missing)")
        for c in missing:
            out[c] = Fraction(0)
    return {c: out[c] for c in expected}


@dataclass(frozen=True, init=False)
class PartitionLaw:
    n: int
    table: dict[Composition, Fraction]

    def __init__(self, n: int, table: Mapping, fill_missing: bool = False):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", _complete_table(n, table, fill_missing))

    def __getitem__(self, b: Sequence[int]) -> Fraction:
        return self.table[tuple(b)]

    def probability(self, p: Sequence[int]) -> Fraction:
        """Probability of one set partition given as a restricted-growth sequence."""
        return self.table[block_sizes(p)]


@dataclass(frozen=True, init=False)
class IncrementLaw:
    n: int
    table: dict[Composition, Fraction]

    def __init__(self, n: int, table: Mapping, fill_missing: bool = False):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "table", _complete_table(n, table, fill_missing))

    def __getitem__(self, d: Sequence[int]) -> Fraction:
        return self.table[tuple(d)]

    def of_bits(self, bits: Sequence[int]) -> Fraction:
        return self.table[gap_encode(bits)]


@dataclass
class ValidityReport:
    valid: bool
    reason: str = ""
    culprit: Composition | None = None

    def __bool__(self):
        return self.valid


def validate_partition_law(p: PartitionLaw) -> ValidityReport:
    for b, v in p.table.items():
        if v < 0:
            return ValidityReport(False, f"negative value {v} at {b}", b)
    total = sum(v * count_partitions_with_sizes(b) for b, v in p.table.items())
    if total != 1:
        return ValidityReport(False, f"weighted sum is {total}, not 1")
    return ValidityReport(True)


def validate_increment_law(q: IncrementLaw) -> ValidityReport:
    for d, v in q.table.items():
        if v < 0:
            return ValidityReport(False, f"negative value {v} at {d}", d)
    total = sum(q.table.values())
    if total != 1:
        return ValidityReport(False, f"values sum to {total}, not 1")
    return ValidityReport(True)


def forward_map(p: PartitionLaw) -> IncrementLaw:
    """q(d) = sum over b in S(n,k) of p(b) r(d; b), one k at a time."""
    q = {}
    for k in range(1, p.n + 1):
        block = enumerate_compositions(p.n, k)
        for d in block:
            q[d] = sum((p.table[b] * r_via_formula(d, b) for b in block), Fraction(0))
    return IncrementLaw(p.n, q)


def forward_map_bruteforce(p: PartitionLaw) -> IncrementLaw:
    """Same map, summing p over every set partition by its gap encoding."""
    q = {d: Fraction(0) for d in all_compositions(p.n)}
    for part in enumerate_set_partitions(p.n, limit=None):
        q[gap_encode(increments(part))] += p.probability(part)
    return IncrementLaw(p.n, q)


@dataclass
class Inversion:
    """Outcome of inverting an increment law.

    ``law`` always holds the solved table; ``feasible`` is False when the
    solution is not a probability law, i.e. q is not the increment law of
    any partially exchangeable partition.
    """

    law: PartitionLaw
    feasible: bool
    problems: list[str]

    def __bool__(self):
        return self.feasible


def invert_map(q: IncrementLaw) -> Inversion:
    """Solve the unit-triangular system for p, one S(n,k) at a time.

    With y_1 > y_2 > ... in dictionary order, r(y_i; y_j) vanishes for
    j > i, so p(y_i) = q(y_i) - sum_{j<i} p(y_j) r(y_i; y_j).
    """
    p: dict[Composition, Fraction] = {}
    for k in range(1, q.n + 1):
        ys = enumerate_compositions(q.n, k)
        for i, y in enumerate(ys):
            p[y] = q.table[y] - sum((p[ys[j]] * r_via_formula(y, ys[j]) for j in range(i)), Fraction(0))
    law = PartitionLaw(q.n, p)
    problems = [f"p{b} = {v} < 0" for b, v in law.table.items() if v < 0]
    total = sum(v * count_partitions_with_sizes(b) for b, v in law.table.items())
    if total != 1:
        problems.append(f"weighted sum is {total}, not 1")
    return Inversion(law, not problems, problems)


def is_exchangeable(p: PartitionLaw) -> bool:
    canon: dict[tuple[int, ...], Fraction] = {}
    for b, v in p.table.items():
        key = tuple(sorted(b))
        if canon.setdefault(key, v) != v:
            return False
    return True


def increment_marginals(q: IncrementLaw) -> list[Fraction]:
    u = [Fraction(0)] * q.n
    for d, v in q.table.items():
        for i, bit in enumerate(gap_decode(d)):
            if bit:
                u[i] += v
    return u


def product_law(n: int, u: Sequence) -> dict[Composition, Fraction]:
    """Table of the independent-bits law with P(bit i = 1) = u_i (u_1 = 1)."""
    u = [Fraction(x) for x in u]
    out = {}
    for d in all_compositions(n):
        prob = Fraction(1)
        for bit, ui in zip(gap_decode(d)[1:], u[1:]):
            prob *= ui if bit else 1 - ui
        out[d] = prob
    return out


def is_independent_increments(q: IncrementLaw) -> bool:
    return product_law(q.n, increment_marginals(q)) == q.table


def random_partition_law(n: int, rng: random.Random, exchangeable: bool = False, denominator: int = 1000) -> PartitionLaw:
    """Random partially exchangeable law with strictly positive rational values.

    A positive weight is drawn for every set partition and normalised;
    p(b) is then the mean weight over partitions with block sizes b
    (over all rearrangements of b when ``exchangeable``), which keeps
    total mass 1.
    """
    weights: dict[tuple, Fraction] = {}
    sizes_of = {}
    for part in enumerate_set_partitions(n, limit=None):
        weights[part] = Fraction(rng.randint(1, denominator), denominator)
        sizes_of[part] = block_sizes(part)
    total = sum(weights.values())
    group = (lambda b: tuple(sorted(b))) if exchangeable else (lambda b: b)
    mass: dict[tuple, Fraction] = {}
    count: dict[tuple, int] = {}
    for part, w in weights.items():
        g = group(sizes_of[part])
        mass[g] = mass.get(g, Fraction(0)) + w / total
        count[g] = count.get(g, 0) + 1
    return PartitionLaw(n, {b: mass[group(b)] / count[group(b)] for b in all_compositions(n)})


def uniform_law(n: int) -> PartitionLaw:
    bell = sum(count_partitions_with_sizes(b) for b in all_compositions(n))
    return PartitionLaw(n, {b: Fraction(1, bell) for b in all_compositions(n)})


def point_law(n: int, b: Sequence[int]) -> PartitionLaw:
    """Uniform over the partitions with block sizes exactly b."""
    b = check_composition(b)
    return PartitionLaw(n, {b: Fraction(1, count_partitions_with_sizes(b))}, fill_missing=True)
