"""The coefficients r(d; b): partitions with gap encoding d and block sizes b.

Three independent routes are provided: brute-force counting over set
partitions, the sum over constrained upper-triangular matrices, and
expansion of the generating polynomial
x1^(d1-1) (x1+x2)^(d2-1) ... (x1+...+xk)^(dk-1).
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .combinatorics import (
    Composition,
    DomainError,
    _same_space,
    block_sizes,
    check_composition,
    enumerate_compositions,
    enumerate_set_partitions,
    gap_encode,
    increments,
)

Matrix = tuple[tuple[int, ...], ...]


def enumerate_constrained_matrices(b: Sequence[int], d: Sequence[int]) -> Iterator[Matrix]:
    """Upper-triangular non-negative integer k x k matrices with
    row sums b_i - 1 and column sums d_i - 1.

    Filled column by column; column j spreads d_j - 1 over rows 0..j
    subject to what each row still has left.
    """
    b, d = check_composition(b), check_composition(d)
    _same_space(b, d)
    k = len(b)
    budget = [x - 1 for x in b]
    cols: list[tuple[int, ...]] = []

    def fill(j: int) -> Iterator[Matrix]:
        if j == k:
            if not any(budget):
                yield tuple(
                    tuple(cols[c][r] if r <= c else 0 for c in range(k)) for r in range(k)
                )
            return
        for col in _split(d[j] - 1, budget, j + 1):
            for r, v in enumerate(col):
                budget[r] -= v
            # rows > j only draw from columns > j
            if sum(budget[j + 1 :]) <= sum(d[j + 1 :]) - (k - j - 1):
                cols.append(col)
                yield from fill(j + 1)
                cols.pop()
            for r, v in enumerate(col):
                budget[r] += v

    yield from fill(0)


def _split(total: int, caps: list[int], length: int) -> Iterator[tuple[int, ...]]:
    """Tuples of `length` non-negative ints summing to total, entry r <= caps[r]."""
    if length == 0:
        if total == 0:
            yield ()
        return
    room = sum(caps[:length])
    if total > room:
        return

    def rec(r: int, left: int, room_after: int) -> Iterator[tuple[int, ...]]:
        if r == length - 1:
            if left <= caps[r]:
                yield (left,)
            return
        room_after -= caps[r]
        lo = max(0, left - room_after)
        for v in range(min(caps[r], left), lo - 1, -1):
            for rest in rec(r + 1, left - v, room_after):
                yield (v,) + rest

    yield from rec(0, total, room)


@lru_cache(maxsize=None)
def _factorials(n: int) -> tuple[int, ...]:
    return tuple(factorial(i) for i in range(n + 1))


def r_via_formula(d: Sequence[int], b: Sequence[int]) -> int:
    """Sum over constrained matrices M of prod (d_i-1)! / prod m_ij!."""
    d, b = check_composition(d), check_composition(b)
    _same_space(d, b)
    return _r_formula(d, b)


@lru_cache(maxsize=None)
def _r_formula(d: Composition, b: Composition) -> int:
    fact = _factorials(sum(d))
    k = len(d)
    numer = 1
    for x in d:
        numer *= fact[x - 1]
    total = 0
    for m in enumerate_constrained_matrices(b, d):
        denom = 1
        for i in range(k):
            for j in range(i, k):
                denom *= fact[m[i][j]]
        q, rem = divmod(numer, denom)
        assert rem == 0, f"non-integral summand for d={d}, b={b}, M={m}"
        total += q
    return total


@lru_cache(maxsize=16)
def bruteforce_table(n: int) -> dict[tuple[Composition, Composition], int]:
    """Counts of (gap encoding, block sizes) over every partition of {1..n}."""
    counts: Counter = Counter()
    for p in enumerate_set_partitions(n, limit=None):
        counts[gap_encode(increments(p)), block_sizes(p)] += 1
    return dict(counts)


def r_via_bruteforce(d: Sequence[int], b: Sequence[int]) -> int:
    d, b = check_composition(d), check_composition(b)
    _same_space(d, b)
    return bruteforce_table(sum(d)).get((d, b), 0)


class CompositionPolynomial:
    """Sparse polynomial in x1..xk with integer coefficients.

    Terms map exponent tuples to nonzero coefficients.
    """

    def __init__(self, k: int, terms: dict[tuple[int, ...], int] | None = None):
        self.k = k
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != k:
                raise DomainError(f"exponent {e} has wrong length for k={k}")
            if c:
                self.terms[tuple(e)] = c

    @classmethod
    def one(cls, k: int) -> "CompositionPolynomial":
        return cls(k, {(0,) * k: 1})

    def times_prefix_sum(self, j: int) -> "CompositionPolynomial":
        """Multiply by x1 + ... + xj."""
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            for i in range(j):
                e2 = e[:i] + (e[i] + 1,) + e[i + 1 :]
                out[e2] = out.get(e2, 0) + c
        return CompositionPolynomial(self.k, out)

    def coefficient(self, b: Sequence[int]) -> int:
        """Coefficient of x1^(b1-1) ... xk^(bk-1)."""
        return self.terms.get(tuple(x - 1 for x in b), 0)

    def evaluate(self, values: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, p in zip(values, e):
                term *= v**p
            total += term
        return total

    def compositions(self) -> list[Composition]:
        return [tuple(x + 1 for x in e) for e in self.terms]

    def __eq__(self, other):
        if not isinstance(other, CompositionPolynomial):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def __repr__(self):
        return f"CompositionPolynomial(k={self.k}, terms={self.terms!r})"


def genfun_expand(d: Sequence[int]) -> CompositionPolynomial:
    d = check_composition(d)
    k = len(d)
    poly = CompositionPolynomial.one(k)
    for j, gap in enumerate(d, start=1):
        for _ in range(gap - 1):
            poly = poly.times_prefix_sum(j)
    return poly


def r_via_genfun(d: Sequence[int], b: Sequence[int]) -> int:
    d, b = check_composition(d), check_composition(b)
    _same_space(d, b)
    return _genfun_cached(d).coefficient(b)


@lru_cache(maxsize=4096)
def _genfun_cached(d: Composition) -> CompositionPolynomial:
    return genfun_expand(d)


METHODS = {
    "formula": r_via_formula,
    "bruteforce": r_via_bruteforce,
    "genfun": r_via_genfun,
}


def r_table(n: int, k: int, method: str = "formula") -> tuple[list[Composition], list[list[int]]]:
    """Matrix of r(y_i; y_j) with S(n,k) in decreasing dictionary order.

    Row i is the gap encoding y_i, column j the block composition y_j.
    """
    try:
        r = METHODS[method]
    except KeyError:
        raise DomainError(f"unknown method {method!r}") from None
    comps = enumerate_compositions(n, k)
    return comps, [[r(y, z) for z in comps] for y in comps]
