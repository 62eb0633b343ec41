"""Chinese Restaurant Process, the two-parameter (alpha, theta) model, samplers,
and the independent-increments characterisation of CRP.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

from .combinatorics import (
    DomainError,
    SetPartition,
    all_compositions,
    gap_encode,
)
from .laws import (
    IncrementLaw,
    PartitionLaw,
    forward_map,
    increment_marginals,
    invert_map,
    is_exchangeable,
    is_independent_increments,
)


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("parameters must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class CrpParameter:
    """theta > 0 as an exact rational, or one of the limits ZERO / INFINITY."""

    kind: str  # "finite", "zero" or "infinity"
    theta: Fraction | None = None

    def __post_init__(self):
        if self.kind == "finite":
            if self.theta is None or self.theta <= 0:
                raise DomainError(f"theta must be a positive rational, got {self.theta}")
        elif self.kind in ("zero", "infinity"):
            if self.theta is not None:
                raise DomainError("limit parameters carry no theta")
        else:
            raise DomainError(f"unknown parameter kind {self.kind!r}")

    @classmethod
    def finite(cls, theta) -> "CrpParameter":
        return cls("finite", _rational(theta))

    @classmethod
    def parse(cls, text: str) -> "CrpParameter":
        t = text.strip().lower()
        if t in ("zero", "0"):
            return ZERO
        if t in ("inf", "infinity"):
            return INFINITY
        try:
            return cls.finite(Fraction(t))
        except ValueError:
            raise DomainError(f"cannot parse theta {text!r}") from None

    def __str__(self):
        if self.kind == "finite":
            return str(self.theta)
        return "zero" if self.kind == "zero" else "inf"


ZERO = CrpParameter("zero")
INFINITY = CrpParameter("infinity")


def _as_param(param) -> CrpParameter:
    return param if isinstance(param, CrpParameter) else CrpParameter.finite(param)


@dataclass(frozen=True)
class TwoParameter:
    alpha: Fraction
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", _rational(self.alpha))
        object.__setattr__(self, "theta", _rational(self.theta))
        if not 0 <= self.alpha < 1:
            raise DomainError(f"need 0 <= alpha < 1, got {self.alpha}")
        if not self.theta > -self.alpha:
            raise DomainError(f"need theta > -alpha, got theta={self.theta}, alpha={self.alpha}")


def crp_law(n: int, param) -> PartitionLaw:
    """Ewens law: p(b) = theta^k prod (b_i - 1)! / (theta (theta+1) ... (theta+n-1))."""
    param = _as_param(param)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if param.kind == "zero":
        return PartitionLaw(n, {(n,): 1}, fill_missing=True)
    if param.kind == "infinity":
        return PartitionLaw(n, {(1,) * n: 1}, fill_missing=True)
    theta = param.theta
    rising = Fraction(1)
    for i in range(n):
        rising *= theta + i
    table = {}
    for b in all_compositions(n):
        num = theta ** len(b)
        for size in b:
            num *= factorial(size - 1)
        table[b] = num / rising
    return PartitionLaw(n, table)


def crp_increment_probs(n: int, param) -> list[Fraction]:
    param = _as_param(param)
    if param.kind == "zero":
        return [Fraction(1)] + [Fraction(0)] * (n - 1)
    if param.kind == "infinity":
        return [Fraction(1)] * n
    theta = param.theta
    return [theta / (i - 1 + theta) for i in range(1, n + 1)]


def two_parameter_transition(i: int, k: int, params: TwoParameter) -> Fraction:
    """P(element i+1 opens a new block | k blocks among the first i)."""
    if not 1 <= k <= i:
        raise DomainError(f"need 1 <= k <= i, got i={i}, k={k}")
    return (k * params.alpha + params.theta) / (i + params.theta)


def two_parameter_law(n: int, params: TwoParameter) -> PartitionLaw:
    """Exact law of the (alpha, theta) seating rule.

    p(b) is computed as the sequential probability of the partition whose
    blocks are consecutive runs of sizes b; every partition with the
    same ordered sizes gets the same value.
    """
    alpha, theta = params.alpha, params.theta
    table = {}
    for b in all_compositions(n):
        prob = Fraction(1)
        sizes: list[int] = []
        i = 0
        for size in b:
            if i > 0:
                prob *= (len(sizes) * alpha + theta) / (i + theta)
            sizes.append(1)
            i += 1
            for _ in range(size - 1):
                prob *= (sizes[-1] - alpha) / (i + theta)
                sizes[-1] += 1
                i += 1
        table[b] = prob
    return PartitionLaw(n, table)


def _seat(n: int, rng: random.Random, join_weight, total) -> SetPartition:
    # element 1 always opens block 1 without consuming randomness
    labels = [1]
    sizes = [1]
    for i in range(1, n):
        u = rng.random() * total(i)
        acc = 0.0
        choice = None
        for j, s in enumerate(sizes):
            acc += join_weight(s)
            if u < acc:
                choice = j
                break
        if choice is None:
            sizes.append(1)
            labels.append(len(sizes))
        else:
            sizes[choice] += 1
            labels.append(choice + 1)
    return tuple(labels)


def stream_rng(seed: int, index: int = 0) -> random.Random:
    """Generator for sample `index` of the run seeded with `seed`."""
    return random.Random(f"{seed}:{index}")


def sample_crp(n: int, param, seed: int, index: int = 0) -> SetPartition:
    """One CRP partition as a restricted-growth sequence.

    Element i opens a new block with probability theta/(i-1+theta) and
    otherwise joins a block with probability proportional to its size.
    """
    param = _as_param(param)
    if param.kind == "zero":
        return (1,) * n
    if param.kind == "infinity":
        return tuple(range(1, n + 1))
    theta = float(param.theta)
    return _seat(n, stream_rng(seed, index), lambda s: s, lambda i: i + theta)


def sample_two_parameter(n: int, params: TwoParameter, seed: int, index: int = 0) -> SetPartition:
    alpha, theta = float(params.alpha), float(params.theta)
    return _seat(n, stream_rng(seed, index), lambda s: s - alpha, lambda i: i + theta)


def sample_many(sampler, n: int, params, count: int, seed: int) -> Iterator[SetPartition]:
    for index in range(count):
        yield sampler(n, params, seed, index)


class NotApplicableError(ValueError):
    """The hypotheses of the independent-increments characterisation do not hold."""


@dataclass
class Theorem2Result:
    param: CrpParameter
    verified: bool
    counterexample: str = ""


def proof_identities(p: PartitionLaw) -> bool:
    """For exchangeable p with n >= 2, with q = forward_map(p):
    q at increments (1,0,1,...,1) equals p(2,1,...,1), and
    q at increments (1,...,1,0) equals (n-1) p(2,1,...,1).
    """
    n = p.n
    if n < 2:
        raise DomainError("identities need n >= 2")
    q = forward_map(p)
    head = (2,) + (1,) * (n - 2)
    early = q[gap_encode((1, 0) + (1,) * (n - 2))]
    late = q[gap_encode((1,) * (n - 1) + (0,))]
    return early == p[head] and late == (n - 1) * p[head]


def verify_theorem2(q: IncrementLaw, p: PartitionLaw | None = None) -> Theorem2Result:
    """Recover the CRP parameter of an exchangeable law with independent increments.

    Raises NotApplicableError naming the first hypothesis that fails.
    """
    if q.n < 2:
        raise NotApplicableError("n >= 2 is needed to identify theta")
    inv = invert_map(q)
    if not inv.feasible:
        raise NotApplicableError("q is not the increment law of a partially exchangeable partition: " + "; ".join(inv.problems))
    if p is not None and p != inv.law:
        raise NotApplicableError("p is not the inverse image of q")
    p = inv.law
    if not is_exchangeable(p):
        raise NotApplicableError("the partition law is not exchangeable")
    if not is_independent_increments(q):
        raise NotApplicableError("the increments are not independent")
    u2 = increment_marginals(q)[1]
    if u2 == 0:
        param = ZERO
    elif u2 == 1:
        param = INFINITY
    else:
        param = CrpParameter.finite(u2 / (1 - u2))
    expected = forward_map(crp_law(q.n, param))
    if expected != q:
        bad = next(d for d in q.table if q[d] != expected[d])
        return Theorem2Result(param, False, f"q{bad} = {q[bad]} but CRP({param}) gives {expected[bad]}")
    return Theorem2Result(param, True)

