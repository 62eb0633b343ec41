import math
import random
from collections import Counter
from fractions import Fraction as F

import pytest

from incpart.combinatorics import (
    DomainError,
    all_compositions,
    block_sizes,
    count_partitions_with_sizes,
    enumerate_set_partitions,
    increments,
)
from incpart.laws import (
    IncrementLaw,
    forward_map,
    increment_marginals,
    invert_map,
    is_exchangeable,
    is_independent_increments,
    product_law,
    random_partition_law,
    validate_partition_law,
)
from incpart.models import (
    INFINITY,
    ZERO,
    CrpParameter,
    NotApplicableError,
    TwoParameter,
    crp_increment_probs,
    crp_law,
    proof_identities,
    sample_crp,
    sample_two_parameter,
    two_parameter_law,
    two_parameter_transition,
    verify_theorem2,
)

THETAS = [F(1, 3), F(1, 2), 1, 2, 10]


def test_crp_law_examples():
    assert crp_law(3, 1).table == {(3,): F(1, 3), (2, 1): F(1, 6), (1, 2): F(1, 6), (1, 1, 1): F(1, 6)}
    assert crp_law(4, ZERO)[(4,)] == 1
    assert crp_law(4, INFINITY)[(1, 1, 1, 1)] == 1
    assert sum(crp_law(4, ZERO).table.values()) == 1


@pytest.mark.parametrize("theta", THETAS)
def test_crp_law_valid_and_exchangeable(theta):
    for n in range(1, 9):
        p = crp_law(n, theta)
        assert validate_partition_law(p)
        assert is_exchangeable(p)


def sequential_probability(part, theta):
    """P(part) under the seating rule, multiplied out step by step."""
    theta = F(theta)
    prob = F(1)
    sizes = Counter()
    for i, label in enumerate(part):
        if i > 0:
            prob *= (theta if label not in sizes else sizes[label]) / (i + theta)
        sizes[label] += 1
    return prob


@pytest.mark.parametrize("theta", [F(1, 2), 3])
def test_crp_law_matches_seating_rule(theta):
    for n in range(1, 7):
        p = crp_law(n, theta)
        for part in enumerate_set_partitions(n):
            assert p.probability(part) == sequential_probability(part, theta)


def test_increment_probs():
    assert crp_increment_probs(4, 1) == [1, F(1, 2), F(1, 3), F(1, 4)]
    assert crp_increment_probs(4, 2) == [1, F(2, 3), F(1, 2), F(2, 5)]
    assert increment_marginals(forward_map(crp_law(4, 2))) == crp_increment_probs(4, 2)
    assert crp_increment_probs(3, ZERO) == [1, 0, 0]
    assert crp_increment_probs(3, INFINITY) == [1, 1, 1]


def test_parameter_validation():
    with pytest.raises(DomainError):
        CrpParameter.finite(0)
    with pytest.raises(DomainError):
        CrpParameter.finite(-1)
    with pytest.raises(TypeError):
        CrpParameter.finite(0.5)
    assert CrpParameter.parse("3/2").theta == F(3, 2)
    assert CrpParameter.parse("inf") is INFINITY
    assert CrpParameter.parse("zero") is ZERO
    with pytest.raises(DomainError):
        TwoParameter(1, 0)
    with pytest.raises(DomainError):
        TwoParameter(F(1, 2), F(-1, 2))
    TwoParameter(F(1, 2), F(-1, 4))


def test_two_parameter_transition():
    assert two_parameter_transition(3, 2, TwoParameter(F(1, 2), F(1, 2))) == F(3, 7)
    for i in range(1, 6):
        assert two_parameter_transition(i, 1, TwoParameter(0, 2)) == crp_increment_probs(i + 1, 2)[i]
        assert two_parameter_transition(i, i, TwoParameter(F(9, 10), 1)) < 1
    with pytest.raises(DomainError):
        two_parameter_transition(2, 3, TwoParameter(0, 1))
    with pytest.raises(DomainError):
        two_parameter_transition(2, 0, TwoParameter(0, 1))


def test_two_parameter_law():
    params = TwoParameter(F(1, 2), F(1, 2))
    for n in range(1, 7):
        p = two_parameter_law(n, params)
        assert validate_partition_law(p)
        assert is_exchangeable(p)
    assert two_parameter_law(5, TwoParameter(0, F(3, 2))) == crp_law(5, F(3, 2))


def test_samplers_deterministic_and_degenerate():
    assert sample_crp(5, ZERO, seed=3) == (1,) * 5
    assert sample_crp(5, INFINITY, seed=3) == (1, 2, 3, 4, 5)
    assert sample_crp(9, 1, seed=11, index=4) == sample_crp(9, 1, seed=11, index=4)
    runs = [sample_crp(9, F(3, 2), seed=5, index=i) for i in range(50)]
    assert runs == [sample_two_parameter(9, TwoParameter(0, F(3, 2)), seed=5, index=i) for i in range(50)]
    assert len(set(runs)) > 1


def test_crp_sampler_frequencies():
    n, count = 4, 20000
    exact = crp_law(n, 2)
    seen = Counter(block_sizes(sample_crp(n, 2, seed=99, index=i)) for i in range(count))
    for b in all_compositions(n):
        prob = float(exact[b] * count_partitions_with_sizes(b))
        se = math.sqrt(prob * (1 - prob) / count)
        assert abs(seen[b] / count - prob) <= 3 * se


def test_verify_theorem2_examples():
    result = verify_theorem2(forward_map(crp_law(6, F(3, 2))))
    assert result.verified and result.param == CrpParameter.finite(F(3, 2))
    assert verify_theorem2(forward_map(crp_law(5, INFINITY))).param is INFINITY
    assert verify_theorem2(forward_map(crp_law(5, ZERO))).param is ZERO
    p = crp_law(4, 2)
    assert verify_theorem2(forward_map(p), p).verified


def test_verify_theorem2_rejects():
    rng = random.Random(5)
    with pytest.raises(NotApplicableError, match="independent"):
        verify_theorem2(forward_map(random_partition_law(4, rng, exchangeable=True)))
    with pytest.raises(NotApplicableError, match="exchangeable"):
        verify_theorem2(forward_map(random_partition_law(4, rng)))
    with pytest.raises(NotApplicableError):
        verify_theorem2(forward_map(crp_law(1, 1)))


def test_independent_but_not_exchangeable_is_not_crp():
    # independent increments always invert to some partially exchangeable law;
    # CRP is singled out only once exchangeability is added
    u = [1, F(1, 2), F(1, 2), F(1, 2)]
    q = IncrementLaw(4, product_law(4, u))
    inv = invert_map(q)
    assert inv.feasible and not is_exchangeable(inv.law)
    with pytest.raises(NotApplicableError, match="exchangeable"):
        verify_theorem2(q)


@pytest.mark.parametrize("n", range(2, 9))
def test_proof_identities(n):
    rng = random.Random(n)
    assert proof_identities(crp_law(n, F(2, 3)))
    assert proof_identities(random_partition_law(n, rng, exchangeable=True))


def test_two_parameter_partial_sums_markov():
    # exact check: the new-block probability given the whole history of
    # the first i elements depends only on (i, number of blocks)
    params = TwoParameter(F(1, 3), F(2, 3))
    n = 5
    law = two_parameter_law(n, params)
    for i in range(1, n):
        by_prefix = {}
        for part in enumerate_set_partitions(n):
            prefix = part[:i]
            by_prefix.setdefault(prefix, [F(0), F(0)])
            prob = law.probability(part)
            by_prefix[prefix][0] += prob
            if increments(part)[i]:
                by_prefix[prefix][1] += prob
        for prefix, (total, new) in by_prefix.items():
            assert new / total == two_parameter_transition(i, max(prefix), params)


def test_two_parameter_empirical_symmetry():
    # estimated p(b) for rearrangements of the same block sizes agree within 3 SE
    n, count = 4, 100_000
    params = TwoParameter(F(1, 2), F(1, 2))
    exact = two_parameter_law(n, params)
    seen = Counter(block_sizes(sample_two_parameter(n, params, seed=31, index=i)) for i in range(count))
    estimate, se = {}, {}
    for b in all_compositions(n):
        mult = count_partitions_with_sizes(b)
        freq = seen[b] / count
        prob = float(exact[b] * mult)
        assert abs(freq - prob) <= 3 * math.sqrt(prob * (1 - prob) / count)
        estimate[b] = freq / mult
        se[b] = math.sqrt(prob * (1 - prob) / count) / mult
    for b in all_compositions(n):
        for c in all_compositions(n):
            if b < c and sorted(b) == sorted(c):
                assert abs(estimate[b] - estimate[c]) <= 3 * math.hypot(se[b], se[c])
