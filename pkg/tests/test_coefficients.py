from math import prod

import pytest

from incpart.coefficients import (
    CompositionPolynomial,
    enumerate_constrained_matrices,
    genfun_expand,
    r_table,
    r_via_bruteforce,
    r_via_formula,
    r_via_genfun,
)
from incpart.combinatorics import (
    DomainError,
    all_compositions,
    count_partitions_with_sizes,
    enumerate_compositions,
    gap_encode,
    partial_order_geq,
)
from oracles import minima_bits, ordered_blocks, partitions_as_blocks


def oracle_r(d, b):
    """Count partitions, built by insertion, with the given block sizes and gaps."""
    n = sum(d)
    hits = 0
    for blocks in partitions_as_blocks(n):
        blocks = ordered_blocks(blocks)
        if tuple(map(len, blocks)) == tuple(b) and gap_encode(minima_bits(blocks, n)) == tuple(d):
            hits += 1
    return hits


def test_matrix_examples():
    assert list(enumerate_constrained_matrices((2, 2), (1, 3))) == [((0, 1), (0, 1))]
    assert list(enumerate_constrained_matrices((1, 1, 1), (1, 1, 1))) == [((0, 0, 0),) * 3]
    assert list(enumerate_constrained_matrices((1, 3), (2, 2))) == []
    assert list(enumerate_constrained_matrices((5,), (5,))) == [((4,),)]


def test_matrix_domain_error():
    with pytest.raises(DomainError):
        list(enumerate_constrained_matrices((2, 2), (3,)))
    with pytest.raises(DomainError):
        r_via_formula((2, 1), (2, 2))


@pytest.mark.parametrize("n", range(1, 7))
def test_matrices_satisfy_constraints(n):
    for k in range(1, n + 1):
        comps = enumerate_compositions(n, k)
        for b in comps:
            for d in comps:
                seen = set()
                for m in enumerate_constrained_matrices(b, d):
                    assert m not in seen
                    seen.add(m)
                    for i in range(k):
                        assert sum(m[i]) == b[i] - 1
                        assert sum(m[r][i] for r in range(k)) == d[i] - 1
                        assert all(m[i][j] == 0 for j in range(i))
                        assert all(x >= 0 for x in m[i])


def test_r_examples():
    assert r_via_formula((1, 3), (2, 2)) == 2
    assert r_via_bruteforce((1, 3), (2, 2)) == 2
    assert r_via_bruteforce((3,), (3,)) == 1
    assert r_via_formula((2, 1), (1, 2)) == 0
    assert r_via_formula((4,), (4,)) == 1  # k = 1: the single entry is n - 1
    for d in all_compositions(6):
        assert r_via_formula(d, d) == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_r_matches_insertion_oracle(n):
    for k in range(1, n + 1):
        comps = enumerate_compositions(n, k)
        for d in comps:
            for b in comps:
                assert r_via_formula(d, b) == oracle_r(d, b)


@pytest.mark.parametrize("n", range(1, 9))
def test_vanishing_and_sums(n):
    for k in range(1, n + 1):
        comps = enumerate_compositions(n, k)
        for d in comps:
            row = 0
            for b in comps:
                r = r_via_formula(d, b)
                if not partial_order_geq(b, d):
                    assert r == 0
                row += r
            assert row == prod(i ** (x - 1) for i, x in enumerate(d, start=1))
        for b in comps:
            assert sum(r_via_formula(d, b) for d in comps) == count_partitions_with_sizes(b)


def test_genfun_examples():
    p = genfun_expand((1, 2))
    assert p.terms == {(1, 0): 1, (0, 1): 1}
    assert p.coefficient((2, 1)) == r_via_bruteforce((1, 2), (2, 1)) == 1
    assert p.coefficient((1, 2)) == r_via_bruteforce((1, 2), (1, 2)) == 1
    assert genfun_expand((1, 1, 1)) == CompositionPolynomial.one(3)
    assert r_via_genfun((1, 3), (2, 2)) == 2


@pytest.mark.parametrize("n", range(1, 8))
def test_genfun_support_and_mass(n):
    for k in range(1, n + 1):
        space = set(enumerate_compositions(n, k))
        for d in space:
            poly = genfun_expand(d)
            assert set(poly.compositions()) <= space
            assert poly.evaluate([1] * k) == prod(i ** (x - 1) for i, x in enumerate(d, start=1))


def test_r_table_orientation():
    comps, rows = r_table(4, 2)
    assert comps == [(3, 1), (2, 2), (1, 3)]
    assert rows == [[1, 0, 0], [1, 1, 0], [1, 2, 1]]
    for method in ("bruteforce", "genfun"):
        assert r_table(4, 2, method)[1] == rows
    with pytest.raises(DomainError):
        r_table(4, 2, "magic")
