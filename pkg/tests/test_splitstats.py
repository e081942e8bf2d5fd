from fractions import Fraction
from itertools import product

import pytest

from gorlink.rng import SplitStream
from gorlink.splitstats import (
    Partition,
    RationalPolynomial,
    conjugacy_fraction,
    count_irreducible,
    count_squarefree_with_factor,
    enumerate_partitions,
    has_subpartition_of_size,
    limit_fraction,
    montecarlo_split_fraction,
    splits_with_degree_factor,
)
from gorlink.unipoly import UniPoly, factor, is_squarefree


def test_count_irreducible_examples():
    assert count_irreducible(1) == RationalPolynomial({1: 1})
    assert count_irreducible(2) == RationalPolynomial({2: Fraction(1, 2), 1: Fraction(-1, 2)})
    assert count_irreducible(2).evaluate(2) == 1  # only x^2+x+1
    assert count_irreducible(6).evaluate(2) == 9
    with pytest.raises(ValueError):
        count_irreducible(0)


def test_count_irreducible_integrality():
    for ell in range(1, 9):
        for q in (2, 3, 5, 7, 9):
            v = count_irreducible(ell).evaluate(q)
            assert v.denominator == 1 and v >= 0


def test_partition_enumeration():
    assert [p.parts for p in enumerate_partitions(1)] == [(1,)]
    assert len(enumerate_partitions(5)) == 7
    assert len(enumerate_partitions(30)) == 5604
    parts = enumerate_partitions(6)
    assert len(set(parts)) == len(parts)
    for p in parts:
        assert sum(p.parts) == 6
        assert all(p.parts[i] >= p.parts[i + 1] for i in range(len(p.parts) - 1))


def test_multiplicity_form():
    assert Partition((3, 2, 2, 1)).multiplicity_form() == [(3, 1), (2, 2), (1, 1)]


def test_has_subpartition():
    assert has_subpartition_of_size(Partition((3, 2, 1)), 3)
    assert not has_subpartition_of_size(Partition((2, 2, 2)), 3)
    assert has_subpartition_of_size(Partition((2, 2, 2)), 4)
    assert has_subpartition_of_size(Partition((5,)), 0)


def test_exact_a63_coefficients():
    poly = count_squarefree_with_factor(6, 3)
    assert poly.coeffs == {
        6: Fraction(29, 80),
        5: Fraction(-11, 16),
        4: Fraction(5, 16),
        3: Fraction(-5, 16),
        2: Fraction(13, 40),
    }
    assert poly.format() == "29/80 q^6 - 11/16 q^5 + 5/16 q^4 - 5/16 q^3 + 13/40 q^2"


def test_squarefree_count_identity():
    for n in range(1, 9):
        poly = count_squarefree_with_factor(n, 0)
        expected = (
            RationalPolynomial({1: 1})
            if n == 1
            else RationalPolynomial({n: 1, n - 1: -1})
        )
        assert poly == expected


def _bruteforce_count(n, k, q):
    count = 0
    for tail in product(range(q), repeat=n):
        f = UniPoly(list(tail) + [1], q)
        if not is_squarefree(f):
            continue
        degrees = []
        for g, _ in factor(f):
            degrees.append(g.degree)
        reach = 1
        for dd in degrees:
            reach |= reach << dd
        if (reach >> k) & 1:
            count += 1
    return count


def test_exact_counts_match_bruteforce():
    for q in (2, 3):
        for n in range(1, 6):
            for k in range(0, n + 1):
                assert count_squarefree_with_factor(n, k).evaluate(q) == _bruteforce_count(n, k, q), (n, k, q)


def test_a21_at_q2():
    assert count_squarefree_with_factor(2, 1).evaluate(2) == 1


def test_conjugacy_fractions():
    assert conjugacy_fraction(Partition((5,))) == Fraction(1, 5)
    assert conjugacy_fraction(Partition((1, 1))) == Fraction(1, 2)
    for n in (5, 12, 30):
        total = sum(conjugacy_fraction(p) for p in enumerate_partitions(n))
        assert total == 1


def test_limit_fraction_values():
    assert limit_fraction(2, 1) == Fraction(1, 2)
    # p(30,1) within 1e-6 of 1 - 1/e
    import math

    assert abs(float(limit_fraction(30, 1)) - (1 - math.exp(-1))) < 1e-6
    # p(30,20) leading-term constant from the q-expansion
    assert abs(float(limit_fraction(30, 20)) - 0.385481) < 1e-5


def test_leading_coefficient_is_limit():
    for n in range(1, 13):
        for k in range(0, n + 1):
            poly = count_squarefree_with_factor(n, k)
            assert poly.degree() == n
            assert poly.leading_coefficient() == limit_fraction(n, k), (n, k)


def test_rational_polynomial_format():
    poly = RationalPolynomial({3: Fraction(-1, 2), 0: 2, 1: 1})
    assert poly.format() == "-1/2 q^3 + q + 2"
    assert RationalPolynomial({}).format() == "0"


def test_montecarlo_trivial_cases():
    successes, frac = montecarlo_split_fraction(1, 1, 101, 100, seed=0)
    assert successes == 100 and frac == 1
    # exhaustive ground truth at n=2, k=1, q=2 is 1/4; check the predicate
    hits = sum(
        splits_with_degree_factor(UniPoly([a, b, 1], 2), 1)
        for a, b in product(range(2), repeat=2)
    )
    assert Fraction(hits, 4) == Fraction(1, 4)


def test_montecarlo_matches_predicate_on_small_field():
    successes, frac = montecarlo_split_fraction(5, 2, 7, 300, seed=99)
    assert 0 < successes < 300
    expected = count_squarefree_with_factor(5, 2).evaluate(7) / Fraction(7**5)
    assert abs(float(frac) - float(expected)) < 0.1


def test_montecarlo_deterministic_and_worker_independent():
    a = montecarlo_split_fraction(8, 4, 101, 60, seed=5)
    b = montecarlo_split_fraction(8, 4, 101, 60, seed=5)
    assert a == b
    c = montecarlo_split_fraction(8, 4, 101, 60, seed=6)
    assert a != c  # overwhelmingly likely
    # scheduling across workers must not change the count
    parallel = montecarlo_split_fraction(8, 4, 101, 60, seed=5, workers=2)
    assert parallel == a
