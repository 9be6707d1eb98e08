"""Tests for convex orders and the brute-force convexity oracle."""

from __future__ import annotations

import random

import pytest

from qfold.convexorder import (
    ConvexOrderError,
    FunctionalTieError,
    check_convexity,
    order_from_chain,
    order_from_functional,
    order_from_word,
)
from qfold.rootdata import cartan_datum, longest_word, positive_roots

A2 = cartan_datum("A", 2)
A3 = cartan_datum("A", 3)

RANK3_TYPES = (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2),
               ("B", 3), ("C", 3), ("G", 2))


def a2_roots():
    a1, a2 = A2.simple_root(1), A2.simple_root(2)
    return a1, a2, a1 + a2


def test_functional_order_a2():
    a1, a2, a12 = a2_roots()
    order = order_from_functional(A2, (0, 1))
    assert order.sort([a2, a12, a1]) == [a1, a12, a2]
    assert order.compare(a12, a12) == 0


def test_functional_tie_is_an_error():
    a1, a2, _ = a2_roots()
    order = order_from_functional(A2, (1, 1))
    with pytest.raises(FunctionalTieError):
        order.compare(a1, a2)


def test_word_order_a2_full_inversion_set():
    a1, a2, a12 = a2_roots()
    order = order_from_word(A2, (1, 2, 1))
    assert order.sort([a2, a12, a1]) == [a1, a12, a2]
    assert order.chain == (a1, a12, a2)


def test_word_order_single_letter():
    a1, a2, a12 = a2_roots()
    order = order_from_word(A2, (1,))
    assert order.compare(a1, a2) == -1
    assert order.compare(a1, a12) == -1


def test_word_order_complement_separation():
    order = order_from_word(A3, (1, 2))
    a1 = A3.simple_root(1)
    a12 = A3.simple_root(1) + A3.simple_root(2)
    a3 = A3.simple_root(3)
    assert order.compare(a1, a12) == -1
    assert order.compare(a3, a12) == 1


def test_word_order_rejects_non_reduced():
    with pytest.raises(ConvexOrderError):
        order_from_word(A2, (1, 1))


def test_check_convexity_accepts_good_order():
    a1, a2, a12 = a2_roots()
    order = order_from_chain(A2, [a1, a12, a2])
    assert check_convexity(order, [a1, a12, a2]) is None
    assert check_convexity(order, [a1]) is None


def test_check_convexity_finds_violation():
    # The sum above both summands breaks the cone-separation axioms.
    a1, a2, a12 = a2_roots()
    order = order_from_chain(A2, [a1, a2, a12])
    violation = check_convexity(order, [a1, a2, a12])
    assert violation is not None
    assert violation.condition in (1, 2)
    assert check_convexity(order_from_chain(A2, [a2, a1, a12]),
                           [a1, a2, a12]) is not None


def test_functional_orders_convex_rank_le_3():
    rng = random.Random(3)
    for family, rank in RANK3_TYPES:
        datum = cartan_datum(family, rank)
        roots = positive_roots(datum)
        done = 0
        while done < 3:
            h = tuple(rng.randint(-20, 20) for _ in range(rank))
            order = order_from_functional(datum, h)
            try:
                order.sort(roots)
            except FunctionalTieError:
                continue
            assert check_convexity(order, roots) is None, (family, rank, h)
            done += 1


def test_word_orders_convex_rank_le_3():
    for family, rank in RANK3_TYPES:
        datum = cartan_datum(family, rank)
        roots = positive_roots(datum)
        order = order_from_word(datum, longest_word(datum))
        assert order.sort(roots)[: len(order.chain)] == list(order.chain)
        assert check_convexity(order, roots) is None, (family, rank)


def test_word_order_prefix_words_convex():
    for word in ((1,), (1, 2), (1, 2, 1), (1, 2, 1, 3), (1, 2, 1, 3, 2)):
        order = order_from_word(A3, word)
        assert check_convexity(order, positive_roots(A3)) is None, word
