"""Tests for the staircase quiver, including the worked three-row example."""

from __future__ import annotations

import random

import pytest

from qfold.folding import QuiverWithAut, fold, underlying_datum
from qfold.initquiver import (
    OrbitCompatibilityError,
    build_initial_quiver,
    check_orbit_action_preserves_quiver,
    exchange_to_json,
    fold_exchange_matrix,
    initial_cluster_variables,
    quiver_to_dot,
    vertex_orbits_from_unfolding,
)
from qfold.rootdata import CartanDatum, cartan_datum, is_reduced

A2 = cartan_datum("A", 2)

# The three-row example: rows labelled 1, 2, 3 with pairing -1.2 = 3,
# -1.3 = 4, -2.3 = 2, and the word s1 s2 s1 s3 s1 s2 s1 s2 s3 s2.
WILD = CartanDatum((1, 2, 3),
                   ((2, -3, -4), (-3, 2, -2), (-4, -2, 2)),
                   (1, 1, 1))
WILD_WORD = (1, 2, 1, 3, 1, 2, 1, 2, 3, 2)

WILD_ARROWS = {
    (1, 2): 3, (3, 1): 1, (3, 4): 4, (5, 3): 1, (5, 6): 3,
    (7, 5): 1, (7, 9): 4, (7, 10): 3, (2, 4): 2, (2, 5): 3,
    (6, 2): 1, (6, 7): 3, (8, 6): 1, (8, 9): 2, (10, 8): 1,
    (4, 7): 4, (4, 8): 2, (9, 4): 1, (9, 10): 2,
}


def _successor_oracle(word, datum):
    """Independent successor-based scan of the zigzag rule."""
    m = len(word)
    rows = {i: [t for t in range(1, m + 1) if word[t - 1] == i]
            for i in datum.indices}

    def nxt(pos, row):
        laters = [t for t in rows[row] if t > pos]
        return min(laters) if laters else None

    arrows = {}
    for i, ts in rows.items():
        for prev, later in zip(ts, ts[1:]):
            arrows[(later, prev)] = 1
    for a in range(1, m + 1):
        i = word[a - 1]
        for b in range(a + 1, m + 1):
            j = word[b - 1]
            if i == j:
                continue
            a_plus = nxt(a, i)
            if a_plus is not None and b > a_plus:
                continue
            b_plus = nxt(b, j)
            if b_plus is not None and not any(b < d < b_plus for d in rows[i]):
                continue
            mult = -datum.d(i) * datum.a(i, j)
            if mult:
                arrows[(a, b)] = mult
    return arrows


def test_worked_example_reproduced_exactly():
    assert is_reduced(WILD, WILD_WORD)
    ice = build_initial_quiver(WILD_WORD, WILD)
    assert ice.arrow_multiset() == WILD_ARROWS
    assert ice.frozen == frozenset({7, 9, 10})


def test_a2_staircase():
    ice = build_initial_quiver((1, 2, 1), A2)
    assert ice.arrow_multiset() == {(3, 1): 1, (1, 2): 1, (2, 3): 1}
    assert ice.frozen == frozenset({2, 3})
    assert ice.exchangeable() == (1,)


def test_single_letter_word():
    ice = build_initial_quiver((1,), A2)
    assert ice.arrows == ()
    assert ice.frozen == frozenset({1})


def test_rejects_non_reduced():
    with pytest.raises(ValueError):
        build_initial_quiver((1, 1), A2)


def test_matches_successor_oracle_on_random_words():
    rng = random.Random(17)
    data = [A2, cartan_datum("A", 3), cartan_datum("C", 2),
            cartan_datum("G", 2), WILD]
    for datum in data:
        hits = 0
        while hits < 12:
            word = tuple(rng.choice(datum.indices)
                         for _ in range(rng.randint(1, 8)))
            if not is_reduced(datum, word):
                continue
            hits += 1
            ice = build_initial_quiver(word, datum)
            assert ice.arrow_multiset() == _successor_oracle(word, datum), \
                (datum.indices, word)


def test_build_is_deterministic():
    a = build_initial_quiver(WILD_WORD, WILD)
    b = build_initial_quiver(WILD_WORD, WILD)
    assert a == b


def test_horizontal_arrows_form_leftward_paths():
    ice = build_initial_quiver(WILD_WORD, WILD)
    for i in WILD.indices:
        ts = [t for t in ice.positions if ice.row(t) == i]
        horizontal = [(s, d) for s, d, m in ice.arrows
                      if ice.row(s) == ice.row(d) == i]
        assert sorted(horizontal) == sorted((b, a) for a, b in zip(ts, ts[1:]))


def test_initial_cluster_variable_labels():
    specs = initial_cluster_variables((1, 2, 1), A2)
    assert [s.word_mu for s in specs] == [(1,), (1, 2), (1, 2, 1)]
    assert [s.lam.coords for s in specs] == [(1, 0), (0, 1), (1, 0)]
    assert all(s.word_eta == () for s in specs)


def test_identity_fold_is_signed_adjacency():
    ice = build_initial_quiver((1, 2, 1), A2)
    data = fold_exchange_matrix(ice)
    assert data.labels == ((1,), (2,), (3,))
    assert data.exchangeable == ((1,),)
    assert data.matrix == ((0,), (-1,), (1,))


def test_c2_via_folded_a3():
    aut = QuiverWithAut((1, 2, 3), ((1, 2), (3, 2)), {1: 3, 2: 2, 3: 1})
    folded = fold(aut)
    j1, j2 = folded.orbits
    unfolded, orbits, perm = vertex_orbits_from_unfolding(
        (j1, j2, j1, j2), aut)
    assert unfolded == (1, 3, 2, 1, 3, 2)
    assert orbits == [(1, 2), (3,), (4, 5), (6,)]
    ice = build_initial_quiver(unfolded, underlying_datum(aut))
    assert check_orbit_action_preserves_quiver(ice, perm)
    data = fold_exchange_matrix(ice, orbits)
    assert data.labels == ((1, 2), (3,), (4, 5), (6,))
    assert data.exchangeable == ((1, 2), (3,))
    assert data.matrix == ((0, 1), (-2, 0), (1, -1), (0, 1))
    # Skew-symmetrizable principal part with the folded symmetrizers (2, 1).
    principal = data.principal_part()
    sizes = [data.sizes[data.labels.index(s)] for s in data.exchangeable]
    for r in range(2):
        for c in range(2):
            assert sizes[r] * principal[r][c] == -sizes[c] * principal[c][r]


def test_orbit_errors():
    ice = build_initial_quiver((1, 2, 1), A2)
    with pytest.raises(OrbitCompatibilityError):
        fold_exchange_matrix(ice, [(1, 2), (3,)])  # mixes frozen and mutable
    with pytest.raises(OrbitCompatibilityError):
        fold_exchange_matrix(ice, [(1,), (2,)])    # not a partition
    with pytest.raises(OrbitCompatibilityError):
        fold_exchange_matrix(ice, [(2, 3), (1,)])  # representatives disagree


def test_dot_emission():
    ice = build_initial_quiver((1, 2, 1), A2)
    dot = quiver_to_dot(ice)
    assert dot == quiver_to_dot(build_initial_quiver((1, 2, 1), A2))
    assert 'v1 [label="1:1", shape=box];' in dot
    assert 'v2 [label="2:2", shape=box, peripheries=2];' in dot
    assert "v3 -> v1;" in dot
    big = quiver_to_dot(build_initial_quiver(WILD_WORD, WILD))
    assert 'v1 -> v2 [label="3"];' in big


def test_exchange_json():
    ice = build_initial_quiver((1, 2, 1), A2)
    data = exchange_to_json(fold_exchange_matrix(ice))
    assert data["matrix"] == [[0], [-1], [1]]
    assert data["sizes"] == [1, 1, 1]
