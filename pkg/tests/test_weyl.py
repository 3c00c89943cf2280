import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kma.errors import InputError
from kma.gcm import GeneralizedCartanMatrix
from kma.oracles import distinct_group_elements
from kma.roots import Root, RootSystem
from kma.weyl import WeylGroup, chamber_action, rank2_compose, rank2_inverse, rank2_word

FIB = ((2, -3), (-3, 2))
TRI_23INF = ((2, -2, 0), (-2, 2, -1), (0, -1, 2))


def test_identity_word(fib):
    root = Root((2, -5))
    assert fib.weyl.act_on_root((), root) == root


def test_act_on_root_fixture(fib):
    # w_2 w_1 alpha_1 = w_2(-alpha_1) = -alpha_1 - 3 alpha_2.
    assert fib.weyl.act_on_root((2, 1), fib.rs.simple_root(1)) == Root((-1, -3))


def test_act_on_cartan_negates_own_coroot(fib):
    assert fib.weyl.act_on_cartan((1,), (1, 0)) == (-1, 0)
    assert fib.weyl.act_on_cartan((2,), (0, 1)) == (0, -1)


def test_act_on_cartan_unequal_lengths(mixed):
    # w_1 z_2 = z_2 - a_12 z_1 = z_2 + 2 z_1.
    assert mixed.weyl.act_on_cartan((1,), (0, 1)) == (2, 1)


def test_act_on_cartan_preserves_gram_exactly(fib):
    rng = random.Random(5)
    g = fib.rs.grams.compact_gram
    for _ in range(50):
        word = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 8)))
        c = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2))
        cw = fib.weyl.act_on_cartan(word, c)
        before = sum(c[i] * c[j] * g[i][j] for i in range(2) for j in range(2))
        after = sum(cw[i] * cw[j] * g[i][j] for i in range(2) for j in range(2))
        assert before == after


def test_root_and_cartan_actions_intertwine(tri23):
    rng = random.Random(11)
    a = tri23.gcm.entries
    for _ in range(50):
        word = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 7)))
        k = tuple(rng.randint(-4, 4) for _ in range(3))
        c = tuple(Fraction(rng.randint(-9, 9), 3) for _ in range(3))
        kw = tri23.weyl.act_on_root(word, Root(k)).coeffs
        cw = tri23.weyl.act_on_cartan(word, c)
        pairing = sum(k[i] * c[j] * a[i][j] for i in range(3) for j in range(3))
        moved = sum(kw[i] * cw[j] * a[i][j] for i in range(3) for j in range(3))
        assert pairing == moved


def test_reduce_fixtures(fib):
    assert fib.weyl.reduce((1, 1)) == ()
    assert fib.weyl.reduce((2, 1, 1, 2, 2)) == (2,)


def test_reduce_alternating_exhaustive(fib):
    for length in range(11):
        for bits in range(2 ** max(length, 1)):
            word = tuple(1 + ((bits >> k) & 1) for k in range(length))
            red = fib.weyl.reduce(word)
            assert all(red[j] != red[j + 1] for j in range(len(red) - 1))


def test_reduce_respects_braid_relations(tri23):
    # m(1,3) = 2 and m(2,3) = 3 in the 2-3-infinity triangle group.
    assert tri23.weyl.reduce((1, 3, 1, 3)) == ()
    assert tri23.weyl.reduce((2, 3, 2, 3, 2, 3)) == ()
    assert tri23.weyl.equal((1, 3), (3, 1))
    assert tri23.weyl.equal((2, 3, 2), (3, 2, 3))


def test_reduce_counts_match_orbit_oracle(tri23):
    words = {()}
    frontier = [()]
    for _ in range(4):
        nxt = []
        for w in frontier:
            for j in (1, 2, 3):
                cand = tri23.weyl.reduce(w + (j,))
                if len(cand) == len(w) + 1 and cand not in words:
                    words.add(cand)
                    nxt.append(cand)
        frontier = nxt
    assert len(words) == distinct_group_elements(TRI_23INF, 4)


def test_reduced_word_length_is_minimal(tri23):
    rng = random.Random(3)
    for _ in range(40):
        word = tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 7)))
        red = tri23.weyl.reduce(word)
        assert len(red) <= len(word)
        assert tri23.weyl.equal(word, red)


def test_rank2_label_round_trip(fib):
    for n in range(-12, 13):
        assert fib.weyl.rank2_label(rank2_word(n)) == n


def test_rank2_compose_fixtures():
    assert rank2_compose(2, 3) == 5
    assert rank2_compose(3, 2) == 1
    assert rank2_inverse(3) == 3
    assert rank2_inverse(2) == -2


def test_rank2_label_of_identity(fib):
    assert fib.weyl.rank2_label(()) == 0


def test_rank2_algebra_matches_words_exhaustively(fib):
    for n in range(-12, 13):
        inv_word = tuple(reversed(rank2_word(n)))
        assert fib.weyl.rank2_label(inv_word) == rank2_inverse(n)
        for k in range(-12, 13):
            assert fib.weyl.rank2_label(rank2_word(n) + rank2_word(k)) == rank2_compose(n, k)


def test_chamber_action_fixtures():
    assert chamber_action(1, 0) == -1
    assert chamber_action(2, 0) == 1
    for n in range(-10, 11):
        assert chamber_action(2, chamber_action(1, n)) == n + 2
        for j in (1, 2):
            assert chamber_action(j, chamber_action(j, n)) == n
    with pytest.raises(InputError):
        chamber_action(3, 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_rank2_compose_associative(n, k, m):
    lhs = rank2_compose(rank2_compose(n, k), m)
    rhs = rank2_compose(n, rank2_compose(k, m))
    assert lhs == rhs


def test_interior_point_fixture(fib):
    assert fib.weyl.interior_point() == (Fraction(-1), Fraction(-1))
    for i in (1, 2):
        assert fib.rs.cartan_pairing(i, fib.weyl.interior_point()) == 1


def test_word_validation(fib):
    with pytest.raises(InputError):
        fib.weyl.act_on_root((3,), fib.rs.simple_root(1))
