import itertools
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from flagmod.coxeter import (
    build_system,
    bruhat_leq,
    cartan_matrix,
    format_subset,
    left_descents,
    parse_subset,
    parse_word,
    reduced_word,
    right_descents,
    support,
    telephone,
    word,
)

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "B2": 8, "B3": 48, "C3": 48, "G2": 12, "D4": 192, "F4": 1152}
INVOLUTIONS = {"A1": 2, "A2": 4, "A3": 10, "A4": 26, "B2": 6, "B3": 20, "G2": 8}


# -- independent model of type A as permutations --------------------------------


def as_permutation(w, n):
    """One-line notation of ``w`` in ``S_n``, with ``s_i`` swapping positions ``i, i+1``."""
    sigma = list(range(n))
    for i in reduced_word(w):
        sigma[i], sigma[i + 1] = sigma[i + 1], sigma[i]
    return tuple(sigma)


def inversions(sigma):
    return sum(1 for a, b in itertools.combinations(range(len(sigma)), 2) if sigma[a] > sigma[b])


def tableau_leq(x, w):
    n = len(x)
    return all(
        all(a <= b for a, b in zip(sorted(x[: i + 1]), sorted(w[: i + 1]))) for i in range(n)
    )


@pytest.mark.parametrize("label,order", sorted(ORDERS.items()))
def test_group_orders(systems, label, order):
    assert systems(label).order == order


@pytest.mark.parametrize("label,count", sorted(INVOLUTIONS.items()))
def test_involutions(systems, label, count):
    assert systems(label).count_involutions() == count


def test_cartan_conventions():
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))
    assert cartan_matrix("C", 3) == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))
    assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))


@pytest.mark.parametrize("label,highest", [("B2", (1, 2)), ("C2", (2, 1)), ("G2", (3, 2)), ("B3", (1, 2, 2)),
                                           ("C3", (2, 2, 1)), ("F4", (2, 3, 4, 2))])
def test_highest_roots_bourbaki(systems, label, highest):
    assert max(systems(label).positive_roots, key=sum) == highest
    assert cartan_matrix("A", 3) == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    with pytest.raises(ValueError):
        build_system("H3")
    with pytest.raises(ValueError):
        build_system("A0")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_a_matches_permutations(systems, n):
    W = systems(f"A{n - 1}")
    perms = {w: as_permutation(w, n) for w in W.elements}
    assert len(set(perms.values())) == factorial(n)
    for w, sigma in perms.items():
        assert w.length == inversions(sigma)
        assert right_descents(w) == {i for i in range(n - 1) if sigma[i] > sigma[i + 1]}
    for x in W.elements:
        for w in W.elements:
            assert bruhat_leq(x, w) == tableau_leq(perms[x], perms[w])


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3"])
def test_bruhat_subword_property(systems, label):
    W = systems(label)
    for w in W.elements:
        rw = reduced_word(w)
        below = {W.from_word(sub) for k in range(len(rw) + 1) for sub in itertools.combinations(rw, k)}
        assert below == {x for x in W.elements if bruhat_leq(x, w)}


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "B2", "B3", "G2", "A4", "D4"])
def test_partition_by_descent_sets(systems, label):
    W = systems(label)
    seen = []
    for J in W.subsets():
        wJ = W.longest_element(J)
        seen.extend(x * wJ for x in W.y_set(J))
        for x in W.y_set(J):
            assert right_descents(x * wJ) == J
    assert sorted(seen) == sorted(W.elements)
    assert sum(len(W.y_set(J)) for J in W.subsets()) == W.order


def test_a2_cosets(systems):
    W = systems("A2")
    J = {0}
    assert [word(x) for x in W.min_coset_reps(J)] == ["e", "s1", "s0*s1"]
    assert [word(x) for x in W.y_set(J)] == ["e", "s1"]
    assert word(W.longest_element(J)) == "s0"
    assert word(W.longest) in ("s0*s1*s0", "s1*s0*s1")
    assert W.longest.length == 3


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_longest_elements(systems, label):
    W = systems(label)
    for J in W.subsets():
        wJ = W.longest_element(J)
        par = W.parabolic(J)
        assert wJ.length == max(w.length for w in par)
        assert right_descents(wJ) == J
        assert left_descents(wJ) == J
        assert len(W.min_coset_reps(J)) * len(par) == W.order


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=12))
def test_word_roundtrip_and_shortlex(letters):
    W = build_system("A3")
    w = W.from_word(letters)
    rw = reduced_word(w)
    assert len(rw) == w.length
    assert W.from_word(rw) == w
    assert parse_word(W, word(w)) == w
    # ShortLex: lexicographically least among reduced words of w
    for k, i in enumerate(rw):
        assert i == min(left_descents(W.from_word(rw[k:])))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(0, 2), max_size=8))
def test_group_law(a, b):
    W = build_system("A3")
    x, y = W.from_word(a), W.from_word(b)
    assert x * y == W.from_word(a + b)
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert x * x.inverse() == W.identity
    assert support(x) <= set(a)


def test_parsing():
    W = build_system("A2")
    assert parse_word(W, "") == W.identity
    assert parse_word(W, "e") == W.identity
    assert parse_word(W, "s0*s1") == parse_word(W, "0 1")
    with pytest.raises(ValueError):
        parse_word(W, "s0*t1")
    with pytest.raises(ValueError):
        parse_word(W, "s5")
    assert parse_subset("[0,1]") == {0, 1}
    assert parse_subset("") == frozenset()
    assert format_subset({1, 0}) == "[0,1]"
    with pytest.raises(IndexError):
        W.simple(2)


def test_telephone_numbers():
    assert [telephone(n) for n in range(1, 7)] == [1, 2, 4, 10, 26, 76]
    for n in range(4, 10):
        assert telephone(n) > 2 ** (n - 1)
    for n in range(1, 4):
        assert telephone(n) == 2 ** (n - 1)
