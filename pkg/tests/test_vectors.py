import random

import pytest
from hypothesis import given, strategies as st

from soclevec.macaulay import min_prev
from soclevec.monomial_algebra import closure_h_vector, closure_socle_vector, divisor_closure, last_monomials
from soclevec.vectors import (
    HVector,
    InvalidVector,
    SocleVector,
    all_h_vectors,
    all_socle_vectors,
    generic_index,
    max_socle_for_h,
    min_codimension,
    min_h_for_socle,
    random_h_vector,
    validate_h,
)

EXAMPLE_H = (1, 4, 7, 9, 11, 10, 7, 5)
EXAMPLE_S = (0, 0, 1, 0, 2, 4, 2, 5)


def test_validate_accepts_and_trims():
    assert validate_h(EXAMPLE_H).entries == EXAMPLE_H
    assert validate_h([1, 3, 2, 0, 0]).entries == (1, 3, 2)
    assert validate_h([1]).e == 0
    assert HVector((1, 3, 6, 10, 12, 14)).r == 3


@pytest.mark.parametrize(
    "seq,degree",
    [((1, 3, 7), 1), ((2, 1), 0), ((1, 2, 0, 1), 2), ((1, 2, 1, 2), 2), ((), 0)],
)
def test_validate_names_first_bad_degree(seq, degree):
    with pytest.raises(InvalidVector) as info:
        validate_h(seq)
    assert info.value.degree == degree


def test_socle_vector_rules():
    with pytest.raises(InvalidVector):
        SocleVector((0,))
    with pytest.raises(InvalidVector):
        SocleVector((1, 1))
    with pytest.raises(InvalidVector):
        SocleVector((0, 1, 0))
    with pytest.raises(InvalidVector):
        SocleVector((0, -1, 1))
    assert SocleVector((0, 0, 1)).is_gorenstein
    assert SocleVector((0, 0, 3)).is_level
    assert not SocleVector((0, 1, 3)).is_level


def test_indexing_past_the_top_is_zero():
    h = HVector((1, 2, 1))
    assert h[3] == 0 and h[10] == 0
    with pytest.raises(IndexError):
        h[-1]


def test_min_h_examples():
    assert min_h_for_socle(SocleVector(EXAMPLE_S)).entries == EXAMPLE_H
    assert min_h_for_socle(SocleVector((0, 1))).entries == (1, 1)
    assert min_h_for_socle(SocleVector((0, 0, 2))).entries == (1, min_prev(2, 2), 2)


def test_min_h_of_level_vector_is_iterated_min_prev():
    for e in range(2, 7):
        for top in range(1, 30):
            h = [top]
            for i in range(e, 1, -1):
                h.append(min_prev(h[-1], i))
            expected = (1,) + tuple(reversed(h))
            assert min_h_for_socle(SocleVector((0,) * e + (top,))).entries == expected


def test_max_socle_examples():
    assert max_socle_for_h(HVector(EXAMPLE_H)).entries == EXAMPLE_S
    assert max_socle_for_h(HVector((1, 3, 6, 10, 12, 14))).entries == (0, 0, 0, 1, 0, 14)
    for r in range(1, 6):
        assert max_socle_for_h(HVector((1, r))).entries == (0, r)
    with pytest.raises(InvalidVector):
        max_socle_for_h(HVector((1,)))


def test_min_codimension_examples():
    assert min_codimension(SocleVector(EXAMPLE_S)) == 4
    assert min_codimension(SocleVector((0, 1))) == 1


def test_generic_index_examples():
    assert generic_index(HVector((1, 3, 6, 10, 12, 14))) == 3
    assert generic_index(HVector((1, 4, 7, 9))) == 1
    assert generic_index(HVector((1, 5))) == 1


def test_round_trip_corpus():
    count = 0
    for s in all_socle_vectors():
        h = min_h_for_socle(s)
        assert max_socle_for_h(h) == s
        count += 1
    assert count == 1023


def test_max_socle_of_any_h_returns_h_under_min_h():
    for r in (2, 3):
        for h in all_h_vectors(r, 5):
            if h.e >= 1:
                assert min_h_for_socle(max_socle_for_h(h)) <= h


def test_min_h_is_monotone_in_s():
    corpus = [s for s in all_socle_vectors(4, 2)]
    by_length = {}
    for s in corpus:
        by_length.setdefault(len(s), []).append(s)
    for group in by_length.values():
        for a in group:
            for b in group:
                if a <= b:
                    assert min_h_for_socle(a) <= min_h_for_socle(b)


def test_min_h_is_realized_by_lex_monomial_inverse_system():
    # The last s_d monomials in each degree, closed under division, give the minimal h.
    for s in all_socle_vectors(4, 2):
        h = min_h_for_socle(s)
        r = h.r
        gens = {}
        for d in range(s.e, 0, -1):
            derived_here = min_prev(h[d + 1], d + 1) if d < s.e else 0
            piece = last_monomials(r, d, derived_here + s[d])
            gens[d] = list(piece[: s[d]])
        closure = divisor_closure(gens)
        assert closure_h_vector(closure) == h
        assert closure_socle_vector(closure) == s


def test_corpus_sizes():
    assert sum(1 for _ in all_h_vectors(2, 6)) == 120
    assert sum(1 for _ in all_h_vectors(3, 5)) == 813


@given(st.integers(0, 10**6))
def test_random_h_vectors_round_trip(seed):
    h = random_h_vector(random.Random(seed), max_r=5, max_e=8)
    if h.e >= 1:
        s = max_socle_for_h(h)
        assert min_h_for_socle(s) <= h
        assert s[h.e] == h[h.e]
        assert max_socle_for_h(min_h_for_socle(s)) == s


def test_json_shapes():
    assert HVector((1, 2, 1)).to_json() == {"h": [1, 2, 1]}
    assert SocleVector((0, 0, 1)).to_json() == {"s": [0, 0, 1]}
    assert str(HVector((1, 2, 1))) == "1 2 1"
