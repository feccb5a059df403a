import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from soclevec.macaulay import binom, macaulay_bound, min_prev
from soclevec.monomial_algebra import (
    MonomialIdeal,
    closure_h_vector,
    closure_socle_vector,
    deglex_cmp,
    dim_r,
    divisor_closure,
    first_monomials,
    format_monomial,
    hilbert_function,
    ideal_of_closure,
    last_monomials,
    lex_ideal_for_h,
    lex_inverse_system,
    lower_shadow,
    m_of,
    minimal_generators,
    monomials,
    parse_monomial,
    socle_vector,
    upper_shadow,
)
from soclevec.vectors import HVector, all_h_vectors, max_socle_for_h, random_h_vector

EX43 = HVector((1, 3, 6, 10, 12, 14))


def names(monos):
    return [format_monomial(m) for m in monos]


def test_deglex_order():
    assert deglex_cmp((3, 1, 0), (3, 0, 1)) == 1
    assert deglex_cmp((2, 0), (1, 1)) == 1
    assert deglex_cmp((1, 1), (1, 1)) == 0
    assert deglex_cmp((0, 2), (1, 1)) == -1
    with pytest.raises(ValueError):
        deglex_cmp((1, 0), (1, 0, 0))
    assert names(monomials(3, 4)[:4]) == ["x^4", "x^3 y", "x^3 z", "x^2 y^2"]


def test_monomial_lists_are_complete_and_sorted():
    for r in range(1, 5):
        for d in range(0, 6):
            ms = monomials(r, d)
            assert len(ms) == dim_r(r, d) == binom(r - 1 + d, d)
            assert len(set(ms)) == len(ms)
            assert all(deglex_cmp(a, b) == 1 for a, b in zip(ms, ms[1:]))


def test_m_of():
    assert m_of((2, 3, 0)) == 2
    assert m_of((0, 0, 6)) == 3
    assert m_of((5, 0, 1)) == 3


def test_format_and_parse():
    assert format_monomial((2, 1, 0)) == "x^2 y"
    assert format_monomial((0, 0, 0)) == "1"
    assert format_monomial((2, 0, 1, 0)) == "x1^2*x3"
    assert format_monomial((1, 1), letter="y") == "y1*y2"
    for r in range(1, 5):
        for m in monomials(r, 3):
            assert parse_monomial(format_monomial(m), r) == m
            assert parse_monomial(format_monomial(m, letter="y"), r) == m
    with pytest.raises(ValueError):
        parse_monomial("x4", 3)
    with pytest.raises(ValueError):
        parse_monomial("q^2", 3)


def test_lex_ideal_example_pieces():
    ideal = lex_ideal_for_h(EX43)
    assert names(sort_pieces(ideal, 4)) == ["x^4", "x^3 y", "x^3 z"]
    assert names(sort_pieces(ideal, 5)) == [
        "x^5", "x^4 y", "x^4 z", "x^3 y^2", "x^3 y z", "x^3 z^2", "x^2 y^3",
    ]
    assert ideal.piece(6) == frozenset(monomials(3, 6))
    assert ideal.is_lex_segment()
    assert hilbert_function(ideal) == EX43


def sort_pieces(ideal, d):
    return [m for m in monomials(ideal.r, d) if m in ideal.piece(d)]


def test_lex_ideal_small_cases():
    ideal = lex_ideal_for_h(HVector((1, 2, 1, 1)))
    assert names(sort_pieces(ideal, 2)) == ["x^2", "x y"]
    assert names(sort_pieces(ideal, 3)) == ["x^3", "x^2 y", "x y^2"]
    ideal = lex_ideal_for_h(HVector((1, 3)))
    assert ideal.piece(1) == frozenset()
    assert ideal.piece(2) == frozenset(monomials(3, 2))


def test_hilbert_function_of_zero_ideal():
    for r in range(1, 5):
        ideal = MonomialIdeal.from_pieces(r, {}, 2)
        assert hilbert_function(ideal) == HVector((1, r, binom(r + 1, 2)))


def test_socle_examples():
    lex = lex_ideal_for_h(EX43)
    assert socle_vector(lex).entries == (0, 0, 0, 1, 0, 14)
    # The degree-3 socle element is x^3.
    socle_3 = [
        m for m in monomials(3, 3)
        if m not in lex.piece(3) and all(
            tuple(a + (k == j) for j, a in enumerate(m)) in lex.piece(4) for k in range(3)
        )
    ]
    assert socle_3 == [(3, 0, 0)]
    for r in range(1, 5):
        everything = MonomialIdeal.from_pieces(r, {2: monomials(r, 2)})
        assert socle_vector(everything).entries == (0, r)


def test_ideal_validation():
    with pytest.raises(ValueError):
        MonomialIdeal.from_pieces(2, {1: [(1, 0)], 2: [(2, 0)]})
    with pytest.raises(ValueError):
        MonomialIdeal.from_pieces(2, {0: [(0, 0)]})
    with pytest.raises(ValueError):
        MonomialIdeal.from_pieces(2, {2: [(1, 0)]})
    not_artinian = MonomialIdeal.from_pieces(2, {2: [(2, 0)]})
    with pytest.raises(ValueError):
        socle_vector(not_artinian)


def test_shadow_sizes_match_macaulay_bound():
    # Shadow of a lex segment is the lex segment of the bound's size.
    for r in range(2, 5):
        for d in range(1, 5):
            for count in range(1, dim_r(r, d) + 1):
                tail = last_monomials(r, d, count)
                shadow = lower_shadow(tail)
                if d >= 2:
                    assert len(shadow) == min_prev(count, d)
                assert shadow == set(last_monomials(r, d - 1, len(shadow)))
                head = first_monomials(r, d, dim_r(r, d) - count)
                up = upper_shadow(head, r)
                assert dim_r(r, d + 1) - len(up) == macaulay_bound(count, d)


def test_divisor_closure_examples():
    closure = divisor_closure({2: [(1, 1)]})
    assert closure == {0: {(0, 0)}, 1: {(1, 0), (0, 1)}, 2: {(1, 1)}}
    assert closure_h_vector(closure).entries == (1, 2, 1)
    closure = divisor_closure({5: [(5, 0, 0)]})
    assert closure_h_vector(closure).entries == (1,) * 6


def test_lex_inverse_system_tops():
    # The last s_e monomials of degree e differentiate onto the last min_prev(h_e, e) monomials.
    for h in all_h_vectors(3, 5):
        if h.e < 2:
            continue
        tail = last_monomials(3, h.e, h[h.e])
        assert lower_shadow(tail) == set(last_monomials(3, h.e - 1, min_prev(h[h.e], h.e)))


def test_lex_inverse_system_is_dual_to_lex_ideal():
    for r in (2, 3):
        for h in all_h_vectors(r, 5):
            if h.e < 1:
                continue
            closure = lex_inverse_system(h)
            assert ideal_of_closure(closure, r) == lex_ideal_for_h(h)
            assert closure_h_vector(closure) == h
            assert closure_socle_vector(closure) == max_socle_for_h(h)
            assert socle_vector(lex_ideal_for_h(h)) == max_socle_for_h(h)


def random_order_ideal(rng, r, top):
    gens = {}
    for _ in range(rng.randint(1, 4)):
        d = rng.randint(1, top)
        gens.setdefault(d, []).append(rng.choice(monomials(r, d)))
    return gens


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_closure_and_ideal_agree(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 4)
    gens = random_order_ideal(rng, r, 5)
    closure = divisor_closure(gens)
    ideal = ideal_of_closure(closure, r)
    assert hilbert_function(ideal) == closure_h_vector(closure)
    assert socle_vector(ideal) == closure_socle_vector(closure)
    mins = minimal_generators(closure)
    assert divisor_closure(mins) == closure
    assert sum(len(g) for g in mins.values()) == sum(closure_socle_vector(closure))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_lex_ideal_round_trip_random(seed):
    h = random_h_vector(random.Random(seed), max_r=4, max_e=6)
    if h.e >= 1:
        ideal = lex_ideal_for_h(h)
        assert hilbert_function(ideal) == h
        assert MonomialIdeal.from_json(ideal.to_json()) == ideal


def test_generators_of_lex_ideal():
    ideal = lex_ideal_for_h(EX43)
    gens = ideal.all_generators()
    assert names(gens[4]) == ["x^4", "x^3 y", "x^3 z"]
    assert names(gens[5]) == ["x^2 y^3"]
    assert sum(len(g) for g in gens.values()) == 3 + 1 + len(gens[6])


def test_brute_force_hilbert_function():
    # Count standard monomials directly through the ideal property.
    for r in (2, 3):
        for h in itertools.islice(all_h_vectors(r, 4), 40):
            if h.e < 1:
                continue
            ideal = lex_ideal_for_h(h)
            counts = [sum(1 for m in monomials(r, d) if m not in ideal.piece(d)) for d in range(h.e + 1)]
            assert tuple(counts) == h.entries
