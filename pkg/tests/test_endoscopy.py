import pytest
from hypothesis import given, strategies as st

from mpaz.endoscopy import (
    EndoDatum,
    LeviTriple,
    SplitSeq,
    ZTwist,
    abstract_triples,
    elliptic_data,
    endoscopic_levi,
    levi_preimages,
    levi_preimages_brute,
    preimage_sign_sum,
    preimage_to_triple,
    sign_sum,
    sign_sum_closed,
    sign_sum_recursive,
    split_sequences,
    triple_to_preimage,
)
from mpaz.levi import (
    LeviSOPair,
    LeviSp,
    enumerate_levis_so_pair,
    enumerate_levis_sp,
    semisimple_rank_so_pair,
)
from oracles import triples_brute


def test_elliptic_data():
    assert elliptic_data(0) == [EndoDatum(0, 0)]
    assert elliptic_data(2) == [EndoDatum(0, 2), EndoDatum(1, 1), EndoDatum(2, 0)]
    assert len(elliptic_data(5)) == 6


def test_datum_is_ordered():
    assert EndoDatum(1, 2) != EndoDatum(2, 1)


@pytest.mark.parametrize("d", elliptic_data(3))
def test_split_of_whole_group_is_empty_sequence(d):
    assert split_sequences(LeviSp.whole(3), d) == [SplitSeq(())]


def test_split_sequences_examples():
    M = LeviSp((1,), 1, 2)
    assert split_sequences(M, EndoDatum(1, 1)) == [SplitSeq(((1, 0),)), SplitSeq(((0, 1),))]
    assert split_sequences(M, EndoDatum(2, 0)) == [SplitSeq(((1, 0),))]


def test_split_sequences_rank_mismatch():
    with pytest.raises(ValueError):
        split_sequences(LeviSp((1,), 1, 2), EndoDatum(1, 0))


def test_endoscopic_levi_gl2():
    M, d = LeviSp((2,), 0, 2), EndoDatum(1, 1)
    M_s, L, z = endoscopic_levi(M, SplitSeq(((1, 1),)), d)
    assert L == LeviSOPair((1,), 0, 1, (1,), 0, 1)
    assert z.signs == (1, -1)
    assert M_s.as_levi() == LeviSp((1, 1), 0, 2)


def test_endoscopic_levi_gl1():
    _, L, z = endoscopic_levi(LeviSp((1,), 1, 2), SplitSeq(((1, 0),)), EndoDatum(1, 1))
    assert L == LeviSOPair((1,), 0, 1, (), 1, 1)
    assert z.is_trivial()


def test_endoscopic_levi_elliptic():
    _, L, z = endoscopic_levi(LeviSp.whole(2), SplitSeq(()), EndoDatum(2, 0))
    assert L == EndoDatum(2, 0).group()
    assert z.signs == ()


def test_zero_parts_are_omitted_in_order():
    M, d = LeviSp((1, 2, 1), 0, 4), EndoDatum(2, 2)
    _, L, z = endoscopic_levi(M, SplitSeq(((0, 1), (2, 0), (0, 1))), d)
    assert (L.gl_parts_p, L.gl_parts_pp) == ((2,), (1, 1))
    assert z.signs == (1, -1, -1)


def test_misaligned_split_rejected():
    with pytest.raises(ValueError):
        endoscopic_levi(LeviSp((2,), 0, 2), SplitSeq(((1, 0),)), EndoDatum(1, 1))


@pytest.mark.parametrize("n", range(0, 6))
def test_endoscopic_levi_rank(n):
    for d in elliptic_data(n):
        for M in enumerate_levis_sp(n):
            for s in split_sequences(M, d):
                _, L, _ = endoscopic_levi(M, s, d)
                k = len(s.primed) + len(s.double_primed)
                assert semisimple_rank_so_pair(L) == n - k


def test_ztwist_is_involution():
    z = ZTwist((1, -1, -1))
    blocks = ((2, 3), (4,), (5, 6))
    assert z.apply(z.apply(blocks, 11), 11) == tuple(tuple(sorted(b)) for b in blocks)


# -- M(L) --


def test_preimages_of_whole_group():
    d = EndoDatum(2, 1)
    pairs, triples = levi_preimages(d.group(), d)
    assert pairs == [(LeviSp.whole(3), SplitSeq(()))]
    assert triples == [LeviTriple(0, (), ())]


def test_preimages_of_torus_11():
    d = EndoDatum(1, 1)
    L = LeviSOPair((1,), 0, 1, (1,), 0, 1)
    pairs, triples = levi_preimages(L, d)
    assert sorted((t.k, t.Ibar_p, t.Ibar_pp) for t in triples) == [
        (1, (1,), (1,)), (2, (0, 1), (1, 0)), (2, (1, 0), (0, 1)),
    ]
    assert set(pairs) == set(levi_preimages_brute(L, d))


def test_preimages_10():
    d = EndoDatum(1, 0)
    L = LeviSOPair((1,), 0, 1, (), 0, 0)
    pairs, _ = levi_preimages(L, d)
    assert pairs == [(LeviSp((1,), 0, 1), SplitSeq(((1, 0),)))]


def test_preimages_reject_foreign_levi():
    with pytest.raises(ValueError):
        levi_preimages(LeviSOPair.whole(1, 1), EndoDatum(2, 0))


@pytest.mark.parametrize("n", range(0, 6))
def test_preimages_match_brute_force(n):
    for d in elliptic_data(n):
        for L in enumerate_levis_so_pair(d.n_p, d.n_pp):
            pairs, _ = levi_preimages(L, d)
            assert len(pairs) == len(set(pairs))
            assert set(pairs) == set(levi_preimages_brute(L, d))


@pytest.mark.parametrize("n", range(0, 7))
def test_preimage_sign_identity(n):
    for d in elliptic_data(n):
        for L in enumerate_levis_so_pair(d.n_p, d.n_pp):
            lhs, rhs = preimage_sign_sum(L, d)
            assert lhs == rhs


@given(st.integers(0, 6), st.integers(0, 6))
def test_triple_roundtrip(k_p, k_pp):
    parts_p = tuple(range(1, k_p + 1))
    parts_pp = tuple(range(2, k_pp + 2))
    d = EndoDatum(sum(parts_p), sum(parts_pp))
    L = LeviSOPair(parts_p, 0, d.n_p, parts_pp, 0, d.n_pp)
    pairs, triples = levi_preimages(L, d)
    for (M, s), t in zip(pairs, triples):
        assert preimage_to_triple(M, s) == t
        assert triple_to_preimage(t, d, 0) == (M, s)
        assert endoscopic_levi(M, s, d)[1] == L


# -- f(k', k'') --


@pytest.mark.parametrize("k, expected", [((0, 0), 1), ((1, 0), -1), ((1, 1), 1)])
def test_sign_sum_examples(k, expected):
    assert sign_sum(*k) == expected


@pytest.mark.parametrize("k_p", range(0, 5))
@pytest.mark.parametrize("k_pp", range(0, 5))
def test_abstract_triples_match_brute_force(k_p, k_pp):
    assert sorted(abstract_triples(k_p, k_pp)) == sorted(triples_brute(k_p, k_pp))


@pytest.mark.parametrize("k_p", range(0, 9))
def test_sign_sum_three_ways(k_p):
    for k_pp in range(0, 9):
        f = sign_sum(k_p, k_pp)
        assert f == sign_sum_recursive(k_p, k_pp) == sign_sum_closed(k_p, k_pp)
