import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mpaz.endoscopy import EndoDatum, elliptic_data
from mpaz.levi import LeviSOPair
from mpaz.lparams import (
    ORTH,
    SYMPL,
    LParameter,
    RhoLabel,
    block_dim,
    corollary_data,
    factorizations,
    format_lparam,
    is_discrete,
    parse_lparam,
    random_discrete,
    validate_discrete,
)

R1 = RhoLabel("r1", 1, ORTH, 1)
R2 = RhoLabel("r2", 2, SYMPL, -1)
PHI = LParameter(((R1, 2), (R2, 1)), 2)


def subset_count(blocks, target):
    """Number of block subsets whose dimensions add to target."""
    dims = [block_dim(b) for b in blocks]
    return sum(
        1
        for r in range(len(dims) + 1)
        for idx in combinations(range(len(dims)), r)
        if sum(dims[i] for i in idx) == target
    )


def test_two_block_parameter_is_discrete():
    assert validate_discrete(PHI) == []


def test_duplicate_block():
    errs = validate_discrete(LParameter(((R1, 2), (R1, 2)), 2))
    assert any("multiplicity" in e for e in errs)


def test_orthogonal_a_one_rejected():
    errs = validate_discrete(LParameter(((RhoLabel("o", 2, ORTH, 1), 1),), 1))
    assert any("non-symplectic block" in e and "(o,1)" in e for e in errs)


def test_wrong_rank_rejected():
    errs = validate_discrete(LParameter(PHI.blocks, 3))
    assert any("dimension" in e for e in errs)


def test_odd_symplectic_rho_rejected():
    with pytest.raises(ValueError):
        RhoLabel("bad", 3, SYMPL, 1)


def test_factorizations_examples():
    assert len(factorizations(PHI, EndoDatum(1, 1))) == 2
    (only,) = factorizations(PHI, EndoDatum(2, 0))
    assert set(only[0].blocks) == set(PHI.blocks) and only[1].blocks == ()
    big = LParameter(((RhoLabel("q", 4, SYMPL, 1), 1),), 2)
    assert factorizations(big, EndoDatum(1, 1)) == []


def test_corollary_second_factor():
    (pp, ppp), = [f for f in factorizations(PHI, EndoDatum(1, 1)) if (R2, 1) in f[1].jord]
    c = corollary_data(pp, ppp, (R2, 1))
    assert c.levi_choice == (0, 2)
    assert (c.x, c.alpha, c.m) == (0, -1, 0)
    assert c.M_bang is None  # GL(2) does not fit in SO(3)


def test_corollary_first_factor():
    pp, ppp = [f for f in factorizations(PHI, EndoDatum(1, 1)) if (R1, 2) in f[0].jord][0]
    c = corollary_data(pp, ppp, (R1, 2))
    assert c.levi_choice == (1, 0)
    assert (c.x, c.alpha, c.m) == (Fraction(1, 2), 1, 1)
    assert c.M_bang == LeviSOPair((1,), 0, 1, (), 1, 1)


def test_corollary_foreign_block():
    pp, ppp = factorizations(PHI, EndoDatum(1, 1))[0]
    with pytest.raises(ValueError, match="neither"):
        corollary_data(pp, ppp, (RhoLabel("z", 1, ORTH, 1), 2))


def test_text_roundtrip():
    assert parse_lparam(format_lparam(PHI)) == PHI


def test_text_comments_and_inferred_rank():
    text = """
    # two blocks
    rho r1 dim=1 duality=orth omega=+1 ; a=2
    rho r2 dim=2 duality=sympl omega=-1 ; a=1   # trailing
    """
    assert parse_lparam(text) == PHI


@pytest.mark.parametrize("text", [
    "rho r1 dim=1 duality=weird omega=+1 ; a=2",
    "rho r1 dim=1 duality=orth omega=+1",
    "n = two",
    "rho r1 dim=1 duality=orth omega=1 ; a=2\nrho r1 dim=2 duality=orth omega=1 ; a=4",
])
def test_text_errors(text):
    with pytest.raises(ValueError):
        parse_lparam(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32))
def test_random_parameters_partition(n, seed):
    phi = random_discrete(n, random.Random(seed))
    assert is_discrete(phi), validate_discrete(phi)
    assert parse_lparam(format_lparam(phi)) == phi
    for d in elliptic_data(n):
        facs = factorizations(phi, d)
        assert len(facs) == subset_count(phi.blocks, 2 * d.n_p)
        for a, b in facs:
            assert is_discrete(a) and is_discrete(b)
            assert a.jord | b.jord == phi.jord and not (a.jord & b.jord)
            for block in phi.blocks:
                c = corollary_data(a, b, block)
                assert c.x >= 0 and (2 * c.x).denominator == 1
                assert c.alpha in (1, -1)
                assert c.m == n - block[0].dim
