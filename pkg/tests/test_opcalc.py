import pytest
from hypothesis import given, settings, strategies as st

from mpaz.endoscopy import EndoDatum, SplitSeq, elliptic_data, sign_sum
from mpaz.levi import LeviSOPair, LeviSp, enumerate_levis_sp
from mpaz.opcalc import (
    D,
    DSLSyntaxError,
    Ind,
    MetaplecticSp,
    MetaplecticType,
    Mp,
    OpExpr,
    OpTypeError,
    Res,
    SOPair,
    StuckPattern,
    T,
    Z,
    check_commutation,
    expand_D,
    normalize,
    parse,
    so_group,
)
from mpaz.opcalc import rewrite


def test_group_identity():
    assert MetaplecticType((), 3) == MetaplecticSp(3)
    assert MetaplecticType((1, 2), 0) != MetaplecticType((2, 1), 0)


# -- parsing --


def test_parse_single_transfer():
    e = parse("T[SO3xSO3 -> MSp2]")
    assert e == OpExpr.atom(T.elliptic(EndoDatum(1, 1)))
    assert e.items()[0][1] == 1


def test_parse_two_atom_word():
    e = parse("R[MSp2 -> GL1] . T[SO3xSO3 -> MSp2]")
    (word, coef), = e.items()
    assert coef == 1 and len(word) == 2
    assert word[0] == Res(Mp((), 2), Mp((1,), 1))


def test_parse_backwards_restriction():
    with pytest.raises(OpTypeError, match="R\\[parent -> levi\\]"):
        parse("I[MSp2 <- GL1] . R[GL1 <- MSp2]")


def test_parse_composition_type_error_names_both_atoms():
    with pytest.raises(OpTypeError) as exc:
        parse("T[SO3xSO3 -> MSp2] . R[MSp2 -> GL1]")
    assert "T[" in str(exc.value) and "R[" in str(exc.value)


@pytest.mark.parametrize("text, pos", [
    ("T[SO3xSO3 -> MSp2", 17),
    ("T[SO3xSO3 => MSp2]", 10),
    ("2 * ", 4),
    ("T[SO2xSO3 -> MSp2]", 2),
])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(DSLSyntaxError) as exc:
        parse(text)
    assert exc.value.pos == pos


def test_parse_coefficients_and_signs():
    e = parse("3 * T[SO3xSO1 -> MSp1] - Id + Id")
    assert e == 3 * OpExpr.atom(T.elliptic(EndoDatum(1, 0)))
    assert parse("0").is_zero()


def test_whitespace_insensitive():
    assert parse("R[ MSp(2)->GL(1) x MSp(1) ].T[SO(3) x SO(3)->MSp(2)]") == parse(
        "R[MSp2 -> GL1] . T[SO3xSO3 -> MSp2]"
    )


def test_ambiguous_transfer_needs_split():
    with pytest.raises(OpTypeError, match="ambiguous"):
        parse("T[GL(1)xSO(1)xGL(1)xSO(1) -> GL(1,1)xMSp(0)]")
    e = parse("T[GL(1)xSO(1)xGL(1)xSO(1) -> GL(1,1)xMSp(0) @ (1,0),(0,1)]")
    (word, _), = e.items()
    assert word[0].split == SplitSeq(((1, 0), (0, 1)))


def test_inert_prefix_roundtrip():
    t = T.elliptic(EndoDatum(1, 1), (2,))
    assert str(t.domain) == "GL(2)|SO(3)xSO(3)"
    assert parse(str(OpExpr.atom(t))) == OpExpr.atom(t)


def test_levi_must_be_standard():
    with pytest.raises(OpTypeError):
        Ind(Mp((), 2), Mp((3,), 0))


# -- D --


def test_expand_D_rank_one():
    e = expand_D(MetaplecticSp(1))
    G, T1 = Mp((), 1), Mp((1,), 0)
    assert e == -1 * OpExpr.identity() + OpExpr.word(Ind(G, T1), Res(G, T1))
    assert len(e) == 2


def test_expand_D_rank_zero():
    assert expand_D(MetaplecticSp(0)) == OpExpr.identity()


def test_expand_D_so3_so3():
    e = expand_D(so_group(EndoDatum(1, 1)))
    assert len(e) == 4
    assert e.coefficient(()) == 1


def test_D_atom_expands_in_normalize():
    assert normalize(parse("D[MSp1]")) == expand_D(MetaplecticSp(1))


# -- rewriting --


def test_z_twice_is_identity():
    assert normalize(parse("Z[(1,1)] . Z[(1,1)]")) == OpExpr.identity()


def test_trivial_z_is_dropped():
    assert parse("Z[(1,0)]") == OpExpr.identity()


def test_jacquet_rank_one():
    e = normalize(parse("R[MSp1 -> GL1] . T[SO3xSO1 -> MSp1]"))
    (word, coef), = e.items()
    assert coef == 1
    assert [type(a) for a in word] == [T, Res]
    assert word[0].split == SplitSeq(((1, 0),))


def test_jacquet_keeps_twist():
    e = normalize(parse("R[MSp1 -> GL1] . T[SO1xSO3 -> MSp1]"))
    (word, _), = e.items()
    assert [type(a) for a in word] == [T, Z, Res]


def test_jacquet_sum_over_splits():
    # E(GL(1) x Sp(2), (1,1)) has two elements
    e = normalize(parse("R[MSp2 -> GL1] . T[SO3xSO3 -> MSp2]"))
    assert len(e) == 2


def test_commutation_rank_two_normalizes_to_zero():
    e = parse("D[MSp2] . T[SO3xSO3 -> MSp2] - T[SO3xSO3 -> MSp2] . D[SO3xSO3]")
    assert normalize(e).is_zero()


def test_stuck_pattern():
    e = parse("R[GL(1)xMSp(1) -> GL(1,1)xMSp(0)] . T[GL(1)xSO(1)xSO(3) -> GL(1)xMSp(1)]")
    with pytest.raises(StuckPattern):
        normalize(e)


def _pool():
    d = EndoDatum(1, 1)
    t = OpExpr.atom(T.elliptic(d))
    G, Gb = Mp((), 2), so_group(d)
    return [
        expand_D(G) @ t,
        t @ expand_D(Gb),
        parse("R[MSp2 -> GL1] . T[SO3xSO3 -> MSp2]"),
        parse("I[MSp2 <- GL1] . R[MSp2 -> GL1] . T[SO3xSO3 -> MSp2]"),
        parse("Z[(1,1)] . Z[(1,1)]"),
        parse("I[MSp2 <- GL(1,1)] . R[MSp2 -> GL(1,1)] . T[SO3xSO3 -> MSp2]"),
        t,
    ]


POOL = _pool()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, len(POOL) - 1)), max_size=5))
def test_normalize_idempotent_and_linear(combo):
    e = OpExpr()
    parts = OpExpr()
    for c, i in combo:
        e = e + c * POOL[i]
        parts = parts + c * normalize(POOL[i])
    nf = normalize(e)
    assert normalize(nf) == nf
    assert nf == parts


@pytest.mark.parametrize("e", POOL)
def test_print_parse_roundtrip(e):
    assert parse(str(e)) == e
    nf = normalize(e)
    assert parse(str(nf)) == nf


def test_normal_forms_have_no_redexes():
    for n in range(1, 5):
        for d in elliptic_data(n):
            e = expand_D(Mp((), n)) @ OpExpr.atom(T.elliptic(d))
            for word, _ in normalize(e).items():
                assert rewrite._step(word) is None
                assert isinstance(word[0], T)


# -- commutation --


def test_commutation_rank_one():
    rep = check_commutation(1, EndoDatum(1, 0))
    assert rep.passed and rep.residual.is_zero()
    assert rep.first_residual_word is None


@pytest.mark.parametrize("n", range(0, 7))
def test_commutation_every_datum(n):
    for d in elliptic_data(n):
        rep = check_commutation(n, d)
        assert rep.passed, rep.first_residual_word
        assert len(rep.table) == 2**n


def test_coefficient_table_uses_sign_lemma():
    d = EndoDatum(2, 1)
    rep = check_commutation(3, d)
    for row in rep.table:
        L = row.levi.levi
        assert row.via_sign_lemma == (-1) ** 3 * sign_sum(L.k_p, L.k_pp)
        assert row.coefficient == row.expected


def test_non_elliptic_gl1_sp4():
    M = LeviSp((1,), 2, 3)
    for d in elliptic_data(2):
        rep = check_commutation(3, d, M)
        assert rep.passed
        assert len(rep.chain) == 4
        assert "induction commutes with D" in rep.chain[1]


@pytest.mark.parametrize("n", range(1, 5))
def test_non_elliptic_all_levis(n):
    for M in enumerate_levis_sp(n):
        for d in elliptic_data(M.m):
            assert check_commutation(n, d, M).passed


def test_wrong_datum_rejected():
    with pytest.raises(ValueError):
        check_commutation(3, EndoDatum(1, 1))
    with pytest.raises(ValueError):
        check_commutation(3, EndoDatum(2, 1), LeviSp((1,), 2, 3))


# negative controls: break one ingredient and the check must notice


def test_dropping_splits_breaks_commutation(monkeypatch):
    real = rewrite.split_sequences
    monkeypatch.setattr(rewrite, "split_sequences", lambda M, d: real(M, d)[:1])
    rewrite._normal_form.cache_clear()
    try:
        rep = check_commutation(2, EndoDatum(1, 1))
        assert not rep.passed
        assert rep.first_residual_word
    finally:
        rewrite._normal_form.cache_clear()


def test_without_z_cancellation_residual_survives(monkeypatch):
    real = rewrite._step

    def no_zz(word):
        for a, b in zip(word, word[1:]):
            if isinstance(a, Z) and isinstance(b, Z):
                return None
        return real(word)

    monkeypatch.setattr(rewrite, "_step", no_zz)
    rewrite._normal_form.cache_clear()
    try:
        assert not check_commutation(2, EndoDatum(1, 1)).passed
    finally:
        rewrite._normal_form.cache_clear()
