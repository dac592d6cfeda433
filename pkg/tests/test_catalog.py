import pytest

from alg2d.automorphisms import is_automorphism
from alg2d.catalog import (
    CharClass, FamilyId, arity, build, expected_aut, expected_der, families, format_params,
    param_names, param_sampler, twin,
)
from alg2d.derivations import Subspace, subspace_equal
from alg2d.errors import ArityError, CharMismatch, InfiniteField
from alg2d.fields import GF, QuadRationals, Rationals
from alg2d.msc import MSC, der_residual

Q = Rationals()


def fam(text):
    return FamilyId.parse(text)


def test_build_examples():
    assert build(fam("A9"), (), GF(5)) == MSC(GF(5), [[2, 0, 0, 0], [1, 4, 3, 0]])
    assert build(fam("A12@char3"), (), GF(3)) == MSC(GF(3), [[0, 0, 0, 0], [1, 0, 0, 0]])
    with pytest.raises(CharMismatch):
        build(fam("A9"), (), GF(3))
    with pytest.raises(CharMismatch):
        build(fam("A3@char2"), (0, 0), GF(5))
    with pytest.raises(ArityError):
        build(fam("A4"), (1,), GF(5))
    with pytest.raises(ArityError):
        build(fam("A4"), {"alpha1": 1}, GF(5))


def test_build_a1_shape_is_shared():
    params = (2, 3, 1, 4)
    for cc, F in ((CharClass.NOT_TWO_THREE, GF(5)), (CharClass.TWO, GF(4)), (CharClass.THREE, GF(9))):
        a1, a2, a4, b1 = (F.element(x) for x in params)
        want = MSC(F, [[a1, a2, a2 + 1, a4], [b1, -a1, -a1 + 1, -a2]])
        assert build(FamilyId(1, cc), params, F) == want


def test_char2_a3_uses_corrected_matrix():
    F = GF(4)
    r = F.root()
    A = build(fam("A3@char2"), (r, 1), F)
    assert A == MSC(F, [[r, 1, 1, 0], [0, 1, 1 - r, 1]])


def test_build_accepts_mapping():
    F = GF(7)
    assert build(fam("A4"), {"alpha1": 2, "beta2": 3}, F) == build(fam("A4"), (2, 3), F)


def test_family_names():
    assert fam("A3@char2").name == "A3@char2"
    assert fam("A3").char_class is CharClass.NOT_TWO_THREE
    assert str(fam("A10@neq23")) == "A10@neq23"
    with pytest.raises(ValueError):
        FamilyId(13, CharClass.TWO)
    assert param_names(fam("A1")) == ("alpha1", "alpha2", "alpha4", "beta1")
    assert [arity(f) for f in families(CharClass.TWO)] == [4, 3, 2, 2, 1, 2, 1, 1, 0, 0, 0, 0]
    assert CharClass.of(GF(9)) is CharClass.THREE and CharClass.of(QuadRationals(3)) is CharClass.NOT_TWO_THREE
    assert CharClass.parse("@char2") is CharClass.TWO


def test_expected_aut_examples():
    assert expected_aut(fam("A1"), (1, 2, 3, 4), GF(5)).shape == "Trivial"
    F = QuadRationals(3)
    desc = expected_aut(fam("A11"), (), F)
    assert desc.shape == "FiniteList" and len(desc.elements) == 6 and not desc.omissions
    half = F(1) / F(2)
    r = F.root()
    assert desc.contains([[half, half * r], [half * r, -half]])
    para = expected_aut(fam("A12@char3"), (), GF(3))
    assert para.shape == "Parabolic" and para.point_count() == 6


def test_case_splits():
    F = GF(7)
    assert expected_aut(fam("A2"), (3, 0, 2), F).shape == "OrderTwoDiag"
    assert expected_aut(fam("A2"), (3, 1, 2), F).shape == "Trivial"
    assert expected_aut(fam("A4"), (2, 3), F).shape == "Borel"
    assert expected_aut(fam("A4"), (2, 4), F).shape == "Torus"
    assert expected_aut(fam("A8"), (F(1) / F(3),), F).shape == "Borel"
    assert expected_aut(fam("A8@char3"), (2,), GF(3)).shape == "Torus"


def test_expected_der_examples():
    assert expected_der(fam("A11"), (), GF(7)).dim == 0
    assert subspace_equal(expected_der(fam("A12"), (), Q), Subspace.span(Q, [(1, 0, 0, 2), (0, 0, 1, 0)]))
    F = GF(3)
    assert subspace_equal(expected_der(fam("A10@char3"), (), F), Subspace.span(F, [(1, 0, 0, 0), (0, 1, 0, 0)]))


def test_param_sampler():
    assert len(param_sampler(fam("A8@char3"), GF(3))) == 3
    assert len(param_sampler(fam("A1@char2"), GF(2))) == 16
    assert param_sampler(fam("A12"), GF(5)) == [()]
    with pytest.raises(InfiniteField):
        param_sampler(fam("A4"), Q)
    a = param_sampler(fam("A1"), GF(7), "random", n=5, seed=3)
    assert a == param_sampler(fam("A1"), GF(7), "random", n=5, seed=3)
    assert len(a) == 5 and all(len(t) == 4 for t in a)
    assert len(param_sampler(fam("A4"), Q, "random", n=4)) == 4


def test_twin_and_formatting():
    F = GF(5)
    assert twin(fam("A2"), (0, 1, 0), F) == (F(0), F(4), F(0))
    with pytest.raises(ValueError):
        twin(fam("A3"), (1, 2), F)
    assert format_params((F(1), F(4))) == "(1,4)"
    assert format_params(()) == "()"


SOUNDNESS_CELLS = [
    (f, F)
    for cc, fields in (
        (CharClass.NOT_TWO_THREE, (GF(7), GF(13))),
        (CharClass.TWO, (GF(4),)),
        (CharClass.THREE, (GF(9),)),
    )
    for F in fields
    for f in families(cc)
]


@pytest.mark.parametrize("f,F", SOUNDNESS_CELLS, ids=[f"{f}-{F}" for f, F in SOUNDNESS_CELLS])
def test_expected_entries_are_sound(f, F):
    """Every listed automorphism and derivation satisfies its defining equation."""
    for params in param_sampler(f, F, "random", n=15, seed=11):
        A = build(f, params, F)
        desc = expected_aut(f, params, F)
        for g in (desc.elements if desc.is_explicit else desc.sample(10, seed=1)):
            assert is_automorphism(A, g), (params, str(g))
        for D in expected_der(f, params, F).matrices():
            assert der_residual(A, D).is_zero(), (params, str(D))
