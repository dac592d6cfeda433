import pytest

from alg2d.automorphisms import (
    GroupDescription, automorphisms_bruteforce, conjugate_group, group_sanity, is_automorphism,
    match_description,
)
from alg2d.catalog import CharClass, FamilyId, build, expected_aut, families, param_sampler
from alg2d.errors import CapExceeded, InfiniteField
from alg2d.fields import GF, QuadRationals, Rationals
from alg2d.linalg import GL2Element, gl2_enumerate
from alg2d.msc import MSC, transform

from conftest import scalar_aut

Q = Rationals()


def fam(text):
    return FamilyId.parse(text)


def test_identity_is_always_an_automorphism():
    A = MSC(GF(7), [[1, 2, 3, 4], [5, 6, 0, 1]])
    assert is_automorphism(A, [[1, 0], [0, 1]])
    assert not is_automorphism(A, [[0, 0], [0, 0]])


def test_a11_sqrt3_element_over_q_sqrt3():
    F = QuadRationals(3)
    r = F.root()
    half = F(1) / F(2)
    g = [[half, half * r], [half * r, -half]]
    assert is_automorphism(build(fam("A11"), (), F), g)


def test_a10_rejects_lower_unipotent():
    assert not is_automorphism(build(fam("A10"), (), GF(5)), [[1, 0], [1, 1]])


def test_bruteforce_examples():
    F5, F3 = GF(5), GF(3)
    assert automorphisms_bruteforce(build(fam("A1"), (0, 0, 0, 0), F5)) == [GL2Element.identity(F5)]
    got = automorphisms_bruteforce(build(fam("A12@char3"), (), F3))
    want = {GL2Element.of(F3, [[a, 0], [c, a * a]]) for a in (1, 2) for c in range(3)}
    assert len(got) == 6 and set(got) == want
    assert len(automorphisms_bruteforce(build(fam("A11"), (), GF(11)))) == 6


@pytest.mark.parametrize("q,n", [(5, 2), (7, 2), (11, 6), (13, 6), (25, 6), (49, 6)])
def test_a11_order_follows_sqrt3(q, n):
    A = build(fam("A11"), (), GF(q))
    elems = automorphisms_bruteforce(A, cap=max(q, 31))
    assert len(elems) == n
    assert match_description(elems, expected_aut(fam("A11"), (), GF(q))).equal


def test_a11_char2_six_listed_elements():
    F = GF(2)
    elems = automorphisms_bruteforce(build(fam("A11@char2"), (), F))
    assert set(elems) == set(expected_aut(fam("A11@char2"), (), F).elements)
    assert len(elems) == 6


def test_a11_char3_unipotent():
    F = GF(3)
    elems = automorphisms_bruteforce(build(fam("A11@char3"), (), F))
    assert set(elems) == {GL2Element.of(F, [[1, 0], [c, 1]]) for c in range(3)}


def test_bruteforce_errors():
    with pytest.raises(InfiniteField):
        automorphisms_bruteforce(build(fam("A12"), (), Q))
    with pytest.raises(CapExceeded):
        automorphisms_bruteforce(build(fam("A12"), (), GF(11)), cap=7)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_vector_oracle_matches_scalar_filter(q):
    F = GF(q)
    cc = CharClass.of(F)
    for f in families(cc):
        for params in param_sampler(f, F, "random", n=3, seed=q):
            A = build(f, params, F)
            assert automorphisms_bruteforce(A) == scalar_aut(A), (f, params)


def test_jobs_do_not_change_output():
    A = build(fam("A12"), (), GF(7))
    one = automorphisms_bruteforce(A)
    for jobs in (2, 3, 5):
        assert automorphisms_bruteforce(A, jobs=jobs) == one


def test_group_sanity_examples():
    F = GF(5)
    assert group_sanity([GL2Element.identity(F)]) == (True, None)
    ok, witness = group_sanity([GL2Element.identity(F), GL2Element.of(F, [[1, 0], [1, 1]])])
    assert not ok and "[[1,0],[2,1]]" in witness
    assert not group_sanity([])[0]
    for f in families(CharClass.NOT_TWO_THREE):
        for params in param_sampler(f, F, "random", n=2, seed=3):
            assert group_sanity(automorphisms_bruteforce(build(f, params, F)))[0]


def test_match_description_examples():
    F = GF(5)
    elems = automorphisms_bruteforce(build(fam("A4"), (0, 1), F))
    res = match_description(elems, expected_aut(fam("A4"), (0, 1), F))
    assert res.verdict == "Equal" and res.oracle_count == res.expected_count == 4
    desc = expected_aut(fam("A11"), (), F)
    assert len(desc.omissions) == 1
    assert match_description(automorphisms_bruteforce(build(fam("A11"), (), F)), desc).equal


def test_match_verdicts():
    F = GF(3)
    I = GL2Element.identity(F)
    g = GL2Element.of(F, [[2, 0], [0, 1]])
    torus = GroupDescription.continuous("Torus", F)
    assert match_description([I], torus).verdict == "DescriptionExtra"
    assert match_description([I, g], GroupDescription.trivial(F)).verdict == "OracleExtra"
    h = GL2Element.of(F, [[1, 0], [0, 2]])
    assert match_description([I, g], GroupDescription.finite(F, [I, h])).verdict == "Mismatch"
    with pytest.raises(InfiniteField):
        match_description([], GroupDescription.trivial(Q))


@pytest.mark.parametrize("shape", ["Torus", "ScaleFirst", "UnipotentLower", "Borel", "Parabolic"])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_membership_and_points_agree(shape, q):
    F = GF(q)
    desc = GroupDescription.continuous(shape, F)
    pts = desc.rational_points()
    assert len(pts) == len(set(pts)) == desc.point_count()
    assert {g for g in gl2_enumerate(F) if desc.contains(g)} == set(pts)


def test_order_two_diag_collapses_in_char2():
    assert GroupDescription.order_two_diag(GF(2)).point_count() == 1
    assert GroupDescription.order_two_diag(GF(3)).point_count() == 2


def test_conjugation_covariance_small():
    F = GF(5)
    A = build(fam("A5"), (2,), F)
    g = GL2Element.of(F, [[1, 2], [3, 4]])
    assert set(automorphisms_bruteforce(transform(A, g))) == conjugate_group(automorphisms_bruteforce(A), g)


def test_description_str():
    F = GF(5)
    assert str(expected_aut(fam("A12"), (), F)) == "Parabolic {[[a,0],[c,a^2]] a!=0}"
    assert "omitted" in str(expected_aut(fam("A11"), (), F))
