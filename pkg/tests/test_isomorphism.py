import random

import pytest

from alg2d.catalog import CharClass, FamilyId, build, families, param_sampler
from alg2d.errors import CapExceeded, InfiniteField, SpecMismatch
from alg2d.fields import GF, Rationals
from alg2d.isomorphism import ORBIT_CAP_ENV, find_isomorphism, orbit, orbit_size, orbit_stabilizer_check
from alg2d.linalg import GL2Element, gl2_order
from alg2d.msc import MSC, transform


def fam(text):
    return FamilyId.parse(text)


def test_witness_for_transformed_copy():
    F = GF(5)
    A = build(fam("A5"), (3,), F)
    g0 = GL2Element.of(F, [[2, 1], [1, 4]])
    B = transform(A, g0)
    g = find_isomorphism(A, B)
    assert g is not None and transform(A, g) == B


def test_twin_witness():
    F = GF(5)
    A = build(fam("A2"), (0, 1, 0), F)
    B = build(fam("A2"), (0, -1, 0), F)
    g = find_isomorphism(A, B)
    assert g is not None and transform(A, g) == B


def test_a10_a11_not_isomorphic():
    F = GF(3)
    assert find_isomorphism(build(fam("A10@char3"), (), F), build(fam("A11@char3"), (), F)) is None
    # same matrices as the generic table, read over GF(3)
    assert find_isomorphism(MSC(F, [[0, 1, 1, 0], [0, 0, 0, -1]]), MSC(F, [[0, 1, 1, 0], [1, 0, 0, -1]])) is None


def test_symmetry_via_inverse():
    rng = random.Random(5)
    F = GF(7)
    for _ in range(10):
        A = MSC(F, [[rng.randrange(7) for _ in range(4)] for _ in range(2)])
        g0 = GL2Element.of(F, [[1, rng.randrange(7)], [0, rng.randrange(1, 7)]])
        B = transform(A, g0)
        g = find_isomorphism(A, B)
        h = find_isomorphism(B, A)
        assert transform(B, g.inverse()) == A
        assert h is not None and transform(B, h) == A


def test_first_witness_is_independent_of_jobs():
    F = GF(7)
    A = build(fam("A12"), (), F)
    B = transform(A, GL2Element.of(F, [[3, 1], [2, 2]]))
    assert find_isomorphism(A, B, jobs=4) == find_isomorphism(A, B)


def test_isomorphism_errors():
    with pytest.raises(SpecMismatch):
        find_isomorphism(build(fam("A12"), (), GF(5)), build(fam("A12"), (), GF(7)))
    with pytest.raises(InfiniteField):
        find_isomorphism(build(fam("A12"), (), Rationals()), build(fam("A12"), (), Rationals()))
    with pytest.raises(CapExceeded):
        find_isomorphism(build(fam("A12"), (), GF(11)), build(fam("A12"), (), GF(11)), cap=7)


def test_orbit_examples():
    A = build(fam("A12@char3"), (), GF(3))
    O = orbit(A)
    assert len(O) == 8 and A in O
    assert orbit_stabilizer_check(A)
    B = build(fam("A1@char3"), (1, 0, 0, 1), GF(3))
    assert orbit_size(B) == 48 and orbit_stabilizer_check(B)


def test_orbit_cap(monkeypatch):
    with pytest.raises(CapExceeded):
        orbit(build(fam("A12"), (), GF(11)))
    monkeypatch.setenv(ORBIT_CAP_ENV, "3")
    with pytest.raises(CapExceeded):
        orbit(build(fam("A12"), (), GF(5)))
    with pytest.raises(InfiniteField):
        orbit(build(fam("A12"), (), Rationals()))


def test_orbit_elements_are_transforms():
    F = GF(2)
    rng = random.Random(9)
    for _ in range(10):
        A = MSC(F, [[rng.randrange(2) for _ in range(4)] for _ in range(2)])
        O = orbit(A)
        assert gl2_order(2) % len(O) == 0
        assert orbit_stabilizer_check(A)


@pytest.mark.parametrize("F", [GF(2), GF(3)])
def test_orbit_stabilizer_on_catalog(F):
    cc = CharClass.of(F)
    for f in families(cc):
        for params in param_sampler(f, F)[:9]:
            assert orbit_stabilizer_check(build(f, params, F)), (f, params)
