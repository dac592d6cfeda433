from fractions import Fraction

import pytest

from alg2d.errors import DivisionByZero, InfiniteField, ParseError, SpecMismatch
from alg2d.fields import (
    GF, NOT_A_SQUARE, FieldKind, PrimeField, QuadExtField, QuadRationals, Rationals, arith,
    characteristic, enumerate_field, format_element, inv, legendre, parse_element,
    parse_field_spec, smallest_nonresidue, sqrt,
)

Q = Rationals()


def test_rational_addition():
    assert arith("add", Q(Fraction(1, 2)), Q(Fraction(1, 3))) == Q(Fraction(5, 6))


def test_prime_field_product():
    F = GF(5)
    assert arith("mul", F(3), F(4)) == F(2)
    assert (F(3) * F(4)).code == 2


def test_quadratic_extension_product():
    F = QuadExtField(7, 3)
    t = F.root()
    assert (1 + t) * (1 - t) == F(5)


def test_neg_and_sub():
    F = GF(7)
    assert arith("neg", F(3)) == F(4)
    assert arith("sub", F(2), F(5)) == F(4)


def test_mismatched_fields():
    with pytest.raises(SpecMismatch):
        GF(5)(1) + GF(7)(1)


@pytest.mark.parametrize("spec,x,want", [
    (Q, Fraction(2, 3), Fraction(3, 2)),
    (GF(5), 3, 2),
])
def test_inverse(spec, x, want):
    assert inv(spec(x)) == spec(want)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        inv(GF(7)(0))
    with pytest.raises(ZeroDivisionError):
        Q(1) / Q(0)


def test_sqrt_examples():
    assert sqrt(GF(11)(3)) == GF(11)(5)
    assert sqrt(GF(5)(3)) is NOT_A_SQUARE
    assert not sqrt(GF(5)(3))
    assert sqrt(Q(Fraction(4, 9))) == Q(Fraction(2, 3))


def test_sqrt_rational_sign_and_failure():
    assert sqrt(Q(Fraction(-4, 9))) is NOT_A_SQUARE
    assert sqrt(Q(2)) is NOT_A_SQUARE
    assert sqrt(Q(0)) == Q(0)


def test_sqrt_in_quadratic_rationals():
    F = QuadRationals(3)
    r = sqrt(F(3))
    assert r == F.root()
    assert r * r == F(3)
    # 7 + 4 r = (2 + r)^2
    assert sqrt(F((7, 4))) == F((2, 1))


@pytest.mark.parametrize("q", [9, 25, 49])
def test_prime_subfield_is_square_in_extension(q):
    F = GF(q)
    for k in range(F.p):
        r = sqrt(F(k))
        assert r is not NOT_A_SQUARE
        assert r * r == F(k)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 25])
def test_sqrt_agrees_with_euler_criterion(q):
    F = GF(q)
    for x in enumerate_field(F):
        if not x:
            continue
        r = sqrt(x)
        assert (r is not NOT_A_SQUARE) == (x ** ((q - 1) // 2) == 1)
        if r is not NOT_A_SQUARE:
            assert r * r == x


def test_sqrt_canonical_choice_is_smaller_code():
    for p in (7, 11, 13):
        F = GF(p)
        for x in enumerate_field(F):
            r = sqrt(x)
            if r:
                assert r.code <= (-r).code


def test_enumerate():
    assert [x.code for x in enumerate_field(GF(3))] == [0, 1, 2]
    assert len(enumerate_field(GF(4))) == 4
    assert [str(x) for x in enumerate_field(GF(4))] == ["0", "1", "r", "1+r"]
    with pytest.raises(InfiniteField):
        enumerate_field(Q)


def test_characteristic():
    assert characteristic(QuadRationals(3)) == 0
    assert characteristic(GF(9)) == 3
    assert characteristic(GF(7)) == 7


def test_field_construction_checks():
    with pytest.raises(ValueError):
        PrimeField(9)
    with pytest.raises(ValueError):
        QuadExtField(7, 2)  # 2 = 3^2 mod 7
    with pytest.raises(ValueError):
        QuadRationals(4)
    with pytest.raises(ValueError):
        QuadRationals(1)
    assert QuadExtField(7).n == 3
    assert smallest_nonresidue(5) == 2
    assert legendre(3, 11) == 1 and legendre(3, 5) == -1


def test_gf4_arithmetic():
    F = GF(4)
    t = F.root()
    assert t * t == t + 1
    assert (t + 1) * t == F(1)
    assert F(1) + F(1) == F(0)
    assert F.kind is FieldKind.QUAD_EXT


def test_field_spec_round_trip():
    for text in ("Q", "Q(sqrt 3)", "Q(sqrt -1)", "GF(5)", "GF(7^2,3)", "GF(2^2,1)"):
        assert str(parse_field_spec(text)) == text


@pytest.mark.parametrize("text,offset", [("GF(", 3), ("Z", 0), ("GF(5) x", 6), ("GF(4)", 0)])
def test_field_spec_parse_errors(text, offset):
    with pytest.raises(ParseError) as err:
        parse_field_spec(text)
    assert err.value.offset == offset
    assert f"byte offset {offset}" in str(err.value)


def test_element_parse_and_format():
    F = QuadRationals(3)
    x = parse_element("1/2 - 3*r", F)
    assert x == F((Fraction(1, 2), -3))
    assert format_element(x) == "1/2-3*r"
    assert str(F((0, 1))) == "r"
    assert str(F((0, -1))) == "-r"
    assert parse_element(" -7 ", GF(5)) == GF(5)(3)
    assert parse_element("1/3", GF(5)) == GF(5)(2)


def test_element_round_trip_all_small_fields():
    for F in (GF(2), GF(4), GF(5), GF(9), GF(49)):
        for x in enumerate_field(F):
            assert parse_element(format_element(x), F) == x


def test_element_parse_error_reports_byte_offset():
    with pytest.raises(ParseError) as err:
        parse_element("1+*r", GF(9))
    assert err.value.offset == 2


def test_root_symbol_rejected_in_prime_field():
    with pytest.raises(ParseError):
        parse_element("r", GF(5))
