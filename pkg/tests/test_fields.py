from fractions import Fraction

import pytest

from wcpx.fields import FieldError, Fp, QQ, parse_field, prime_field


def test_rational_parse_and_format():
    assert QQ.parse("3/2") == Fraction(3, 2)
    assert QQ.parse("-4") == Fraction(-4)
    assert QQ.format(Fraction(-1, 3)) == "-1/3"


def test_prime_field_arithmetic():
    f = prime_field(5)
    a, b = f.coerce(3), f.coerce(4)
    assert a + b == f.coerce(2)
    assert a * b == f.coerce(2)
    assert a / b == a * Fp(4, 5).inverse()
    assert f.parse("1/2") == f.coerce(3)  # 2 * 3 = 6 = 1 mod 5


def test_prime_field_rejects_bad_denominator():
    f = prime_field(5)
    with pytest.raises(FieldError):
        f.parse("1/5")


def test_characteristic_must_be_prime():
    with pytest.raises(FieldError):
        prime_field(6)
    with pytest.raises(FieldError):
        prime_field(1)


def test_parse_field_names():
    assert parse_field("Q") == QQ
    assert parse_field("F7") == prime_field(7)
    with pytest.raises(FieldError):
        parse_field("R")


def test_no_mixing_of_fields():
    with pytest.raises(FieldError):
        QQ.coerce(Fp(1, 5))
    with pytest.raises(FieldError):
        prime_field(3).coerce(Fp(1, 5))
