import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pencilreg.errors import UsageError
from pencilreg.field import GF, QQ, Field, PrimeField, Residue, add, inv, mul, neg


def test_rational_add():
    assert add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_gf5_add():
    F = GF(5)
    assert add(F(3), F(4)) == F(2)
    assert add(F(3), F(4)).v == 2


def test_additive_identity():
    rng = random.Random(1)
    for F in (QQ, GF(5), GF(7)):
        for _ in range(100):
            x = F.random(rng, 50)
            assert add(x, F.zero) == x


def test_inverses():
    assert inv(Fraction(2, 3)) == Fraction(3, 2)
    assert inv(GF(7)(3)) == GF(7)(5)
    rng = random.Random(2)
    for F in (QQ, GF(5), GF(7)):
        n = 0
        while n < 100:
            a = F.random(rng, 50)
            if a == F.zero:
                continue
            assert mul(a, inv(a)) == F.one
            n += 1


@pytest.mark.parametrize("F", [QQ, GF(5)])
def test_inv_zero(F):
    with pytest.raises(ZeroDivisionError):
        inv(F.zero)


def test_mixed_fields_rejected():
    with pytest.raises(UsageError):
        add(GF(5)(1), GF(7)(1))
    with pytest.raises(UsageError):
        mul(Fraction(1), GF(5)(1))
    with pytest.raises(UsageError):
        GF(5)(1) + GF(3)(1)


def test_neg():
    assert neg(GF(5)(2)) == GF(5)(3)
    assert neg(Fraction(-1, 4)) == Fraction(1, 4)


@pytest.mark.parametrize("p", [0, 1, 4, 9, 91, 2**31 - 2])
def test_non_prime_modulus(p):
    with pytest.raises(UsageError):
        PrimeField(p)


def test_prime_moduli():
    for p in (2, 3, 5, 2**31 - 1):
        assert GF(p).p == p


def test_rational_normalized():
    x = QQ.parse("6/-4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert QQ.parse("0/7").denominator == 1
    # normalizing twice changes nothing
    assert Fraction(x.numerator, x.denominator) == x


def test_residue_in_range():
    for v in (-13, -1, 0, 4, 5, 101):
        r = Residue(v, 5)
        assert 0 <= r.v < 5


def test_text_encoding_round_trip():
    for s in ("1/2", "-7", "0", "22/7"):
        assert QQ.format(QQ.parse(s)) == s
    F = GF(5)
    assert F.format(F.parse("4")) == "4"
    for bad in ("5", "-1", "x"):
        with pytest.raises(UsageError):
            F.parse(bad)
    for bad in ("1/0", "a/b", ""):
        with pytest.raises(UsageError):
            QQ.parse(bad)


def test_field_json_and_names():
    assert Field.from_json("rational") is QQ
    assert Field.from_json({"gfp": 5}) == GF(5)
    assert QQ.to_json() == "rational" and GF(5).to_json() == {"gfp": 5}
    assert Field.from_name("gf5") == GF(5)
    assert Field.from_name("rational") == QQ
    for bad in ("real", {"gfp": 6}, {"p": 5}, {"gfp": "5"}):
        with pytest.raises(UsageError):
            Field.from_json(bad)


elements = {
    "QQ": (QQ, st.fractions(max_denominator=20).filter(lambda f: abs(f.numerator) < 500)),
    "GF7": (GF(7), st.integers(0, 6).map(GF(7))),
}


@pytest.mark.parametrize("name", list(elements))
def test_field_axioms(name):
    F, strat = elements[name]

    @given(strat, strat, strat)
    def check(a, b, c):
        a, b, c = F(a), F(b), F(c)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a + (-a) == F.zero
        if a != F.zero:
            assert a * inv(a) == F.one

    check()


def test_rational_coercion_normalizes():
    q = QQ(Fraction(6, -4))
    assert QQ.contains(q) and str(q) == "-3/2" and q == Fraction(-3, 2)
    assert QQ("10/4") == QQ(Fraction(5, 2))
    with pytest.raises(UsageError):
        QQ(0.5)
