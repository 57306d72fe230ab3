import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmlab.errors import DivisionByZero, NonPrime, SizeGuardExceeded, TowerMismatch
from rmlab.ffield import (
    Elt,
    FieldTower,
    SmallField,
    first_irreducible,
    gf,
    is_irreducible,
    is_irreducible_bruteforce,
    is_prime,
    monic_candidates,
    tower_create,
)

X, X2 = 0b010, 0b100


def test_f8_modulus(f8):
    assert f8.ext_modulus == (1, 1, 0, 1)
    assert f8.to_json()["ext_modulus"] == [[1], [1], [0], [1]]


def test_f2_is_degree_one():
    t = tower_create(2, 1, 1)
    assert t.order == 2 and len(t.ext_modulus) == 2
    assert list(t.elements()) == [0, 1]


def test_nonprime():
    with pytest.raises(NonPrime):
        tower_create(4, 1, 2)
    with pytest.raises(NonPrime):
        SmallField(9)


def test_size_guard():
    with pytest.raises(SizeGuardExceeded):
        tower_create(2, 1, 64)


def test_f8_examples(f8):
    assert f8.mul(X, X2) == 0b011
    assert all(f8.mul(a, 1) == a for a in f8.elements())
    with pytest.raises(DivisionByZero):
        f8.inv(0)
    assert f8.frobenius_q(X, 1) == X2
    assert f8.frobenius_q(0b011, 1) == 0b101
    assert all(f8.frobenius_q(a, 3) == a for a in f8.elements())
    total = 0
    for a in f8.elements():
        total = f8.add(total, a)
    assert total == 0


def test_f4_elements():
    t = tower_create(2, 2, 1)
    els = list(t.elements())
    assert len(els) == 4 == len(set(els))


def test_first_irreducibles_match_bruteforce():
    for p, deg in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        F = SmallField(p)
        first = next(f for f in monic_candidates(F, deg) if is_irreducible_bruteforce(F, f))
        assert first_irreducible(F, deg) == tuple(first)


def test_ben_or_matches_bruteforce():
    for p, deg in [(2, 1), (2, 4), (2, 5), (3, 3), (5, 2)]:
        F = SmallField(p)
        for f in monic_candidates(F, deg):
            assert is_irreducible(F, f) == is_irreducible_bruteforce(F, f)


def test_x28_modulus():
    t = tower_create(2, 1, 28)
    assert t.ext_modulus == (1, 1) + (0,) * 26 + (1,)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


TOWERS = [(2, 1, 3), (2, 1, 8), (2, 2, 3), (3, 1, 4), (3, 2, 2), (5, 1, 3), (2, 3, 2), (2, 1, 28)]


@pytest.mark.parametrize("p,e,m", TOWERS)
def test_field_axioms(p, e, m):
    t = tower_create(p, e, m)
    rng = random.Random(p * 100 + e * 10 + m)
    for _ in range(100):
        a, b, c = (t.random_element(rng) for _ in range(3))
        assert t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c))
        assert t.mul(a, b) == t.generic_mul(a, b)
        assert t.add(a, t.neg(a)) == 0
        assert t.sub(t.add(a, b), b) == a
        assert t.frob(a, m) == a
        assert t.frob(t.add(a, b), 1) == t.add(t.frob(a, 1), t.frob(b, 1))
        if a:
            assert t.mul(a, t.inv(a)) == 1
    # F_q is fixed by the q-Frobenius
    assert all(t.frob(c, 1) == c for c in range(t.q))


@pytest.mark.parametrize("p,e,m", TOWERS)
def test_json_roundtrip(p, e, m):
    t = tower_create(p, e, m)
    d = json.loads(json.dumps(t.to_json()))
    assert FieldTower.from_json(d) == t
    rng = random.Random(0)
    for _ in range(20):
        a = t.random_element(rng)
        assert t.from_residues(t.residues(a)) == a
        assert t.from_coords(t.coords(a)) == a


@given(st.integers(min_value=0, max_value=255), st.integers(min_value=0, max_value=255))
@settings(max_examples=200)
def test_f256_mul_commutes(a, b):
    t = tower_create(2, 1, 8)
    assert t.mul(a, b) == t.mul(b, a) == t.generic_mul(a, b)


def test_gf_cached():
    assert gf(4) is gf(4)
    assert gf(gf(8)) is gf(8)
    with pytest.raises(NonPrime):
        gf(6)


def test_elt_wrapper(f8):
    x = Elt(f8, X)
    assert (x * x).value == X2
    assert x * x * x == 0b011
    assert (x / x) == 1
    assert x.frobenius() == X2
    assert x**7 == 1
    assert x.coeffs == ((0,), (1,), (0,))
    with pytest.raises(TowerMismatch):
        x + Elt(tower_create(2, 1, 4), 1)
    with pytest.raises(TowerMismatch):
        Elt(f8, 8)
