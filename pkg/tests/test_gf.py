"""Field tower arithmetic against small brute-force oracles."""

import random

import pytest

from rsrepair import field_create
from rsrepair.errors import NotPrime, TooLarge


def _poly_mod(num, den, p):
    """Remainder of num by den over GF(p), coefficients low to high."""
    num = list(num)
    while len(num) >= len(den):
        lead = num[-1] % p
        if lead:
            shift = len(num) - len(den)
            inv = pow(den[-1], p - 2, p) if p > 2 else 1
            factor = (lead * inv) % p
            for i, c in enumerate(den):
                num[shift + i] = (num[shift + i] - factor * c) % p
        num.pop()
    while num and num[-1] % p == 0:
        num.pop()
    return num


def _is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree <= deg / 2."""
    deg = len(poly) - 1
    for ddeg in range(1, deg // 2 + 1):
        for code in range(p**ddeg):
            den = []
            c = code
            for _ in range(ddeg):
                den.append(c % p)
                c //= p
            den.append(1)
            if not _poly_mod(poly, den, p):
                return False
    return True


def _smallest_irreducible(p, deg):
    for code in range(p**deg):
        poly = []
        c = code
        for _ in range(deg):
            poly.append(c % p)
            c //= p
        poly.append(1)
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible found")


@pytest.mark.parametrize("p,a,ell", [(2, 1, 4), (2, 1, 6), (3, 1, 2), (3, 1, 3), (2, 2, 2), (5, 1, 2)])
def test_modulus_is_smallest_irreducible(p, a, ell):
    tower = field_create(p, a, ell)
    assert tower.modulus == _smallest_irreducible(p, a * ell)


def test_gf16_modulus_and_generator():
    t = field_create(2, 1, 4)
    # x^4 + x + 1, and the polynomial variable itself generates the group
    assert t.modulus == (1, 1, 0, 0, 1)
    assert t.generator == 2
    assert t.exp[0] == 1 and t.exp[4] == t.add(2, 1)  # theta^4 = theta + 1


def test_field_axioms_random():
    rng = random.Random(11)
    for p, a, ell in [(2, 1, 5), (3, 1, 3), (2, 2, 2), (5, 1, 2)]:
        t = field_create(p, a, ell)
        for _ in range(200):
            x, y, z = (rng.randrange(t.size) for _ in range(3))
            assert t.add(x, y) == t.add(y, x)
            assert t.mul(x, y) == t.mul(y, x)
            assert t.mul(x, t.add(y, z)) == t.add(t.mul(x, y), t.mul(x, z))
            assert t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z))
            assert t.add(x, t.neg(x)) == 0
            assert t.sub(x, y) == t.add(x, t.neg(y))
            if y:
                assert t.mul(y, t.inv(y)) == 1
                assert t.div(x, y) == t.mul(x, t.inv(y))


def test_exp_log_and_pow():
    t = field_create(2, 1, 6)
    for x in range(1, t.size):
        assert t.exp[t.log[x]] == x
        assert t.pow(x, t.order) == 1
        assert t.pow(x, -1) == t.inv(x)
    assert t.is_primitive(t.generator)
    # generator order is exactly the group order
    seen = {t.pow(t.generator, e) for e in range(t.order)}
    assert len(seen) == t.order


def test_frobenius():
    rng = random.Random(5)
    for p, a, ell in [(2, 1, 4), (3, 1, 3), (2, 2, 2)]:
        t = field_create(p, a, ell)
        for _ in range(100):
            x, y = rng.randrange(t.size), rng.randrange(t.size)
            assert t.frobenius(x, 1) == t.pow(x, t.q)
            assert t.frobenius(t.add(x, y), 1) == t.add(t.frobenius(x, 1), t.frobenius(y, 1))
            k = rng.randrange(-4, 8)
            assert t.frobenius(t.frobenius(x, k), -k) == x
        assert all(t.frobenius(x, t.ell) == x for x in range(t.size))


def test_trace_properties():
    for p, a, ell in [(2, 1, 4), (3, 1, 2), (2, 2, 3)]:
        t = field_create(p, a, ell)
        subfield = set(t.subfield_elements())
        zeros = 0
        for x in range(t.size):
            tr = t.trace_to_subfield(x)
            assert tr in subfield
            # direct power sum definition
            acc = 0
            for i in range(t.ell):
                acc = t.add(acc, t.pow(x, t.q**i))
            assert tr == acc
            if tr == 0:
                zeros += 1
            assert 0 <= t.absolute_trace(x) < t.p
        assert zeros == t.q ** (t.ell - 1)


def test_subfield():
    t = field_create(2, 1, 4)
    elems, gen = t.subfield(4)
    assert len(elems) == 4
    for x in elems:
        assert t.pow(x, 4) == x
    assert gen in elems and t.pow(gen, 3) == 1 and gen != 1


def test_coords_roundtrip():
    for p, a, ell in [(2, 1, 4), (3, 1, 3)]:
        t = field_create(p, a, ell)
        for x in range(t.size):
            assert t.element(t.coords(x)) == x


def test_invalid_parameters():
    with pytest.raises(NotPrime):
        field_create(6, 1, 2)
    with pytest.raises(TooLarge):
        field_create(2, 1, 25)  # over the default 20 bit cap


def test_json_roundtrip():
    from rsrepair.gf import FieldTower

    t = field_create(3, 1, 3)
    doc = t.to_json()
    t2 = FieldTower.from_json(doc)
    assert t2.modulus == t.modulus and t2.size == t.size
    assert t2.mul(5, 7) == t.mul(5, 7)
