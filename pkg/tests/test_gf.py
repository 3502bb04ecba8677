import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqhyper.gf import (
    DivisionByZero,
    FieldTooLarge,
    NonPrimeCharacteristic,
    NotASquare,
    NotASubfield,
    embed,
    make_field,
)

SMALL_ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6)]


def oracle_smallest_irreducible(p, s):
    """Independent scan: lexicographically first monic irreducible of degree s."""

    def divides(d, a):
        a = list(a)
        while len(a) >= len(d):
            if a[-1] == 0:
                a.pop()
                continue
            f = a[-1] * pow(d[-1], p - 2, p) % p
            off = len(a) - len(d)
            for i, c in enumerate(d):
                a[off + i] = (a[off + i] - f * c) % p
            a.pop()
        return not any(a)

    if s == 1:
        return (0, 1)
    for head in itertools.product(range(p), repeat=s):
        cand = list(head) + [1]
        if cand[0] == 0:
            continue
        lower = []
        for deg in range(1, s // 2 + 1):
            for tail in itertools.product(range(p), repeat=deg):
                lower.append(list(tail) + [1])
        if not any(divides(d, cand) for d in lower):
            return tuple(cand)
    raise AssertionError


def test_modulus_is_deterministic_lex_smallest():
    for p, s in SMALL_ORDERS:
        f = make_field(p, s)
        assert f.modulus == oracle_smallest_irreducible(p, s), (p, s)


def test_known_moduli():
    assert make_field(2, 2).modulus == (1, 1, 1)  # x^2+x+1
    assert make_field(5, 1).modulus == (0, 1)  # prime field, modulus x
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2+1


def test_construction_guards():
    with pytest.raises(NonPrimeCharacteristic):
        make_field(4, 1)
    with pytest.raises(NonPrimeCharacteristic):
        make_field(6, 1)
    with pytest.raises(FieldTooLarge):
        make_field(2, 17)
    with pytest.raises(FieldTooLarge):
        make_field(2, 5, order_cap=16)
    with pytest.raises(ValueError):
        make_field(2, 0)


def test_descriptor_serialization():
    assert make_field(2, 2).descriptor() == {"p": 2, "s": 2, "modulus": [1, 1, 1]}


def test_f4_multiplication_matches_direct_polynomial_reduction():
    # alpha * alpha = alpha + 1 under x^2 + x + 1
    f4 = make_field(2, 2)
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1  # alpha * (alpha+1) = alpha^2 + alpha = 1
    assert f4.mul(3, 3) == 2


def test_prime_field_inverse():
    f5 = make_field(5, 1)
    assert f5.inv(2) == 3
    assert f5.mul(2, 3) == 1
    for a in f5.nonzero():
        assert f5.mul(a, f5.inv(a)) == 1


def test_inv_of_zero_raises():
    with pytest.raises(DivisionByZero):
        make_field(3, 1).inv(0)


def _np_tables(f):
    q = f.q
    add = np.array([[f.add(a, b) for b in range(q)] for a in range(q)])
    mul = np.array([[f.mul(a, b) for b in range(q)] for a in range(q)])
    return add, mul


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1),
                                 (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5),
                                 (37, 1), (41, 1), (43, 1), (47, 1), (7, 2), (53, 1), (59, 1), (61, 1), (2, 6)])
def test_field_axioms_exhaustive(p, s):
    """Every field axiom over all pairs/triples, for every prime power q <= 64."""
    f = make_field(p, s)
    q = f.q
    add, mul = _np_tables(f)
    idx = np.arange(q)

    # commutativity
    assert (add == add.T).all()
    assert (mul == mul.T).all()
    # identities
    assert (add[0] == idx).all()
    assert (mul[1] == idx).all()
    assert (mul[0] == 0).all()
    # additive inverse
    neg = np.array([f.neg(a) for a in range(q)])
    assert (add[idx, neg] == 0).all()
    # multiplicative inverse
    for a in range(1, q):
        assert mul[a, f.inv(a)] == 1
    # associativity: (a+b)+c == a+(b+c), (a*b)*c == a*(b*c)
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij", sparse=True)
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    # distributivity: a*(b+c) == a*b + a*c
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()


@pytest.mark.parametrize("p,s", SMALL_ORDERS)
def test_fermat_identities(p, s):
    f = make_field(p, s)
    for x in f.elements():
        assert f.pow(x, f.q) == x
    for x in f.nonzero():
        assert f.pow(x, f.q - 1) == 1


def test_pow_edge_cases():
    f = make_field(3, 2)
    assert f.pow(0, 0) == 1
    assert f.pow(0, 5) == 0
    assert f.pow(1, 10**9) == 1
    g = f.generator
    assert f.pow(g, f.q - 1) == 1
    assert f.pow(g, 10**12) == f.pow(g, 10**12 % (f.q - 1))


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (7, 2), (2, 6),
                                 (3, 4), (11, 2), (2, 7), (13, 2), (3, 5), (2, 8)])
def test_frobenius_is_field_automorphism(p, s):
    """Additivity and multiplicativity of x -> x^p, exhaustively for q <= 256."""
    f = make_field(p, s)
    frob = [f.frobenius(x, 1) for x in f.elements()]
    for x in f.elements():
        assert f.frobenius(f.frobenius(x, 1), s - 1) == x if s > 1 else True
        assert f.frobenius(x, s) == x
        for y in f.elements():
            assert frob[f.add(x, y)] == f.add(frob[x], frob[y])
            assert frob[f.mul(x, y)] == f.mul(frob[x], frob[y])


def test_frobenius_examples():
    f4 = make_field(2, 2)
    assert f4.frobenius(2, 1) == 3  # alpha^2 = alpha + 1
    f9 = make_field(3, 2)
    for x in f9.elements():
        assert f9.frobenius(f9.frobenius(x, 1), 1) == x


def test_sqrt_order():
    assert make_field(2, 2).sqrt_order() == 2
    assert make_field(3, 2).sqrt_order() == 3
    with pytest.raises(NotASquare):
        make_field(2, 3).sqrt_order()


def test_embed_prime_subfield():
    f2, f4 = make_field(2, 1), make_field(2, 2)
    e = embed(f2, f4)
    assert e(0) == 0 and e(1) == 1


def test_embed_f4_into_f16_is_ring_homomorphism():
    f4, f16 = make_field(2, 2), make_field(2, 4)
    e = embed(f4, f16)
    # the image of alpha is a root of x^2+x+1 in GF(16)
    r = e(2)
    assert f16.add(f16.add(f16.mul(r, r), r), 1) == 0
    assert len(set(e.table)) == 4  # injective
    for a in f4.elements():
        for b in f4.elements():
            assert e(f4.add(a, b)) == f16.add(e(a), e(b))
            assert e(f4.mul(a, b)) == f16.mul(e(a), e(b))


def test_embed_rejects_non_subfield():
    with pytest.raises(NotASubfield):
        embed(make_field(2, 2), make_field(2, 3))
    with pytest.raises(NotASubfield):
        embed(make_field(2, 1), make_field(3, 1))


def test_embed_tower_compatibility():
    f2, f4, f16 = make_field(2, 1), make_field(2, 2), make_field(2, 4)
    e24, e4_16, e2_16 = embed(f2, f4), embed(f4, f16), embed(f2, f16)
    for a in f2.elements():
        assert e4_16(e24(a)) == e2_16(a)


def test_arith_dispatch():
    f = make_field(2, 2)
    assert f.arith("mul", 2, 2) == 3
    assert f.arith("add", 2, 3) == 1
    assert f.arith("neg", 3) == 3
    assert f.arith("pow", 2, 3) == 1
    with pytest.raises(ValueError):
        f.arith("nope", 1)


def test_make_field_is_cached():
    assert make_field(3, 2) is make_field(3, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL_ORDERS), st.data())
def test_random_triples_satisfy_distributivity(ps, data):
    f = make_field(*ps)
    a = data.draw(st.integers(0, f.q - 1))
    b = data.draw(st.integers(0, f.q - 1))
    c = data.draw(st.integers(0, f.q - 1))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.sub(a, b) == f.add(a, f.neg(b))
