import pytest

from acfgeom.algebra import upoly
from acfgeom.algebra.finite_field import GF, FieldTooLarge, fq_make


def test_f2_enumeration():
    F = fq_make(2, 1)
    assert [e.code for e in F.enumerate()] == [0, 1]


def test_f4_modulus_and_u_squared():
    F = fq_make(2, 2)
    assert F.modulus == (1, 1, 1)
    u = F.u
    assert u * u == u + 1
    assert u * u + u + 1 == F.element(0)


def test_smallest_quadratic_over_f2_by_exhaustion():
    monic = [(c0, c1, 1) for c1 in range(2) for c0 in range(2)]
    irreducible = [m for m in monic if all(upoly.evaluate(m, t, 2) for t in range(2))]
    assert irreducible == [(1, 1, 1)]


def test_inverse_mod_5():
    F = fq_make(5, 1)
    assert (F.element(1) / F.element(2)).code == 3
    assert F.inv(2) == 3


def test_not_prime():
    with pytest.raises(ValueError):
        GF(4, 1)


def test_cap():
    with pytest.raises(FieldTooLarge):
        GF(2, 30, cap=10 ** 6)


@pytest.mark.parametrize("p, k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2),
                                  (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2)])
def test_multiplicative_order(p, k):
    F = fq_make(p, k)
    assert F.q == p ** k
    elems = F.enumerate()
    assert len({e.code for e in elems}) == F.q
    one = F.element(1)
    for e in elems[1:]:
        assert e ** (F.q - 1) == one
        assert e * (one / e) == one


@pytest.mark.parametrize("p, k", [(2, 3), (3, 2), (5, 2)])
def test_field_axioms_exhaustive(p, k):
    F = fq_make(p, k)
    els = F.enumerate()
    for a in els:
        assert a + (-a) == F.element(0)
        for b in els:
            assert a + b == b + a and a * b == b * a
    for a in els[: 9]:
        for b in els[: 9]:
            for c in els[: 9]:
                assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("p, k", [(2, 4), (3, 3), (5, 2)])
def test_modulus_is_lex_smallest(p, k):
    F = fq_make(p, k)
    for cand in upoly.monic_of_degree(p, k):
        if upoly.is_irreducible(cand, p):
            assert tuple(cand) == tuple(F.modulus)
            break


def test_subfield_embedding_is_homomorphism():
    small, big = fq_make(2, 2), fq_make(2, 4)
    emb = big.embedding_from(small)
    for a in range(4):
        for b in range(4):
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])
    assert sorted(emb) == list(big.subfield_codes(2))
