"""Field arithmetic, canonical subspaces, and enumeration counts."""

import itertools

import pytest

from dbrg.gfcore import (
    FieldContext,
    field,
    field_arith,
    qbinom,
    subspace_make,
    subspace_meet,
    subspace_join,
    orthogonal_complement,
    enumerate_subspaces,
    enumerate_cosets,
    enumerate_hyperplanes,
    enumerate_projective_points,
    parse_vector,
    format_vector,
)


def test_prime_field_modulus_is_x():
    gf2 = field(2, 1)
    assert gf2.q == 2
    assert gf2.modulus == (0, 1)  # the polynomial x


def test_gf4_modulus_and_multiplication():
    gf4 = field(2, 2)
    assert gf4.modulus == (1, 1, 1)  # x^2 + x + 1, the unique irreducible quadratic
    x = 2  # the element 'x'
    assert gf4.mul(x, x) == 3  # x^2 = x + 1


def test_field_make_rejects_bad_input():
    with pytest.raises(ValueError):
        field(4, 1)
    with pytest.raises(ValueError):
        field(2, 0)
    with pytest.raises(ValueError):
        FieldContext(2, 2, modulus=(0, 0, 1))  # x^2 is reducible


def field_axioms_hold(gf):
    els = list(gf.elements())
    for a in els:
        assert gf.add(a, 0) == a
        assert gf.mul(a, 1) == a
        assert gf.mul(a, 0) == 0
        assert gf.add(a, gf.neg(a)) == 0
    for a, b in itertools.product(els, repeat=2):
        assert gf.add(a, b) == gf.add(b, a)
        assert gf.mul(a, b) == gf.mul(b, a)
    for a, b, c in itertools.product(els, repeat=3):
        assert gf.add(gf.add(a, b), c) == gf.add(a, gf.add(b, c))
        assert gf.mul(gf.mul(a, b), c) == gf.mul(a, gf.mul(b, c))
        assert gf.mul(a, gf.add(b, c)) == gf.add(gf.mul(a, b), gf.mul(a, c))


def test_gf9_axioms_exhaustive():
    field_axioms_hold(field(3, 2))


def test_characteristic_two_self_inverse():
    for t in (1, 2, 3):
        gf = field(2, t)
        for a in gf.elements():
            assert gf.add(a, a) == 0


def test_inverses_and_group_order():
    for p, t in [(2, 2), (3, 2), (2, 3), (5, 1), (7, 1)]:
        gf = field(p, t)
        for a in gf.nonzero():
            assert gf.mul(a, gf.inv(a)) == 1
            assert gf.pow(a, gf.q - 1) == 1


def test_field_arith_dispatch():
    gf = field(3, 1)
    assert field_arith(gf, "add", 2, 2) == 1
    assert field_arith(gf, "mul", 2, 2) == 1
    assert field_arith(gf, "inv", 2) == 2
    assert field_arith(gf, "pow", 2, 3) == 2
    with pytest.raises(ZeroDivisionError):
        field_arith(gf, "inv", 0)
    with pytest.raises(ValueError):
        field_arith(gf, "xor", 1, 1)


def test_qbinom_small_values():
    assert qbinom(4, 1, 2) == 15
    assert qbinom(4, 2, 2) == 35
    assert qbinom(6, 4, 3) == 11011
    assert qbinom(3, 0, 5) == 1
    with pytest.raises(ValueError):
        qbinom(3, 4, 2)


def test_qbinom_matches_echelon_enumeration():
    # independent count: generate echelon matrices and count them
    assert sum(1 for _ in enumerate_subspaces(field(3), 6, 4)) == 11011


def test_subspace_make_row_reduction():
    gf2 = field(2)
    s = subspace_make(gf2, 3, [(1, 1, 0), (0, 1, 1), (1, 0, 1)])
    assert s.dim == 2
    assert s.basis == ((1, 0, 1), (0, 1, 1))


def test_subspace_make_edge_cases():
    gf2 = field(2)
    z = subspace_make(gf2, 3, [])
    assert z.dim == 0 and z.basis == ()
    full = subspace_make(gf2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert full.dim == 3
    assert full.basis == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        subspace_make(gf2, 3, [(1, 0)])


def test_subspace_make_idempotent():
    gf3 = field(3)
    for s in itertools.islice(enumerate_subspaces(gf3, 4, 2), 40):
        again = subspace_make(gf3, 4, s.basis)
        assert again == s


def test_meet_join_dimension_formula():
    gf2 = field(2)
    planes = list(enumerate_subspaces(gf2, 3, 2))
    for u, w in itertools.combinations(planes, 2):
        assert subspace_meet(u, w).dim == 1  # two distinct planes in F_2^3
    # dimension formula on a sample of pairs in F_3^4
    gf3 = field(3)
    sample = list(itertools.islice(enumerate_subspaces(gf3, 4, 2), 25))
    for u, w in itertools.combinations(sample, 2):
        m, j = subspace_meet(u, w), subspace_join(u, w)
        assert m.dim + j.dim == u.dim + w.dim
        for row in m.basis:
            assert u.contains(row) and w.contains(row)


def test_join_of_complementary_spaces():
    gf2 = field(2)
    u = subspace_make(gf2, 4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    w = subspace_make(gf2, 4, [(0, 0, 1, 0), (0, 0, 0, 1)])
    assert subspace_meet(u, w).dim == 0
    assert subspace_join(u, w).dim == 4


def test_enumeration_counts_match_qbinom():
    for q, (p, t) in [(2, (2, 1)), (3, (3, 1)), (4, (2, 2))]:
        gf = field(p, t)
        for n in range(1, 5):
            for m in range(n + 1):
                count = sum(1 for _ in enumerate_subspaces(gf, n, m))
                assert count == qbinom(n, m, q), (q, n, m)


def test_enumeration_is_duplicate_free():
    gf2 = field(2)
    spaces = list(enumerate_subspaces(gf2, 4, 2))
    assert len(set(spaces)) == len(spaces) == 35


def test_coset_and_hyperplane_streams():
    gf3 = field(3)
    m = subspace_make(gf3, 6, [(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0),
                               (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)])
    reps = list(enumerate_cosets(m))
    assert len(reps) == 9  # q^(n-dim) = 3^2
    assert len(set(m.reduce(r) for r in reps)) == 9
    hyps = list(enumerate_hyperplanes(gf3, 6))
    assert len(hyps) == 364  # [6]_3
    assert all(h.dim == 5 for h in hyps)
    pts = list(enumerate_projective_points(gf3, 3))
    assert len(pts) == 13


def test_reduce_is_constant_on_cosets():
    gf2 = field(2)
    m = subspace_make(gf2, 4, [(1, 1, 0, 0), (0, 0, 1, 1)])
    for rep in enumerate_cosets(m):
        for v in m.vectors():
            shifted = tuple(gf2.add(a, b) for a, b in zip(rep, v))
            assert m.reduce(shifted) == m.reduce(rep)


def test_orthogonal_complement_involution():
    gf2 = field(2)
    for s in enumerate_subspaces(gf2, 3, 2):
        perp = orthogonal_complement(s)
        assert perp.dim == 1
        assert orthogonal_complement(perp) == s


def test_vector_literals_round_trip():
    gf3 = field(3)
    v = parse_vector(gf3, "1,0,2,2,0,1")
    assert v == (1, 0, 2, 2, 0, 1)
    assert format_vector(gf3, v) == "1,0,2,2,0,1"
    gf4 = field(2, 2)
    w = parse_vector(gf4, "11,0,10")
    assert w == (3, 0, 2)
    assert format_vector(gf4, w) == "11,0,10"
    with pytest.raises(ValueError):
        parse_vector(gf3, "1,,2")
    with pytest.raises(ValueError):
        parse_vector(gf3, "1,5,2")
