import random
from collections import Counter

import pytest

from octacheck.complex import (ChainMap, FreeComplex, Homotopy, Piece, cone_of, make_P, normal_form,
                               null_homotopy, validate_chain_map)
from octacheck.errors import ValidationError
from octacheck.exactalg import Poly, PolyMatrix
from octacheck.homcat import HomMatrix, PObject, presentify, realize, realize_object


def mono(F, k, c=1):
    return Poly.monomial(F, k, c)


def one_by_one(F, p):
    return PolyMatrix(F, 1, 1, [[p]])


def square(F, top, bottom, m=3, n=3):
    """Chain map P_m -> P_n with components ``bottom`` in degree -1 and ``top`` in degree 0."""
    return ChainMap(make_P(F, m), make_P(F, n), {-1: one_by_one(F, bottom), 0: one_by_one(F, top)})


def basis_map(F, kind, i, m, n, shift=0):
    return realize(HomMatrix.basis(F, kind, i, m, n, shift))


def two_term(n, s):
    return Piece("two_term", n, s) if n else Piece("contractible", 0, s)


def test_make_P_examples(Q):
    p3 = make_P(Q, 3)
    assert p3.ranks == {-1: 1, 0: 1}
    assert p3.d(-1)[0, 0] == mono(Q, 3)
    p21 = make_P(Q, 2, 1)
    assert p21.ranks == {-2: 1, -1: 1}
    assert p21.d(-2)[0, 0] == mono(Q, 2, -1)
    assert make_P(Q, 0).d(-1)[0, 0] == Poly.const(Q, 1)


def test_shift_negates_differential(Q):
    assert make_P(Q, 4).shift(1) == make_P(Q, 4, 1)
    assert make_P(Q, 4).shift(2) == make_P(Q, 4, 2)


def test_d_squared_checked(Q):
    d = one_by_one(Q, mono(Q, 1))
    with pytest.raises(ValidationError):
        FreeComplex(Q, {0: 1, 1: 1, 2: 1}, {0: d, 1: d})


def test_validate_chain_map_examples(Q):
    assert validate_chain_map(square(Q, mono(Q, 1), mono(Q, 1)))
    assert not validate_chain_map(square(Q, mono(Q, 1), mono(Q, 2)))
    empty = FreeComplex(Q, {})
    assert validate_chain_map(ChainMap(empty, empty, {}))


def test_cone_of_x1(Q):
    cone, incl, proj = cone_of(basis_map(Q, "x", 1, 3, 3))
    assert sorted(cone.ranks) == [-2, -1, 0]
    d = cone.d(-2)
    assert (d.rows, d.cols) == (2, 1)
    assert d[0, 0] == mono(Q, 3, -1) and d[1, 0] == mono(Q, 1)
    assert validate_chain_map(incl) and validate_chain_map(proj)
    assert (proj @ incl).is_zero()


def test_cone_rejects_non_chain_map(Q):
    with pytest.raises(ValidationError):
        cone_of(square(Q, mono(Q, 1), mono(Q, 2)))


def test_cone_of_identity_contractible(Q):
    cone, _, _ = cone_of(ChainMap.identity(make_P(Q, 3)))
    nf = normal_form(cone)
    assert all(p.kind == "contractible" for p in nf.summands)


def test_cone_of_zero_splits(Q):
    f = ChainMap.zero(make_P(Q, 2), make_P(Q, 3))
    nf = normal_form(cone_of(f)[0])
    assert nf.multiset() == Counter([Piece("two_term", 3, 0), Piece("two_term", 2, 1)])


def test_null_homotopy_examples(field):
    F = field
    h = null_homotopy(square(F, mono(F, 3), mono(F, 3)))
    assert h is not None and h.boundary() == square(F, mono(F, 3), mono(F, 3))
    assert null_homotopy(basis_map(F, "x", 1, 3, 3)) is None
    z = ChainMap.zero(make_P(F, 3), make_P(F, 3))
    hz = null_homotopy(z)
    assert hz is not None and hz.boundary().is_zero()


def test_normal_form_examples(Q):
    nf = normal_form(cone_of(basis_map(Q, "x", 1, 3, 3))[0])
    assert nf.multiset() == Counter([Piece("two_term", 1, 1), Piece("two_term", 1, 0)])
    nf = normal_form(cone_of(basis_map(Q, "x", 0, 3, 1))[0])
    assert nf.multiset() == Counter([Piece("two_term", 2, 1), Piece("contractible", 0, 0)])
    # (y^2; x^1): P3 -> P2[1] + P2
    u = HomMatrix(Q, PObject.of(3), PObject.of((2, 1), 2), {(0, 0): {("y", 2): 1}, (1, 0): {("x", 1): 1}})
    nf = normal_form(cone_of(realize(u))[0])
    assert nf.multiset() == Counter([Piece("two_term", 1, 1), Piece("two_term", 1, 0), Piece("two_term", 3, 1)])


@pytest.mark.parametrize("m", range(1, 7))
def test_basis_cone_pieces(field, m):
    F = field
    for n in range(1, 7):
        for i in range(max(0, n - m), n):
            cone = cone_of(basis_map(F, "x", i, m, n))[0]
            nf = normal_form(cone)
            assert nf.multiset() == Counter([two_term(m - n + i, 1), two_term(i, 0)])
            ident_c = ChainMap.identity(cone)
            assert nf.iso_from @ nf.iso_to == ident_c
            assert nf.iso_to @ nf.iso_from == ChainMap.identity(nf.target)


def _random_hom(F, rng, src, tgt, density=0.7):
    from octacheck.homcat import hom_space_basis
    vec = [F.random(rng) if rng.random() < density else F.zero for _ in hom_space_basis(src, tgt)]
    return HomMatrix.from_vector(F, src, tgt, vec)


def _random_object(rng, k=2):
    return PObject(tuple((rng.randint(1, 4), rng.randint(0, 1)) for _ in range(rng.randint(1, k))))


def _random_homotopy(F, rng, S: FreeComplex, T: FreeComplex) -> Homotopy:
    comps = {}
    for k in S.ranks:
        r, c = T.rank(k - 1), S.rank(k)
        if r:
            comps[k] = PolyMatrix(F, r, c, [[Poly(F, [F.random(rng) for _ in range(3)]) for _ in range(c)]
                                             for _ in range(r)])
    return Homotopy(S, T, comps)


def test_null_homotopy_sound_and_complete(F3):
    rng = random.Random(5)
    for _ in range(30):
        src, tgt = _random_object(rng), _random_object(rng)
        u = _random_hom(F3, rng, src, tgt)
        S, T = realize_object(F3, src), realize_object(F3, tgt)
        f = realize(u) + _random_homotopy(F3, rng, S, T).boundary()
        assert validate_chain_map(f)
        assert presentify(f, src, tgt) == u
        h = null_homotopy(f - realize(u))
        assert h is not None and h.boundary() == f - realize(u)


def test_normal_form_round_trip_on_cones(F5):
    rng = random.Random(9)
    for _ in range(25):
        src, tgt = _random_object(rng), _random_object(rng)
        u = _random_hom(F5, rng, src, tgt)
        cone = cone_of(realize(u))[0]
        nf = normal_form(cone)
        assert nf.iso_from @ nf.iso_to == ChainMap.identity(cone)
        assert nf.iso_to @ nf.iso_from == ChainMap.identity(nf.target)
        assert all(p.kind != "free_stalk" for p in nf.summands)


def test_free_stalk_detected(Q):
    c = FreeComplex(Q, {0: 1})
    assert normal_form(c).multiset() == Counter([Piece("free_stalk", 0, 0)])
