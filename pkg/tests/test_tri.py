import pytest

from octacheck.errors import DomainError, PreconditionError
from octacheck.exactalg import Field
from octacheck.homcat import HomMatrix, PObject, compose
from octacheck.tri import (CERTIFIED_NO, CERTIFIED_YES, FOUND, MAPS, NONE_CERTIFIED, Triangle, basis_triangle,
                           cone_triangle, contradiction_chain, epsilon_deform, goodness_by_uniqueness,
                           is_distinguished, iso_search, reference_deformation, reference_octahedra,
                           validate_octahedron, zero_octahedron)


def P(*summands):
    return PObject(tuple(summands))


def hm(F, src, tgt, entries):
    return HomMatrix(F, P(*src), P(*tgt), entries)


@pytest.mark.parametrize("m,n,i,third", [
    (3, 3, 1, ((1, 1), (1, 0))),
    (3, 3, 2, ((2, 1), (2, 0))),
    (3, 1, 0, ((2, 1),)),
])
def test_basis_triangle_objects(Q, m, n, i, third):
    t = basis_triangle(Q, m, n, i)
    assert t.Z == P(*third)
    rep = is_distinguished(t)
    assert rep.verdict == CERTIFIED_YES
    assert compose(rep.witness, t.g) == cone_triangle(t.f).j


def test_basis_triangle_rejects_bad_index(Q):
    with pytest.raises(DomainError):
        basis_triangle(Q, 3, 3, 3)
    with pytest.raises(DomainError):
        basis_triangle(Q, 1, 3, 0)


def test_identity_triangle_yes_and_x1_no(field):
    P3 = P((3, 0))
    Z = P()
    ident = Triangle.of(HomMatrix.identity(field, P3), HomMatrix.zero(field, P3, Z),
                        HomMatrix.zero(field, Z, P3.shift(1)))
    assert is_distinguished(ident).verdict == CERTIFIED_YES
    x1 = HomMatrix(field, P3, P3, {(0, 0): {("x", 1): 1}})
    bad = Triangle.of(x1, HomMatrix.zero(field, P3, Z), HomMatrix.zero(field, Z, P3.shift(1)))
    assert is_distinguished(bad).verdict == CERTIFIED_NO


def test_zeroed_connecting_map_is_not_distinguished(field):
    t = basis_triangle(field, 3, 3, 1)
    t0 = Triangle.of(t.f, t.g, HomMatrix.zero(field, t.Z, t.X.shift(1)))
    assert is_distinguished(t0).verdict == CERTIFIED_NO


def test_triangle_endpoint_mismatch(Q):
    t = basis_triangle(Q, 3, 3, 1)
    with pytest.raises(DomainError):
        Triangle.of(t.f, t.f, t.h)


def test_rotation_of_distinguished_stays_distinguished(field):
    o1, _ = reference_octahedra(field)
    for name in ("tri1", "tri2", "tri3", "tri4"):
        t = o1.triangles()[name]
        assert is_distinguished(t.rotate()).verdict == CERTIFIED_YES, name
        assert is_distinguished(t.shift(-1)).verdict == CERTIFIED_YES, name


# reference values --------------------------------------------------------------

def test_reference_octahedron_entries(Q):
    o1, o2 = reference_octahedra(Q)
    P3, D, E = ((3, 0),), ((1, 1), (1, 0)), ((2, 1), (2, 0))
    assert o1.f == o1.g == hm(Q, P3, P3, {(0, 0): {("x", 1): 1}})
    assert o1.h == hm(Q, P3, P3, {(0, 0): {("x", 2): 1}})
    assert o1.k == hm(Q, D, E, {(0, 0): {("x", 1): 1}, (1, 1): {("x", 1): 1}})
    assert o2.k == hm(Q, D, E, {(0, 0): {("x", 1): 1}, (0, 1): {("y", 1): 1}, (1, 1): {("x", 1): 1}})
    assert o1.fpp == hm(Q, D, ((3, 1),), {(0, 0): {("x", 2): -1}, (0, 1): {("y", 1): 1}})
    assert o1.kpp == hm(Q, D, ((1, 2), (1, 1)), {(0, 0): {("y", 1): -1}, (1, 1): {("y", 1): 1}})
    assert o1.l == hm(Q, P3, E, {(0, 0): {("y", 2): 1}, (1, 0): {("x", 1): 1}})


def test_both_octahedra_valid_and_good(any_field):
    for o in reference_octahedra(any_field):
        rep = validate_octahedron(o)
        assert all(rep.relations.values())
        assert rep.valid and rep.good


def test_good_triangle_cone_pieces(Q):
    o1, _ = reference_octahedra(Q)
    tris = o1.triangles()
    pieces5 = sorted((p.n, p.shift) for p in cone_triangle(tris["tri5"].f).normal_form.summands
                     if p.kind == "two_term")
    assert pieces5 == [(1, 0), (1, 1), (3, 1)]
    pieces6 = sorted((p.n, p.shift) for p in cone_triangle(tris["tri6"].f).normal_form.summands
                     if p.kind == "two_term")
    assert pieces6 == [(2, 0), (2, 1)]


def test_broken_octahedron_is_invalid(Q):
    o1, _ = reference_octahedra(Q)
    broken = o1.replace(kpp=HomMatrix.zero(Q, o1.F, o1.D.shift(1)))
    rep = validate_octahedron(broken)
    assert not rep.valid and not rep.good


def test_zero_octahedron(F3):
    z = zero_octahedron(F3)
    assert all(goodness_by_uniqueness(z).values())
    assert validate_octahedron(z).good


def test_goodness_by_uniqueness_pattern_is_field_independent():
    # every uniqueness condition fails for the first octahedron
    pats = [goodness_by_uniqueness(reference_octahedra(Field.parse(d))[0]) for d in ("fp:2", "fp:5", "q")]
    assert pats[0] == pats[1] == pats[2]
    assert not any(pats[0].values())


# isomorphism search ------------------------------------------------------------

@pytest.mark.parametrize("desc", ["fp:2", "fp:3", "fp:5", "fp:7", "q"])
def test_reference_octahedra_not_isomorphic(desc):
    F = Field.parse(desc)
    o1, o2 = reference_octahedra(F)
    r = iso_search(o1, o2)
    assert r.verdict == NONE_CERTIFIED
    # frozen system shape and homogeneous dimension
    assert r.constraint_system_size == (42, 21)
    assert r.solution_space_dim == 7
    if F.p:
        assert F.p ** r.solution_space_dim <= 10 ** 6
    assert iso_search(o2, o1).verdict == NONE_CERTIFIED


def test_self_iso_is_identity(field):
    o1, o2 = reference_octahedra(field)
    for o in (o1, o2):
        r = iso_search(o, o)
        assert r.verdict == FOUND and r.method == "identity"
        assert all(phi == HomMatrix.identity(field, o.obj(X)) for X, phi in r.witnesses.items())


def test_conjugated_octahedron_is_isomorphic(field):
    o1, _ = reference_octahedra(field)
    E = o1.E
    eps = HomMatrix(field, E, E, {(0, 1): {("y", 2): 1}})
    a, ainv = HomMatrix.identity(field, E) + eps, HomMatrix.identity(field, E) - eps
    assert a @ ainv == HomMatrix.identity(field, E)
    conj = o1.replace(k=a @ o1.k, l=a @ o1.l, hp=a @ o1.hp,
                      kp=o1.kp @ ainv, hpp=o1.hpp @ ainv, lp=o1.lp @ ainv)
    r = iso_search(o1, conj)
    assert r.verdict == FOUND
    for name in ("k", "kp", "l", "lp", "hp", "hpp"):
        s, t, sh = MAPS[name]
        assert conj.map(name) @ r.witnesses[s] == r.witnesses[t].shift(sh) @ o1.map(name)


def test_contradiction_chain_over_q(Q):
    o1, o2 = reference_octahedra(Q)
    c = contradiction_chain(o1, o2)
    assert c.beta_E_minus_beta == 1
    assert c.beta1_E_minus_beta == 0
    assert c.feasible_before and not c.feasible_after
    assert c.detected


# deformation ---------------------------------------------------------------------

def test_reference_deformation_reproduces_second(any_field):
    o1, o2 = reference_octahedra(any_field)
    d = epsilon_deform(o1, *reference_deformation(any_field))
    assert d == o2
    assert validate_octahedron(d).good


def test_zero_deformation_is_identity(Q):
    o1, _ = reference_octahedra(Q)
    z = HomMatrix.zero(Q, o1.E, o1.E)
    assert epsilon_deform(o1, z) == o1


def test_identity_deformation_rejected(Q):
    o1, _ = reference_octahedra(Q)
    with pytest.raises(PreconditionError, match="eps o eps"):
        epsilon_deform(o1, HomMatrix.identity(Q, o1.E))


def test_deformation_needs_both_auxiliaries(Q):
    o1, _ = reference_octahedra(Q)
    eps, eps1, _ = reference_deformation(Q)
    with pytest.raises(PreconditionError):
        epsilon_deform(o1, eps, eps1, None)
