import random

import pytest
from hypothesis import given, settings, strategies as st

from octacheck.complex import ChainMap, make_P, null_homotopy
from octacheck.errors import DomainError, ValidationError
from octacheck.exactalg import Field, Poly, PolyMatrix, solve_affine
from octacheck.homcat import (HomMatrix, PObject, compose, hom_basis, hom_space_basis, is_invertible,
                              linear_map_matrix, presentify, realize, structure_constant_sweep)
from octacheck.tri import reference_deformation, reference_octahedra


def B(F, kind, i, m, n, shift=0, c=1):
    return HomMatrix.basis(F, kind, i, m, n, shift, c)


def names(src, tgt):
    return [b.name for b in hom_basis(src, tgt)]


def test_hom_basis_examples():
    assert names((3, 0), (3, 0)) == ["x0", "x1", "x2"]
    assert names((3, 0), (2, 1)) == ["y2", "y3"]
    assert names((1, 0), (3, 2)) == []
    assert names((1, 0), (3, 0)) == ["x2"]
    assert names((3, 0), (1, 1)) == ["y3"]


def test_pobject_parse():
    assert PObject.parse("P3") == PObject.of(3)
    assert PObject.parse("P2[1]") == PObject.of((2, 1))
    assert PObject.parse("SP1 + P1") == PObject.of((1, 1), 1)
    assert PObject.parse("0") == PObject()
    with pytest.raises(DomainError):
        PObject.parse("Q3")


def test_compose_examples(field):
    F = field
    assert compose(B(F, "x", 1, 3, 3), B(F, "x", 1, 3, 3)) == B(F, "x", 2, 3, 3)
    assert compose(B(F, "x", 2, 3, 3), B(F, "x", 1, 3, 3)).is_zero()
    assert compose(B(F, "y", 3, 3, 2), B(F, "x", 1, 3, 3)) == B(F, "y", 2, 3, 2)
    assert compose(B(F, "x", 1, 3, 3, shift=1), B(F, "y", 2, 2, 3)) == B(F, "y", 1, 2, 3)
    # y o y lands two shifts up: always zero
    assert compose(B(F, "y", 1, 2, 2, shift=1), B(F, "y", 2, 2, 2)).is_zero()


def test_compose_mismatch(Q):
    with pytest.raises(DomainError):
        compose(B(Q, "x", 0, 3, 3), B(Q, "x", 0, 2, 2))


def test_invalid_basis_morphism(Q):
    with pytest.raises(DomainError):
        B(Q, "x", 3, 3, 3)
    with pytest.raises(DomainError):
        B(Q, "y", 1, 3, 2)


def test_realize_examples(Q):
    f = realize(B(Q, "x", 1, 3, 3))
    assert f.comp(0)[0, 0] == Poly.monomial(Q, 1) and f.comp(-1)[0, 0] == Poly.monomial(Q, 1)
    g = realize(B(Q, "y", 3, 3, 1))
    assert g.comp(-1)[0, 0] == Poly.const(Q, 1)
    assert g.target.d(-2)[0, 0] == Poly.monomial(Q, 1, -1)
    z = realize(HomMatrix.zero(Q, PObject.of(2), PObject.of(3)))
    assert z.is_zero()


def _square(F, top, bottom):
    one = lambda p: PolyMatrix(F, 1, 1, [[p]])  # noqa: E731
    return ChainMap(make_P(F, 3), make_P(F, 3), {-1: one(bottom), 0: one(top)})


def test_presentify_examples(Q):
    P3 = PObject.of(3)
    assert presentify(realize(B(Q, "x", 1, 3, 3)), P3, P3) == B(Q, "x", 1, 3, 3)
    x3 = Poly.monomial(Q, 3)
    assert presentify(_square(Q, x3, x3), P3, P3).is_zero()
    p = Poly.parse(Q, "x + x^3")
    f = _square(Q, p, p)
    assert presentify(f, P3, P3) == B(Q, "x", 1, 3, 3)
    assert null_homotopy(f - realize(B(Q, "x", 1, 3, 3))) is not None


def test_presentify_rejects_non_chain_map(Q):
    P3 = PObject.of(3)
    with pytest.raises(ValidationError):
        presentify(_square(Q, Poly.monomial(Q, 1), Poly.monomial(Q, 2)), P3, P3)


def test_is_invertible_examples(field):
    F = field
    E = PObject.of((2, 1), 2)
    ok, inv = is_invertible(HomMatrix.identity(F, E))
    assert ok and inv == HomMatrix.identity(F, E)
    eps = reference_deformation(F)[0]
    one = HomMatrix.identity(F, E)
    ok, inv = is_invertible(one + eps)
    assert ok and inv == one - eps
    assert not is_invertible(B(F, "x", 1, 3, 3))[0]


def test_x1_has_no_inverse_by_exhaustion():
    F = Field.gf(2)
    P3 = PObject.of(3)
    u = B(F, "x", 1, 3, 3)
    for vec in [[a, b, c] for a in F.elements() for b in F.elements() for c in F.elements()]:
        v = HomMatrix.from_vector(F, P3, P3, vec)
        assert compose(v, u) != HomMatrix.identity(F, P3)


def test_structure_constants_gf5():
    checked, bad = structure_constant_sweep(Field.gf(5), 6)
    assert checked == 6188 and bad == []


def _rand_obj(rng, k=3):
    return PObject(tuple((rng.randint(1, 4), rng.randint(0, 1)) for _ in range(rng.randint(1, k))))


def _rand_hom(F, rng, src, tgt):
    return HomMatrix.from_vector(F, src, tgt, [F.random(rng) for _ in hom_space_basis(src, tgt)])


def test_bilinear_and_associative_gf3():
    F = Field.gf(3)
    rng = random.Random(2)
    for _ in range(500):
        a, b, c, d = (_rand_obj(rng) for _ in range(4))
        f, f2 = _rand_hom(F, rng, a, b), _rand_hom(F, rng, a, b)
        g = _rand_hom(F, rng, b, c)
        h = _rand_hom(F, rng, c, d)
        assert h @ (g @ f) == (h @ g) @ f
        assert g @ (f + f2) == g @ f + g @ f2
        assert g @ f.scale(2) == (g @ f).scale(2)


def test_shift_invariance(Q):
    for m in range(1, 5):
        for n in range(1, 5):
            for fb in hom_basis((m, 0), (n, 0)):
                for gb in hom_basis((n, 0), (m, 1)):
                    f = B(Q, fb.kind, fb.i, m, n)
                    g = HomMatrix(Q, PObject.of(n), PObject.of((m, 1)), {(0, 0): {(gb.kind, gb.i): 1}})
                    assert (g @ f).shift(2) == g.shift(2) @ f.shift(2)


def _generic_invertible(u):
    F = u.field
    n = len(hom_space_basis(u.tgt, u.src))

    def both(vec):
        v = HomMatrix.from_vector(F, u.tgt, u.src, vec)
        return (v @ u).to_vector() + (u @ v).to_vector()

    A = linear_map_matrix(F, both, n)
    rhs = HomMatrix.identity(F, u.src).to_vector() + HomMatrix.identity(F, u.tgt).to_vector()
    return solve_affine(list(zip(A, rhs)), n, F).feasible


def test_invertibility_agrees_with_generic_solver():
    F = Field.gf(3)
    rng = random.Random(4)
    for _ in range(200):
        src = _rand_obj(rng)
        tgt = PObject(tuple(rng.sample(src.summands, len(src)))) if rng.random() < 0.7 else _rand_obj(rng)
        u = _rand_hom(F, rng, src, tgt)
        assert is_invertible(u)[0] == _generic_invertible(u)
    for o in reference_octahedra(F):
        for X in "ABCDEF":
            obj = o.obj(X)
            for _ in range(5):
                u = _rand_hom(F, rng, obj, obj)
                assert is_invertible(u)[0] == _generic_invertible(u)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_vector_round_trip(data):
    F = Field.gf(5)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    src, tgt = _rand_obj(rng), _rand_obj(rng)
    u = _rand_hom(F, rng, src, tgt)
    assert HomMatrix.from_vector(F, src, tgt, u.to_vector()) == u
    assert u.shift(3).shift(-3) == u
    assert (u - u).is_zero()
