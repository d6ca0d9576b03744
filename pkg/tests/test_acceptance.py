"""The eleven acceptance criteria, one test each.

A summary line per criterion is printed at the end of the run (see
``conftest.py``).
"""
import itertools
import random
import subprocess
import sys
import time
from collections import Counter

import pytest

from octacheck.exactalg import Field, solve_affine
from octacheck.homcat import structure_constant_sweep
from octacheck.scat import (beilinson_functors, build_category, canonical_piece, category_relations,
                            check_functor, compose_functors, decompose_morphism, functor_from_octahedron,
                            functor_triangle_images, hom_table, is_identity_functor, random_smorphism)
from octacheck.tri import (CERTIFIED_YES, FOUND, NONE_CERTIFIED, _IsoSystem, basis_triangle, cone_triangle,
                           contradiction_chain, epsilon_deform, is_distinguished, iso_search,
                           reference_deformation, reference_octahedra, validate_octahedron)
from octacheck.verify import EXPECTED_S_HOMS, FIELDS

from oracles import nontrivial_idempotents

Q = Field.rationals()
PRIMES = (2, 3, 5, 7)


@pytest.mark.criterion(1, "structure constants agree with realized composition")
def test_criterion_1_structure_constants():
    for F, budget in ((Field.gf(5), 60), (Q, 300)):
        t0 = time.perf_counter()
        checked, bad = structure_constant_sweep(F, max_rank=6, shifts=(0, 1))
        assert checked > 0 and bad == []
        assert time.perf_counter() - t0 < budget


@pytest.mark.criterion(2, "basis cone triangles are distinguished")
def test_criterion_2_basis_triangles():
    count = 0
    for m, n in itertools.product(range(1, 7), repeat=2):
        for i in range(max(0, n - m), n):
            assert is_distinguished(basis_triangle(Q, m, n, i)).verdict == CERTIFIED_YES, (m, n, i)
            count += 1
    assert count == sum(min(m, n) for m in range(1, 7) for n in range(1, 7))


@pytest.mark.criterion(3, "the two goodness triangles are distinguished with the stated cones")
def test_criterion_3_goodness_triangles():
    o1, _ = reference_octahedra(Q)
    tris = o1.triangles()
    expected = {"tri5": Counter({(1, 1): 1, (1, 0): 1, (3, 1): 1}),
                "tri6": Counter({(2, 1): 1, (2, 0): 1})}
    for name, want in expected.items():
        assert is_distinguished(tris[name]).verdict == CERTIFIED_YES
        pieces = cone_triangle(tris[name].f).normal_form.summands
        assert Counter((p.n, p.shift) for p in pieces if p.kind == "two_term") == want
        # anything else in the cone is contractible
        assert all(p.kind in ("two_term", "contractible") for p in pieces)


@pytest.mark.criterion(4, "both octahedra are valid and good")
def test_criterion_4_octahedra():
    for desc in FIELDS:
        for o in reference_octahedra(Field.parse(desc)):
            rep = validate_octahedron(o)
            assert rep.valid and rep.good, desc


def _enumerate_for_invertible(F, o1, o2) -> int:
    """Walk every point of the homogeneous solution space and count those
    with all unit coordinates nonzero (all unit blocks are 1x1 here)."""
    sys_ = _IsoSystem(o1, o2)
    space = solve_affine(sys_.rows(), sys_.n, F)
    blocks = sys_.blocks()
    assert all(len(b) == 1 and len(b[0]) == 1 for b in blocks)
    units = [b[0][0] for b in blocks]
    M = [[vec[c].v for vec in space.basis] for c in units]
    p = F.p
    hits = 0
    for coeffs in itertools.product(range(p), repeat=len(space.basis)):
        if all(sum(a * t for a, t in zip(row, coeffs)) % p for row in M):
            hits += 1
    return hits


@pytest.mark.criterion(5, "the octahedra are not isomorphic")
def test_criterion_5_non_isomorphism():
    for p in PRIMES:
        F = Field.gf(p)
        o1, o2 = reference_octahedra(F)
        rep = iso_search(o1, o2)
        assert rep.verdict == NONE_CERTIFIED
        assert p ** rep.solution_space_dim <= 10 ** 6
        assert _enumerate_for_invertible(F, o1, o2) == 0
        for o in (o1, o2):
            same = iso_search(o, o)
            assert same.verdict == FOUND and same.method == "identity"
    o1, o2 = reference_octahedra(Q)
    c = contradiction_chain(o1, o2)
    assert c.detected
    assert c.beta_E_minus_beta == 1 and c.beta1_E_minus_beta == 0


@pytest.mark.criterion(6, "the deformation reproduces the second octahedron")
def test_criterion_6_deformation():
    for desc in FIELDS:
        F = Field.parse(desc)
        o1, o2 = reference_octahedra(F)
        d = epsilon_deform(o1, *reference_deformation(F))
        assert d == o2
        for name in ("k", "kp"):
            assert d.map(name).entries == o2.map(name).entries
        assert validate_octahedron(d).good


@pytest.mark.criterion(7, "the category S is associative with the stated Homs and relations")
def test_criterion_7_category_S():
    S = build_category("S")
    assert S.associativity_failures() == []
    assert hom_table(S, range(-3, 4)) == EXPECTED_S_HOMS
    rel = category_relations(S, Q)
    assert len(rel) == 12 and all(rel.values())


@pytest.mark.criterion(8, "Krull-Schmidt decomposition of random morphisms")
def test_criterion_8_krull_schmidt():
    S = build_category("S")
    F = Field.gf(3)
    rng = random.Random(0)
    t0 = time.perf_counter()
    seen_pieces = {}
    for _ in range(200):
        u = random_smorphism(S, F, rng, max_summands=4)
        d = decompose_morphism(u)
        assert d.recompose() == u
        sp, tp = list(range(len(u.src))), list(range(len(u.tgt)))
        rng.shuffle(sp)
        rng.shuffle(tp)
        assert decompose_morphism(u.permuted(sp, tp)).multiset() == d.multiset()
        if len(u.src) <= 2 and len(u.tgt) <= 2:
            assert (nontrivial_idempotents(u) == 0) == (len(d.pieces) == 1)
            for p in d.pieces:
                if p.key not in seen_pieces:
                    seen_pieces[p.key] = nontrivial_idempotents(canonical_piece(S, F, *p.key))
    assert seen_pieces and not any(seen_pieces.values())
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(9, "functors from both octahedra are exact on the generating triangles")
def test_criterion_9_functors():
    o1, o2 = reference_octahedra(Q)
    F1, F2 = functor_from_octahedron(o1), functor_from_octahedron(o2)
    for Fn in (F1, F2):
        assert check_functor(Fn)
        imgs = functor_triangle_images(Fn)
        assert len(imgs) == 6 and set(imgs.values()) == {CERTIFIED_YES}
    assert all(F1.obj_map[X] == F2.obj_map[X] for X in "ABC")
    assert all(F1.arrow_map[a] == F2.arrow_map[a] for a in "fgh")


@pytest.mark.criterion(10, "R o S is the identity")
def test_criterion_10_beilinson():
    S_, R, _, E, _ = beilinson_functors(Q)
    assert check_functor(S_) and check_functor(R)
    RS = compose_functors(R, S_)
    assert is_identity_functor(RS)
    for name in E.arrows:
        assert RS.image(name) == {name: 1}


@pytest.mark.criterion(11, "verify-paper exits 0 on every configured field")
def test_criterion_11_end_to_end():
    t0 = time.perf_counter()
    res = subprocess.run([sys.executable, "-m", "octacheck", "verify-paper", "--field", "all", "--quiet"],
                         capture_output=True, text=True, timeout=600)
    assert res.returncode == 0, res.stderr
    assert time.perf_counter() - t0 < 600
