"""End-to-end verification of the two octahedra and everything they rest on.

Each check returns ``(verdict, summary)`` with verdict ``"pass"``, ``"fail"``
or ``"inconclusive"``; :func:`verify_paper` times them and assembles a
:class:`VerificationReport`.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable

from .exactalg import Field
from .homcat import structure_constant_sweep
from .scat import (beilinson_functors, build_category, category_relations, check_functor,
                   compose_functors, decompose_morphism, functor_from_octahedron,
                   functor_triangle_images, hom_table, is_identity_functor, random_smorphism)
from .tri import (CERTIFIED_YES, FOUND, INCONCLUSIVE, NONE_CERTIFIED, basis_triangle,
                  contradiction_chain, cone_triangle, epsilon_deform, goodness_by_uniqueness,
                  is_distinguished, iso_search, reference_deformation, reference_octahedra,
                  validate_octahedron)

PASS, FAIL, INCONC = "pass", "fail", "inconclusive"
FIELDS = ("fp:2", "fp:3", "fp:5", "fp:7", "q")

# the nonzero Hom spaces of S between its six objects
EXPECTED_S_HOMS = {
    ("A", "B", 0): ["f"], ("B", "D", 0): ["fp"], ("D", "A", 1): ["fpp"],
    ("B", "C", 0): ["g"], ("C", "F", 0): ["gp"], ("F", "B", 1): ["gpp"],
    ("A", "C", 0): ["h"], ("C", "E", 0): ["hp"], ("E", "A", 1): ["hpp"],
    ("D", "E", 0): ["k"], ("E", "F", 0): ["kp"], ("F", "D", 1): ["kpp"],
    ("B", "E", 0): ["l"], ("E", "B", 1): ["lp"],
}


@dataclass
class CheckRecord:
    name: str
    verdict: str
    summary: dict
    elapsed: float | None = None


@dataclass
class VerificationReport:
    field: str
    seed: int
    records: list[CheckRecord] = dc_field(default_factory=list)

    @property
    def overall(self) -> str:
        verdicts = {r.verdict for r in self.records}
        if FAIL in verdicts:
            return FAIL
        if INCONC in verdicts:
            return INCONC
        return PASS

    def to_json(self, timing: bool = True) -> dict:
        recs = []
        for r in self.records:
            d = asdict(r)
            if timing:
                d["elapsed"] = round(r.elapsed or 0.0, 3)
            else:
                d.pop("elapsed")
            recs.append(d)
        return {"field": self.field, "seed": self.seed, "overall": self.overall, "records": recs}


def _verdict(ok: bool, inconclusive: bool = False) -> str:
    if ok:
        return PASS
    return INCONC if inconclusive else FAIL


def check_octahedra(F: Field, seed: int):
    o1, o2 = reference_octahedra(F)
    r1, r2 = validate_octahedron(o1, seed=seed), validate_octahedron(o2, seed=seed)
    tri = {f"oct{i}.{k}": v for i, r in ((1, r1), (2, r2)) for k, v in r.triangles.items()}
    ok = r1.valid and r1.good and r2.valid and r2.good
    inc = any(v == INCONCLUSIVE for v in tri.values())
    return _verdict(ok, inc), {"oct1": {"valid": r1.valid, "good": r1.good},
                               "oct2": {"valid": r2.valid, "good": r2.good}, "triangles": tri}


def check_good_triangles(F: Field, seed: int):
    o1, _ = reference_octahedra(F)
    tris = o1.triangles()
    out, ok = {}, True
    expected = {"tri5": Counter({(1, 1): 1, (3, 1): 1, (1, 0): 1}),
                "tri6": Counter({(2, 1): 1, (2, 0): 1})}
    for name in ("tri5", "tri6"):
        rep = is_distinguished(tris[name], seed=seed)
        nf = cone_triangle(tris[name].f).normal_form
        two = Counter((p.n, p.shift) for p in nf.summands if p.kind == "two_term")
        out[name] = {"verdict": rep.verdict, "cone": [f"{p.kind}:P{p.n}[{p.shift}]" for p in nf.summands]}
        ok = ok and rep.verdict == CERTIFIED_YES and two == expected[name]
    return _verdict(ok), out


def check_goodness_by_uniqueness(F: Field, seed: int):
    o1, _ = reference_octahedra(F)
    pattern = goodness_by_uniqueness(o1)
    # all-true would have to imply good; the pattern itself is field independent
    ok = not all(pattern.values()) or validate_octahedron(o1, seed=seed).good
    return _verdict(ok), {"oct1": pattern}


def check_deformation(F: Field, seed: int):
    o1, o2 = reference_octahedra(F)
    d = epsilon_deform(o1, *reference_deformation(F))
    rep = validate_octahedron(d, seed=seed)
    ok = d == o2 and rep.good
    return _verdict(ok), {"equals_oct2": d == o2, "good": rep.good}


def check_iso_search(F: Field, seed: int):
    o1, o2 = reference_octahedra(F)
    r12, r21, r11 = iso_search(o1, o2, seed=seed), iso_search(o2, o1, seed=seed), iso_search(o1, o1, seed=seed)
    ok = r12.verdict == NONE_CERTIFIED and r21.verdict == NONE_CERTIFIED and r11.verdict == FOUND
    inc = INCONCLUSIVE in (r12.verdict, r21.verdict, r11.verdict)
    return _verdict(ok, inc), {
        "oct1_oct2": r12.verdict, "oct2_oct1": r21.verdict, "oct1_oct1": r11.verdict,
        "method": r12.method, "system": list(r12.constraint_system_size),
        "solution_space_dim": r12.solution_space_dim}


def check_contradiction(F: Field, seed: int):
    o1, o2 = reference_octahedra(F)
    c = contradiction_chain(o1, o2)
    return _verdict(c.detected), {"beta_E - beta": str(c.beta_E_minus_beta),
                                  "beta'_E - beta": str(c.beta1_E_minus_beta),
                                  "feasible_before_h'": c.feasible_before,
                                  "feasible_after_h'": c.feasible_after}


def check_functors(F: Field, seed: int):
    o1, o2 = reference_octahedra(F)
    F1, F2 = functor_from_octahedron(o1, seed=seed), functor_from_octahedron(o2, seed=seed)
    imgs = {"oct1": functor_triangle_images(F1, seed=seed), "oct2": functor_triangle_images(F2, seed=seed)}
    agree = all(F1.obj_map[X] == F2.obj_map[X] for X in "ABC") and \
        all(F1.arrow_map[x] == F2.arrow_map[x] for x in "fgh")
    differ_k = F1.arrow_map["k"] != F2.arrow_map["k"]
    ok = check_functor(F1) and check_functor(F2) and agree and differ_k and \
        all(v == CERTIFIED_YES for d in imgs.values() for v in d.values())
    inc = any(v == INCONCLUSIVE for d in imgs.values() for v in d.values())
    return _verdict(ok, inc), {"triangle_images": imgs, "agree_on_ABC_fgh": agree, "differ_on_k": differ_k}


def check_structure_constants(F: Field, seed: int):
    n, bad = structure_constant_sweep(F, 6)
    return _verdict(not bad), {"pairs": n, "mismatches": len(bad)}


def check_basis_triangles(F: Field, seed: int):
    counts: Counter = Counter()
    for m in range(1, 7):
        for n in range(1, 7):
            for i in range(max(0, n - m), n):
                counts[is_distinguished(basis_triangle(F, m, n, i), seed=seed).verdict] += 1
    ok = set(counts) == {CERTIFIED_YES}
    return _verdict(ok, set(counts) == {CERTIFIED_YES, INCONCLUSIVE}), dict(counts)


def check_category_S(F: Field, seed: int):
    S = build_category("S")
    assoc = S.associativity_failures()
    table = hom_table(S)
    rel = category_relations(S, F)
    ok = not assoc and table == EXPECTED_S_HOMS and all(rel.values())
    return _verdict(ok), {"associativity_failures": len(assoc), "hom_table_matches": table == EXPECTED_S_HOMS,
                          "relations": rel}


def check_decomposition(F: Field, seed: int, trials: int = 100):
    S = build_category("S")
    rng = random.Random(seed)
    pieces: Counter = Counter()
    bad = 0
    for _ in range(trials):
        u = random_smorphism(S, F, rng)
        d = decompose_morphism(u)
        sp, tp = list(range(len(u.src))), list(range(len(u.tgt)))
        rng.shuffle(sp)
        rng.shuffle(tp)
        if d.recompose() != u or decompose_morphism(u.permuted(sp, tp)).multiset() != d.multiset():
            bad += 1
        pieces.update(p.tag for p in d.pieces)
    return _verdict(bad == 0), {"trials": trials, "failures": bad, "distinct_piece_tags": len(pieces)}


def check_beilinson(F: Field, seed: int):
    S, R, Rbad, _, _ = beilinson_functors(F)
    rs = compose_functors(R, S)
    ok = check_functor(S) and check_functor(R) and not check_functor(Rbad) and is_identity_functor(rs)
    return _verdict(ok), {"S": check_functor(S), "R": check_functor(R), "R'": check_functor(Rbad),
                          "R o S = id": is_identity_functor(rs)}


CHECKS: list[tuple[str, Callable]] = [
    ("octahedra", check_octahedra),
    ("good-triangles", check_good_triangles),
    ("goodness-by-uniqueness", check_goodness_by_uniqueness),
    ("epsilon-deform", check_deformation),
    ("iso-oct", check_iso_search),
    ("contradiction-chain", check_contradiction),
    ("functors", check_functors),
    ("structure-constants", check_structure_constants),
    ("basis-triangles", check_basis_triangles),
    ("category-S", check_category_S),
    ("decompose", check_decomposition),
    ("beilinson-retraction", check_beilinson),
]


def verify_paper(F: Field, seed: int = 0, only: list[str] | None = None) -> VerificationReport:
    rep = VerificationReport(F.descriptor, seed)
    for name, fn in CHECKS:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        verdict, summary = fn(F, seed)
        rep.records.append(CheckRecord(name, verdict, summary, time.perf_counter() - t0))
    return rep


__all__ = ["CHECKS", "CheckRecord", "EXPECTED_S_HOMS", "FIELDS", "VerificationReport", "verify_paper"]
