"""JSON encoding of complexes, morphisms, triangles, octahedra and S-morphisms.

Every document carries ``"type"`` and ``"field"``; coefficients are strings
(``"2/3"``, ``"4"``) and polynomials sparse strings such as ``"1 + x^3"``.
Dumps use sorted keys so reports are byte-stable.
"""
from __future__ import annotations

import json
from typing import Any

from .complex import FreeComplex
from .errors import ValidationError
from .exactalg import Field, Poly, PolyMatrix
from .homcat import HomMatrix, PObject
from .scat import SMorphism, build_category
from .tri import MAPS, OBJECTS, Octahedron, Triangle


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _field_of(doc: dict, field: Field | None) -> Field:
    if "field" in doc:
        return Field.parse(doc["field"])
    if field is None:
        raise ValidationError("document has no field and none was given")
    return field


def _req(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ValidationError(f"missing key {key!r}")
    return doc[key]


# objects and morphisms in the P-category --------------------------------------

def encode_object(obj: PObject) -> dict:
    return {"summands": [{"n": n, "shift": s} for n, s in obj.summands]}


def decode_object(doc: dict) -> PObject:
    try:
        return PObject(tuple((int(s["n"]), int(s.get("shift", 0))) for s in _req(doc, "summands")))
    except (TypeError, KeyError) as e:
        raise ValidationError(f"bad object: {e}") from e


def encode_hom(u: HomMatrix) -> dict:
    F = u.field
    entries = []
    for (j, i), terms in sorted(u.entries.items()):
        entries.append({"row": j, "col": i, "terms": [
            {"kind": k, "i": e, "coeff": F.fmt(c)} for (k, e), c in sorted(terms.items())]})
    return {"type": "HomMatrix", "field": F.descriptor, "src": encode_object(u.src),
            "tgt": encode_object(u.tgt), "entries": entries}


def decode_hom(doc: dict, field: Field | None = None) -> HomMatrix:
    F = _field_of(doc, field)
    try:
        entries = {}
        for ent in _req(doc, "entries"):
            terms = {(t["kind"], int(t["i"])): F(str(t["coeff"])) for t in ent["terms"]}
            entries[(int(ent["row"]), int(ent["col"]))] = terms
    except (TypeError, KeyError, ValueError) as e:
        raise ValidationError(f"bad HomMatrix: {e}") from e
    return HomMatrix(F, decode_object(_req(doc, "src")), decode_object(_req(doc, "tgt")), entries)


# complexes --------------------------------------------------------------------

def encode_complex(c: FreeComplex) -> dict:
    diffs = {}
    for k, d in sorted(c.diffs.items()):
        diffs[str(k)] = [[str(d[r, s]) for s in range(d.cols)] for r in range(d.rows)]
    return {"type": "FreeComplex", "field": c.field.descriptor,
            "ranks": {str(k): r for k, r in sorted(c.ranks.items())}, "diffs": diffs}


def decode_complex(doc: dict, field: Field | None = None) -> FreeComplex:
    F = _field_of(doc, field)
    try:
        ranks = {int(k): int(r) for k, r in _req(doc, "ranks").items()}
        diffs = {}
        for k, rows in doc.get("diffs", {}).items():
            k = int(k)
            cols = ranks.get(k, 0)
            diffs[k] = PolyMatrix.from_rows(F, [[Poly.parse(F, x) for x in row] for row in rows], cols)
    except (TypeError, AttributeError, ValueError) as e:
        raise ValidationError(f"bad FreeComplex: {e}") from e
    return FreeComplex(F, ranks, diffs)


# triangles and octahedra ------------------------------------------------------

def encode_triangle(t: Triangle) -> dict:
    return {"type": "Triangle", "field": t.f.field.descriptor,
            "f": encode_hom(t.f), "g": encode_hom(t.g), "h": encode_hom(t.h)}


def decode_triangle(doc: dict, field: Field | None = None) -> Triangle:
    F = _field_of(doc, field)
    return Triangle.of(*(decode_hom(_req(doc, k), F) for k in ("f", "g", "h")))


def encode_octahedron(o: Octahedron) -> dict:
    return {"type": "Octahedron", "field": o.field.descriptor,
            "objects": {X: encode_object(o.obj(X)) for X in OBJECTS},
            "maps": {name: encode_hom(o.map(name)) for name in MAPS}}


def decode_octahedron(doc: dict, field: Field | None = None) -> Octahedron:
    F = _field_of(doc, field)
    objs = {X: decode_object(_req(_req(doc, "objects"), X)) for X in OBJECTS}
    maps = {name: decode_hom(_req(_req(doc, "maps"), name), F) for name in MAPS}
    return Octahedron(**objs, **maps)


# morphisms in a presented category ---------------------------------------------

def encode_smorphism(u: SMorphism) -> dict:
    F = u.field
    return {"type": "SMorphism", "field": F.descriptor, "category": u.cat.name,
            "src": [{"obj": X, "shift": n} for X, n in u.src],
            "tgt": [{"obj": X, "shift": n} for X, n in u.tgt],
            "entries": [{"row": j, "col": i, "basis": name, "coeff": F.fmt(c)}
                        for (j, i, name), c in sorted(u.coeffs.items())]}


_CATEGORIES: dict = {}


def category(name: str):
    if name not in _CATEGORIES:
        _CATEGORIES[name] = build_category(name)
    return _CATEGORIES[name]


def decode_smorphism(doc: dict, field: Field | None = None) -> SMorphism:
    F = _field_of(doc, field)
    try:
        cat = category(doc.get("category", "S"))
        src = [(s["obj"], int(s.get("shift", 0))) for s in _req(doc, "src")]
        tgt = [(s["obj"], int(s.get("shift", 0))) for s in _req(doc, "tgt")]
        coeffs = {(int(e["row"]), int(e["col"]), e["basis"]): F(str(e["coeff"])) for e in _req(doc, "entries")}
    except (TypeError, KeyError, ValueError) as e:
        raise ValidationError(f"bad SMorphism: {e}") from e
    return SMorphism(cat, F, src, tgt, coeffs)


ENCODERS = {FreeComplex: encode_complex, HomMatrix: encode_hom, Triangle: encode_triangle,
            Octahedron: encode_octahedron, SMorphism: encode_smorphism}
DECODERS = {"FreeComplex": decode_complex, "HomMatrix": decode_hom, "Triangle": decode_triangle,
            "Octahedron": decode_octahedron, "SMorphism": decode_smorphism}


def encode(v) -> dict:
    try:
        return ENCODERS[type(v)](v)
    except KeyError:
        raise ValidationError(f"cannot encode {type(v).__name__}") from None


def decode(doc: dict, field: Field | None = None, expect: str | None = None):
    kind = _req(doc, "type")
    if expect is not None and kind != expect:
        raise ValidationError(f"expected a {expect}, got {kind}")
    if kind not in DECODERS:
        raise ValidationError(f"unknown document type {kind!r}")
    return DECODERS[kind](doc, field)
