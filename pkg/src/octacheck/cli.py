"""Command-line interface.

Exit codes: 0 pass (or a certified report), 1 fail / certified negative,
2 unreadable or malformed input, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import OctacheckError
from .exactalg import Field
from .homcat import PObject, hom_basis, hom_space_basis
from .serialize import decode, dumps, encode_hom
from .tri import CERTIFIED_YES, FOUND, INCONCLUSIVE, NONE_CERTIFIED, is_distinguished, iso_search
from .scat import decompose_morphism
from .verify import FIELDS, verify_paper

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _seed(args) -> int:
    env = os.environ.get("OCTACHECK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"OCTACHECK_SEED must be an integer, got {env!r}") from None
    return args.seed


def _field(text: str | None) -> Field | None:
    if text is None:
        return None
    try:
        return Field.parse(text)
    except OctacheckError as e:
        raise InputError(str(e)) from e


def _load(path: str, field: Field | None, expect: str):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON: {e}") from e
    try:
        return decode(doc, field, expect=expect)
    except (OctacheckError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"{path}: {e}") from e


def _emit(doc, out: str | None = None):
    text = dumps(doc)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_verify_paper(args) -> int:
    fields = list(FIELDS) if args.field == "all" else [args.field]
    seed = _seed(args)
    reports = []
    for desc in fields:
        F = _field(desc)
        rep = verify_paper(F, seed=seed, only=args.only)
        reports.append(rep)
        if not args.quiet:
            for r in rep.records:
                print(f"[{rep.field}] {r.name:24s} {r.verdict}", file=sys.stderr)
    docs = [r.to_json(timing=not args.no_timing) for r in reports]
    _emit(docs[0] if len(docs) == 1 else {"reports": docs}, args.out)
    overall = {r.overall for r in reports}
    if "fail" in overall:
        return EXIT_FAIL
    if "inconclusive" in overall:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_hom(args) -> int:
    try:
        src, tgt = PObject.parse(args.src), PObject.parse(args.dst)
    except OctacheckError as e:
        raise InputError(str(e)) from e
    if len(src) == 1 and len(tgt) == 1:
        names = [b.name for b in hom_basis(src.summands[0], tgt.summands[0])]
    else:
        names = [f"({j},{i}):{b.name}" for j, i, b in hom_space_basis(src, tgt)]
    print(json.dumps(names))
    return EXIT_OK


def cmd_compose(args) -> int:
    F = _field(args.field)
    g = _load(args.lhs, F, "HomMatrix")
    f = _load(args.rhs, F, "HomMatrix")
    if g.field != f.field:
        raise InputError("operands are over different fields")
    if f.tgt != g.src:
        raise InputError(f"cannot compose: {f.tgt} != {g.src}")
    _emit(encode_hom(g @ f), args.out)
    return EXIT_OK


def cmd_check_triangle(args) -> int:
    t = _load(args.file, _field(args.field), "Triangle")
    rep = is_distinguished(t, seed=_seed(args))
    _emit({"verdict": rep.verdict, "method": rep.method, "solution_dim": rep.solution_dim,
           "cone_pieces": [f"{p.kind}:P{p.n}[{p.shift}]" for p in rep.cone_pieces],
           "witness": encode_hom(rep.witness) if rep.witness is not None else None}, args.out)
    return {CERTIFIED_YES: EXIT_OK, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(rep.verdict, EXIT_FAIL)


def cmd_iso_oct(args) -> int:
    F = _field(args.field)
    o1 = _load(args.first, F, "Octahedron")
    o2 = _load(args.second, F, "Octahedron")
    rep = iso_search(o1, o2, seed=_seed(args))
    _emit({"verdict": rep.verdict, "method": rep.method, "field": rep.field,
           "constraint_system_size": list(rep.constraint_system_size),
           "solution_space_dim": rep.solution_space_dim, "contradiction": rep.contradiction,
           "witnesses": ({X: encode_hom(phi) for X, phi in rep.witnesses.items()}
                         if rep.witnesses else None)}, args.out)
    return EXIT_OK if rep.verdict in (FOUND, NONE_CERTIFIED) else EXIT_INCONCLUSIVE


def cmd_decompose(args) -> int:
    u = _load(args.file, _field(args.field), "SMorphism")
    d = decompose_morphism(u)
    pieces = [{"tag": p.tag, "shift": p.shift, "src_slots": list(p.src_slots), "tgt_slots": list(p.tgt_slots)}
              for p in d.pieces]
    counts = sorted([tag, n, c] for (tag, n), c in d.multiset().items())
    _emit({"pieces": pieces, "multiset": counts, "recomposes": d.recompose() == u}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="octacheck", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, field_default=None):
        sp.add_argument("--field", default=field_default, help="q or fp:<prime>")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled searches")
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    v = sub.add_parser("verify-paper", help="run the full verification pipeline")
    common(v, "q")
    v.add_argument("--only", action="append", help="run only the named check (repeatable)")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed times for byte-stable output")
    v.add_argument("--quiet", action="store_true", help="no per-check lines on stderr")
    v.set_defaults(fn=cmd_verify_paper)

    h = sub.add_parser("hom", help="print the basis of Hom(src, dst)")
    h.add_argument("--src", required=True)
    h.add_argument("--dst", required=True)
    h.set_defaults(fn=cmd_hom)

    c = sub.add_parser("compose", help="compose two serialized morphisms (lhs o rhs)")
    common(c)
    c.add_argument("--lhs", required=True)
    c.add_argument("--rhs", required=True)
    c.set_defaults(fn=cmd_compose)

    t = sub.add_parser("check-triangle", help="decide whether a triangle is distinguished")
    common(t)
    t.add_argument("file")
    t.set_defaults(fn=cmd_check_triangle)

    o = sub.add_parser("iso-oct", help="search for an isomorphism of octahedra")
    common(o)
    o.add_argument("first")
    o.add_argument("second")
    o.set_defaults(fn=cmd_iso_oct)

    d = sub.add_parser("decompose", help="split a morphism of S into indecomposables")
    common(d)
    d.add_argument("file")
    d.set_defaults(fn=cmd_decompose)
    return p


def run_command(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"octacheck: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
