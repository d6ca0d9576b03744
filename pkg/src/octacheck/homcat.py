"""The presented homotopy category on finite direct sums of shifted P_n.

A morphism between summands ``P_m[s] -> P_n[t]`` is a combination of basis
morphisms: ``x^i`` when ``t == s`` (``max(0, n-m) <= i < n``) and ``y^i`` when
``t == s + 1`` (``max(0, m-n) < i <= m``).  All other Hom spaces vanish.
Composition uses the closed-form structure constants; :func:`realize` and
:func:`presentify` pass to and from explicit chain maps so the constants can
be checked against chain-level composition.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .complex import ChainMap, FreeComplex, make_P, validate_chain_map
from .errors import DomainError, ValidationError
from .exactalg import Field, Poly, PolyMatrix, mat_inverse, solve_affine


@dataclass(frozen=True)
class PObject:
    """Ordered direct sum of ``P_n[shift]``; the empty sum is the zero object."""

    summands: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        s = tuple((int(n), int(sh)) for n, sh in self.summands)
        for n, _ in s:
            if n < 1:
                raise DomainError("P-summands need n >= 1")
        object.__setattr__(self, "summands", s)

    @classmethod
    def of(cls, *summands) -> "PObject":
        """``PObject.of((1, 1), (1, 0))`` or ``PObject.of(3)`` for P_3."""
        out = []
        for s in summands:
            out.append((s, 0) if isinstance(s, int) else tuple(s))
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> "PObject":
        """Parse ``"P3"``, ``"P2[1]"``, ``"P1[1] + P1"`` or ``"0"``."""
        t = text.replace(" ", "")
        if t in ("", "0"):
            return cls(())
        out = []
        for part in t.split("+"):
            m = re.fullmatch(r"(?:S(\d*))?P(\d+)(?:\[(-?\d+)\])?", part)
            if not m:
                raise DomainError(f"cannot parse object {text!r}")
            shift = int(m.group(3)) if m.group(3) else 0
            if m.group(1) is not None:
                shift += int(m.group(1)) if m.group(1) else 1
            out.append((int(m.group(2)), shift))
        return cls(tuple(out))

    def shift(self, k: int = 1) -> "PObject":
        return PObject(tuple((n, s + k) for n, s in self.summands))

    def __add__(self, other: "PObject") -> "PObject":
        return PObject(self.summands + other.summands)

    def __len__(self):
        return len(self.summands)

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join(f"P{n}[{s}]" if s else f"P{n}" for n, s in self.summands)


@dataclass(frozen=True, order=True)
class BasisMor:
    kind: str  # "x" or "y"
    i: int
    src: tuple[int, int]
    tgt: tuple[int, int]

    def __post_init__(self):
        (m, s), (n, t) = self.src, self.tgt
        if self.kind == "x":
            ok = t == s and max(0, n - m) <= self.i < n
        elif self.kind == "y":
            ok = t == s + 1 and max(0, m - n) < self.i <= m
        else:
            ok = False
        if not ok:
            raise DomainError(f"invalid basis morphism {self.kind}^{self.i}: {self.src} -> {self.tgt}")

    @property
    def name(self) -> str:
        return f"{self.kind}{self.i}"

    def __str__(self):
        (m, s), (n, _) = self.src, self.tgt
        tag = f"{self.kind}^{self.i}_{{{m},{n}}}"
        return f"S^{s}({tag})" if s else tag


def hom_basis(src: tuple[int, int], tgt: tuple[int, int]) -> list[BasisMor]:
    """Basis of Hom(P_m[s], P_n[t]); X before Y, ascending exponent."""
    (m, s), (n, t) = src, tgt
    if m < 1 or n < 1:
        raise DomainError("hom_basis needs m, n >= 1")
    if t == s:
        return [BasisMor("x", i, src, tgt) for i in range(max(0, n - m), n)]
    if t == s + 1:
        return [BasisMor("y", i, src, tgt) for i in range(max(0, m - n) + 1, m + 1)]
    return []


def _compose_basis(g: BasisMor, f: BasisMor) -> tuple[str, int] | None:
    """Structure constant for ``g o f`` as (kind, exponent) or ``None`` for zero."""
    l = f.src[0]
    n = g.tgt[0]
    if f.kind == "x" and g.kind == "x":
        k = f.i + g.i
        return ("x", k) if k < n else None
    if f.kind == "x" and g.kind == "y":
        k = g.i - f.i
        return ("y", k) if k > max(0, l - n) else None
    if f.kind == "y" and g.kind == "x":
        k = f.i - g.i
        return ("y", k) if k > max(0, l - n) else None
    return None


class HomMatrix:
    """Morphism ``src -> tgt``; ``entries[(row, col)]`` maps ``(kind, i)`` to a
    nonzero coefficient, row indexing target summands and col source summands."""

    __slots__ = ("field", "src", "tgt", "entries")

    def __init__(self, field: Field, src: PObject, tgt: PObject,
                 entries: Mapping[tuple[int, int], Mapping[tuple[str, int], object]] | None = None):
        self.field = field
        self.src = src
        self.tgt = tgt
        clean = {}
        for (j, i), terms in (entries or {}).items():
            if not (0 <= j < len(tgt) and 0 <= i < len(src)):
                raise DomainError(f"entry ({j}, {i}) outside {len(tgt)}x{len(src)}")
            t = {}
            for (kind, e), c in terms.items():
                c = field(c)
                if not c:
                    continue
                BasisMor(kind, e, src.summands[i], tgt.summands[j])
                t[(kind, e)] = t.get((kind, e), field.zero) + c
            t = {k: v for k, v in t.items() if v}
            if t:
                clean[(j, i)] = t
        self.entries = clean

    @classmethod
    def zero(cls, field, src, tgt):
        return cls(field, src, tgt)

    @classmethod
    def identity(cls, field, obj: PObject) -> "HomMatrix":
        return cls(field, obj, obj, {(i, i): {("x", 0): 1} for i in range(len(obj))})

    @classmethod
    def basis(cls, field, kind: str, i: int, m: int, n: int, shift: int = 0, coeff=1) -> "HomMatrix":
        """Single basis morphism ``x^i_{m,n}`` or ``y^i_{m,n}`` on ``P_m[shift]``."""
        src = PObject(((m, shift),))
        tgt = PObject(((n, shift + (1 if kind == "y" else 0)),))
        return cls(field, src, tgt, {(0, 0): {(kind, i): coeff}})

    @classmethod
    def from_grid(cls, field, src: PObject, tgt: PObject, grid: Sequence[Sequence]) -> "HomMatrix":
        """Build from a row-major grid whose cells are HomMatrix 1x1 morphisms,
        term dicts, or 0."""
        entries = {}
        for j, row in enumerate(grid):
            for i, cell in enumerate(row):
                if isinstance(cell, HomMatrix):
                    cell = cell.entries.get((0, 0), {})
                if cell in (0, None):
                    continue
                entries[(j, i)] = cell
        return cls(field, src, tgt, entries)

    def entry(self, j: int, i: int) -> dict:
        return dict(self.entries.get((j, i), {}))

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, HomMatrix):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.entries == other.entries

    def __hash__(self):
        return hash((self.src, self.tgt, tuple(sorted((k, tuple(sorted(v.items(), key=str)))
                                                      for k, v in self.entries.items()))))

    def _check_same(self, other):
        if self.src != other.src or self.tgt != other.tgt:
            raise DomainError("morphisms have different source/target")

    def __add__(self, other: "HomMatrix") -> "HomMatrix":
        self._check_same(other)
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, terms in other.entries.items():
            cell = out.setdefault(k, {})
            for b, c in terms.items():
                cell[b] = cell.get(b, self.field.zero) + c
        return HomMatrix(self.field, self.src, self.tgt, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HomMatrix":
        c = self.field(c)
        return HomMatrix(self.field, self.src, self.tgt,
                         {k: {b: c * v for b, v in t.items()} for k, t in self.entries.items()})

    __rmul__ = scale

    def shift(self, k: int = 1) -> "HomMatrix":
        return HomMatrix(self.field, self.src.shift(k), self.tgt.shift(k), self.entries)

    def __matmul__(self, other: "HomMatrix") -> "HomMatrix":
        return compose(self, other)

    @staticmethod
    def vstack(field, parts: Sequence["HomMatrix"]) -> "HomMatrix":
        """``(a; b; ...)`` : X -> Y1 + Y2 + ..."""
        src = parts[0].src
        tgt = PObject(())
        entries = {}
        for p in parts:
            if p.src != src:
                raise DomainError("vstack needs a common source")
            off = len(tgt)
            for (j, i), t in p.entries.items():
                entries[(j + off, i)] = t
            tgt = tgt + p.tgt
        return HomMatrix(field, src, tgt, entries)

    @staticmethod
    def hstack(field, parts: Sequence["HomMatrix"]) -> "HomMatrix":
        """``(a, b, ...)`` : X1 + X2 + ... -> Y"""
        tgt = parts[0].tgt
        src = PObject(())
        entries = {}
        for p in parts:
            if p.tgt != tgt:
                raise DomainError("hstack needs a common target")
            off = len(src)
            for (j, i), t in p.entries.items():
                entries[(j, i + off)] = t
            src = src + p.src
        return HomMatrix(field, src, tgt, entries)

    @staticmethod
    def block_diag(field, parts: Sequence["HomMatrix"]) -> "HomMatrix":
        src, tgt = PObject(()), PObject(())
        entries = {}
        for p in parts:
            so, to = len(src), len(tgt)
            for (j, i), t in p.entries.items():
                entries[(j + to, i + so)] = t
            src, tgt = src + p.src, tgt + p.tgt
        return HomMatrix(field, src, tgt, entries)

    # coefficient vectors relative to :func:`hom_space_basis`
    def to_vector(self) -> list:
        return [self.entries.get((j, i), {}).get((b.kind, b.i), self.field.zero)
                for j, i, b in hom_space_basis(self.src, self.tgt)]

    @classmethod
    def from_vector(cls, field, src, tgt, vec: Sequence) -> "HomMatrix":
        entries = {}
        for (j, i, b), c in zip(hom_space_basis(src, tgt), vec):
            if c:
                entries.setdefault((j, i), {})[(b.kind, b.i)] = c
        return cls(field, src, tgt, entries)

    def __repr__(self):
        return f"HomMatrix({self.src} -> {self.tgt}: {self.pretty()})"

    def pretty(self) -> str:
        rows = []
        for j in range(len(self.tgt)):
            cells = []
            for i in range(len(self.src)):
                t = self.entries.get((j, i))
                if not t:
                    cells.append("0")
                    continue
                cells.append(" + ".join(
                    (f"{c}*" if c != 1 else "") + f"{k}{e}" for (k, e), c in sorted(t.items())))
            rows.append(", ".join(cells))
        return "(" + "; ".join(rows) + ")"


@lru_cache(maxsize=None)
def hom_space_basis(src: PObject, tgt: PObject) -> tuple[tuple[int, int, BasisMor], ...]:
    """Ordered basis of Hom(src, tgt): row-major over (target row, source col)."""
    out = []
    for j, t in enumerate(tgt.summands):
        for i, s in enumerate(src.summands):
            for b in hom_basis(s, t):
                out.append((j, i, b))
    return tuple(out)


def compose(g: HomMatrix, f: HomMatrix) -> HomMatrix:
    """``g o f`` by structure constants."""
    if f.tgt != g.src:
        raise DomainError(f"cannot compose: {f.tgt} != {g.src}")
    F = f.field
    out: dict = {}
    by_row: dict[int, list] = {}
    for (j, i), t in f.entries.items():
        by_row.setdefault(j, []).append((i, t))
    for (k, j), gt in g.entries.items():
        for i, ft in by_row.get(j, ()):
            src_s, mid_s, tgt_s = f.src.summands[i], f.tgt.summands[j], g.tgt.summands[k]
            for (fk, fe), fc in ft.items():
                fb = BasisMor(fk, fe, src_s, mid_s)
                for (gk, ge), gc in gt.items():
                    gb = BasisMor(gk, ge, mid_s, tgt_s)
                    r = _compose_basis(gb, fb)
                    if r is None:
                        continue
                    cell = out.setdefault((k, i), {})
                    cell[r] = cell.get(r, F.zero) + gc * fc
    return HomMatrix(F, f.src, g.tgt, out)


# ----------------------------------------------------------------------------
# chain-level realization


def realize_object(field: Field, obj: PObject) -> FreeComplex:
    return FreeComplex.direct_sum(field, [make_P(field, n, s) for n, s in obj.summands])


def _positions(obj: PObject) -> dict[int, dict[int, int]]:
    """degree -> {summand index: coordinate in that degree}"""
    pos: dict[int, dict[int, int]] = {}
    for idx, (n, s) in enumerate(obj.summands):
        for k in (-1 - s, -s):
            d = pos.setdefault(k, {})
            d[idx] = len(d)
    return pos


def realize(u: HomMatrix) -> ChainMap:
    """A chain map representing ``u`` (the diagrams defining x^i and y^i)."""
    F = u.field
    S, T = realize_object(F, u.src), realize_object(F, u.tgt)
    ps, pt = _positions(u.src), _positions(u.tgt)
    comps = {k: [[Poly.zero(F)] * S.rank(k) for _ in range(T.rank(k))] for k in S.ranks}
    for (j, i), terms in u.entries.items():
        m, s = u.src.summands[i]
        n, _ = u.tgt.summands[j]
        for (kind, e), c in terms.items():
            if kind == "x":
                # top degree -s: x^e ; bottom degree -1-s: x^{e+m-n}
                for k, power in ((-s, e), (-1 - s, e + m - n)):
                    a, b = pt[k][j], ps[k][i]
                    comps[k][a][b] = comps[k][a][b] + Poly.monomial(F, power, c)
            else:
                k = -1 - s
                a, b = pt[k][j], ps[k][i]
                comps[k][a][b] = comps[k][a][b] + Poly.monomial(F, m - e, c)
    return ChainMap(S, T, {k: PolyMatrix(F, T.rank(k), S.rank(k), rows) for k, rows in comps.items()})


def presentify(f: ChainMap, src: PObject, tgt: PObject) -> HomMatrix:
    """Homotopy class of a chain map between realized P-sums, by divisibility:
    an x-component is the top entry mod x^n, a y-component the bottom entry
    mod x^{min(m, n)}."""
    F = f.field
    if f.source != realize_object(F, src) or f.target != realize_object(F, tgt):
        raise ValidationError("chain map is not between the realizations of the given objects")
    if not validate_chain_map(f):
        raise ValidationError("presentify needs a chain map")
    ps, pt = _positions(src), _positions(tgt)
    entries = {}
    for i, (m, s) in enumerate(src.summands):
        for j, (n, t) in enumerate(tgt.summands):
            terms = {}
            if t == s:
                a0 = f.comp(-s)[pt[-s][j], ps[-s][i]]
                for e in range(max(0, n - m), n):
                    c = a0.coeff(e)
                    if c:
                        terms[("x", e)] = c
            elif t == s + 1:
                b = f.comp(-1 - s)[pt[-1 - s][j], ps[-1 - s][i]]
                for e in range(min(m, n)):
                    c = b.coeff(e)
                    if c:
                        terms[("y", m - e)] = c
            if terms:
                entries[(j, i)] = terms
    return HomMatrix(F, src, tgt, entries)


# ----------------------------------------------------------------------------
# invertibility


def iso_classes(obj: PObject) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for idx, s in enumerate(obj.summands):
        out.setdefault(s, []).append(idx)
    return out


def x0_blocks(u: HomMatrix):
    """Per isomorphism class, the K-matrix of x^0 coefficients between matching
    summands, or ``None`` when the class multisets of src and tgt differ."""
    cs, ct = iso_classes(u.src), iso_classes(u.tgt)
    if {k: len(v) for k, v in cs.items()} != {k: len(v) for k, v in ct.items()}:
        return None
    F = u.field
    blocks = {}
    for cls_, cols in cs.items():
        rows = ct[cls_]
        blocks[cls_] = [[u.entries.get((j, i), {}).get(("x", 0), F.zero) for i in cols] for j in rows]
    return blocks


def linear_map_matrix(field: Field, fn, src_dim: int, basis_vectors=None) -> list[list]:
    """Matrix (columns = images of unit vectors) of a linear map given as a
    function on coefficient vectors."""
    cols = []
    for k in range(src_dim):
        e = [field.one if a == k else field.zero for a in range(src_dim)]
        cols.append(fn(e))
    n_out = len(cols[0]) if cols else len(fn([field.zero] * src_dim))
    return [[cols[k][r] for k in range(src_dim)] for r in range(n_out)]


def solve_right_inverse(u: HomMatrix) -> HomMatrix | None:
    """Some ``v`` with ``v o u == id_src`` via the generic affine solver."""
    F = u.field
    n = len(hom_space_basis(u.tgt, u.src))

    def apply(vec):
        v = HomMatrix.from_vector(F, u.tgt, u.src, vec)
        return compose(v, u).to_vector()

    A = linear_map_matrix(F, apply, n)
    rhs = HomMatrix.identity(F, u.src).to_vector()
    sol = solve_affine([(row, b) for row, b in zip(A, rhs)], n, F)
    if not sol.feasible:
        return None
    return HomMatrix.from_vector(F, u.tgt, u.src, sol.particular)


def is_invertible(u: HomMatrix) -> tuple[bool, HomMatrix | None]:
    """Decide invertibility by the x^0-block criterion; when invertible also
    return the two-sided inverse, verified by composition."""
    blocks = x0_blocks(u)
    if blocks is None:
        return False, None
    F = u.field
    for b in blocks.values():
        if mat_inverse(F, b) is None:
            return False, None
    v = solve_right_inverse(u)
    if v is None or compose(u, v) != HomMatrix.identity(F, u.tgt) \
            or compose(v, u) != HomMatrix.identity(F, u.src):
        raise AssertionError("x^0 criterion said invertible but no inverse verified")
    return True, v


def is_identity(u: HomMatrix) -> bool:
    return u.src == u.tgt and u == HomMatrix.identity(u.field, u.src)


def unit_blocks(src: PObject, tgt: PObject, offset: int = 0) -> list[list[list[int]]] | None:
    """Coordinate indices (into the Hom-space vector, plus ``offset``) of the
    x^0 coefficients forming the per-class blocks tested by :func:`is_invertible`;
    ``None`` when no morphism src -> tgt can be invertible."""
    cs, ct = iso_classes(src), iso_classes(tgt)
    if {k: len(v) for k, v in cs.items()} != {k: len(v) for k, v in ct.items()}:
        return None
    where = {(j, i): a for a, (j, i, b) in enumerate(hom_space_basis(src, tgt))
             if b.kind == "x" and b.i == 0 and src.summands[i] == tgt.summands[j]}
    return [[[where[(j, i)] + offset for i in cols] for j in ct[c]] for c, cols in cs.items()]


def structure_constant_sweep(field: Field, max_rank: int = 6, shifts: Sequence[int] = (0, 1)):
    """Compare ``compose`` with chain-level composition for every pair of
    basis morphisms ``P_l -> P_m[a] -> P_n[a+b]`` with ``l, m, n <= max_rank``
    and ``a, b`` in ``shifts``.  Returns ``(pairs checked, mismatches)``."""
    cache: dict = {}

    def basis_map(b: BasisMor):
        if b not in cache:
            u = HomMatrix(field, PObject((b.src,)), PObject((b.tgt,)), {(0, 0): {(b.kind, b.i): field.one}})
            cache[b] = (u, realize(u))
        return cache[b]

    checked, bad = 0, []
    rng = range(1, max_rank + 1)
    for l, m, n in ((l, m, n) for l in rng for m in rng for n in rng):
        for a in shifts:
            for b in shifts:
                for fb in hom_basis((l, 0), (m, a)):
                    f, rf = basis_map(fb)
                    for gb in hom_basis((m, a), (n, a + b)):
                        g, rg = basis_map(gb)
                        checked += 1
                        if compose(g, f) != presentify(rg @ rf, f.src, g.tgt):
                            bad.append((fb, gb))
    return checked, bad
