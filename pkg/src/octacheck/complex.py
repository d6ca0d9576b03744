"""Bounded complexes of finite-rank free K[x]-modules.

Conventions: a complex is cohomological (``d_k : C^k -> C^{k+1}``); the
shift ``C[1]`` has ``C[1]^k = C^{k+1}`` and differential ``-d``; chain-map
components are not re-signed under shift.  The mapping cone of ``f: S -> T``
has ``cone^k = S^{k+1} (+) T^k`` (source block first) with differential
``[[-d_S, 0], [f, d_T]]``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Mapping

from .errors import DomainError, ValidationError
from .exactalg import Field, Poly, PolyMatrix, smith_with_inverses, solve_affine


class FreeComplex:
    """A bounded complex ``... -> R^{r_k} --d_k--> R^{r_{k+1}} -> ...``."""

    def __init__(self, field: Field, ranks: Mapping[int, int], diffs: Mapping[int, PolyMatrix] | None = None,
                 check: bool = True):
        self.field = field
        self.ranks = {int(k): int(r) for k, r in ranks.items() if r}
        self.diffs = {}
        for k, d in (diffs or {}).items():
            k = int(k)
            if (d.rows, d.cols) != (self.rank(k + 1), self.rank(k)):
                raise ValidationError(
                    f"d_{k} is {d.rows}x{d.cols}, expected {self.rank(k + 1)}x{self.rank(k)}")
            if not d.is_zero():
                self.diffs[k] = d
        if check:
            for k in self.diffs:
                if k + 1 in self.diffs and not (self.diffs[k + 1] * self.diffs[k]).is_zero():
                    raise ValidationError(f"d_{k + 1} d_{k} != 0")

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def d(self, k: int) -> PolyMatrix:
        if k in self.diffs:
            return self.diffs[k]
        return PolyMatrix.zero(self.field, self.rank(k + 1), self.rank(k))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    def is_zero(self) -> bool:
        return not self.ranks

    def shift(self, s: int = 1) -> "FreeComplex":
        sign = -1 if s % 2 else 1
        return FreeComplex(self.field, {k - s: r for k, r in self.ranks.items()},
                           {k - s: d * sign for k, d in self.diffs.items()}, check=False)

    @classmethod
    def direct_sum(cls, field: Field, parts: list["FreeComplex"]) -> "FreeComplex":
        degs = sorted({k for p in parts for k in p.ranks})
        ranks = {k: sum(p.rank(k) for p in parts) for k in degs}
        diffs = {}
        for k in degs:
            if k + 1 not in ranks:
                continue
            blocks = []
            for i, pi in enumerate(parts):
                row = [pi.d(k) if i == j else PolyMatrix.zero(field, pi.rank(k + 1), pj.rank(k))
                       for j, pj in enumerate(parts)]
                blocks.append(row)
            diffs[k] = _block(field, blocks, [p.rank(k + 1) for p in parts], [p.rank(k) for p in parts])
        return cls(field, ranks, diffs, check=False)

    def __eq__(self, other):
        if not isinstance(other, FreeComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.diffs == other.diffs

    def __repr__(self):
        parts = []
        for k in self.degrees:
            parts.append(f"{k}:R^{self.rank(k)}")
        return f"FreeComplex({', '.join(parts)})"


def _block(field, blocks, heights, widths) -> PolyMatrix:
    rows = []
    for bi, h in enumerate(heights):
        for r in range(h):
            row = []
            for bj, w in enumerate(widths):
                row.extend(blocks[bi][bj].entries[r])
            rows.append(row)
    return PolyMatrix(field, sum(heights), sum(widths), rows)


class ChainMap:
    def __init__(self, source: FreeComplex, target: FreeComplex, comps: Mapping[int, PolyMatrix]):
        self.source = source
        self.target = target
        self.field = source.field
        self.comps = {}
        for k, m in comps.items():
            k = int(k)
            if (m.rows, m.cols) != (target.rank(k), source.rank(k)):
                raise ValidationError(f"component f_{k} has wrong shape {m.rows}x{m.cols}")
            if not m.is_zero():
                self.comps[k] = m

    def comp(self, k: int) -> PolyMatrix:
        if k in self.comps:
            return self.comps[k]
        return PolyMatrix.zero(self.field, self.target.rank(k), self.source.rank(k))

    @classmethod
    def identity(cls, c: FreeComplex) -> "ChainMap":
        return cls(c, c, {k: PolyMatrix.identity(c.field, r) for k, r in c.ranks.items()})

    @classmethod
    def zero(cls, source: FreeComplex, target: FreeComplex) -> "ChainMap":
        return cls(source, target, {})

    def _degrees(self, other=None):
        ks = set(self.source.ranks) | set(self.target.ranks)
        if other is not None:
            ks |= set(other.source.ranks) | set(other.target.ranks)
        return sorted(ks)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise DomainError("chain maps are not composable")
        return ChainMap(other.source, self.target,
                        {k: self.comp(k) * other.comp(k) for k in other.source.ranks})

    def __add__(self, other):
        return ChainMap(self.source, self.target, {k: self.comp(k) + other.comp(k) for k in self._degrees()})

    def __sub__(self, other):
        return ChainMap(self.source, self.target, {k: self.comp(k) - other.comp(k) for k in self._degrees()})

    def __neg__(self):
        return ChainMap(self.source, self.target, {k: -m for k, m in self.comps.items()})

    def is_zero(self) -> bool:
        return not self.comps

    def shift(self, s: int = 1) -> "ChainMap":
        return ChainMap(self.source.shift(s), self.target.shift(s), {k - s: m for k, m in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.comps == other.comps

    def __repr__(self):
        return f"ChainMap({self.source} -> {self.target}, degrees {sorted(self.comps)})"


@dataclass
class Homotopy:
    """Maps ``h_k : C^k -> D^{k-1}``."""

    source: FreeComplex
    target: FreeComplex
    comps: dict[int, PolyMatrix]

    def comp(self, k: int) -> PolyMatrix:
        if k in self.comps:
            return self.comps[k]
        return PolyMatrix.zero(self.source.field, self.target.rank(k - 1), self.source.rank(k))

    def boundary(self) -> ChainMap:
        """The null-homotopic chain map ``d h + h d``."""
        ks = set(self.source.ranks)
        return ChainMap(self.source, self.target, {
            k: self.target.d(k - 1) * self.comp(k) + self.comp(k + 1) * self.source.d(k) for k in ks})


def validate_chain_map(f: ChainMap) -> bool:
    for k in set(f.source.ranks) | set(f.target.ranks) | {k - 1 for k in f.source.ranks}:
        if f.comp(k + 1) * f.source.d(k) != f.target.d(k) * f.comp(k):
            return False
    return True


def make_P(field: Field, n: int, shift: int = 0) -> FreeComplex:
    """``P_n[shift]``: R --(+-x^n)--> R in degrees ``-1-shift, -shift``."""
    if n < 0:
        raise DomainError("P_n needs n >= 0")
    sign = -1 if shift % 2 else 1
    d = PolyMatrix(field, 1, 1, [[Poly.monomial(field, n, sign)]])
    return FreeComplex(field, {-1 - shift: 1, -shift: 1}, {-1 - shift: d})


def cone_of(f: ChainMap) -> tuple[FreeComplex, ChainMap, ChainMap]:
    """Mapping cone of ``f`` with the canonical inclusion of the target and
    projection onto ``source[1]``."""
    if not validate_chain_map(f):
        raise ValidationError("cone_of needs a chain map")
    S, T, F = f.source, f.target, f.field
    degs = sorted({k - 1 for k in S.ranks} | set(T.ranks))
    ranks = {k: S.rank(k + 1) + T.rank(k) for k in degs}
    diffs = {}
    for k in degs:
        if k + 1 not in ranks:
            continue
        top = [-S.d(k + 1), PolyMatrix.zero(F, S.rank(k + 2), T.rank(k))]
        bot = [f.comp(k + 1), T.d(k)]
        diffs[k] = _block(F, [top, bot], [S.rank(k + 2), T.rank(k + 1)], [S.rank(k + 1), T.rank(k)])
    cone = FreeComplex(F, ranks, diffs)
    incl = {}
    proj = {}
    for k in degs:
        s, t = S.rank(k + 1), T.rank(k)
        incl[k] = _block(F, [[PolyMatrix.zero(F, s, t)], [PolyMatrix.identity(F, t)]], [s, t], [t])
        proj[k] = _block(F, [[PolyMatrix.identity(F, s), PolyMatrix.zero(F, s, t)]], [s], [s, t])
    return cone, ChainMap(T, cone, incl), ChainMap(cone, S.shift(1), proj)


def null_homotopy(f: ChainMap, degree_bound: int | None = None) -> Homotopy | None:
    """Find ``h`` with ``f = d h + h d`` and entries of degree <= ``degree_bound``."""
    S, T, F = f.source, f.target, f.field
    maxdeg = max([f.comp(k).max_degree() for k in S.ranks]
                 + [S.d(k).max_degree() for k in S.ranks]
                 + [T.d(k).max_degree() for k in T.ranks] + [0])
    if degree_bound is None:
        degree_bound = max(6, maxdeg + 3)
    nb = degree_bound + 1
    # unknown layout: (k, a, b, e) -> index, h_k[a][b] coefficient of x^e
    index = {}
    for k in sorted(S.ranks):
        for a in range(T.rank(k - 1)):
            for b in range(S.rank(k)):
                for e in range(nb):
                    index[(k, a, b, e)] = len(index)
    eqs = []
    top = degree_bound + maxdeg + 1
    for k in sorted(S.ranks):
        dT = T.d(k - 1)
        dS = S.d(k)
        fk = f.comp(k)
        for a in range(T.rank(k)):
            for b in range(S.rank(k)):
                for e in range(top):
                    row = {}
                    for a2 in range(T.rank(k - 1)):
                        p = dT[a, a2]
                        for e2 in range(nb):
                            c = p.coeff(e - e2) if e >= e2 else F.zero
                            if c:
                                idx = index[(k, a2, b, e2)]
                                row[idx] = row.get(idx, F.zero) + c
                    for b2 in range(S.rank(k + 1)):
                        p = dS[b2, b]
                        for e2 in range(nb):
                            c = p.coeff(e - e2) if e >= e2 else F.zero
                            if c:
                                idx = index[(k + 1, a, b2, e2)]
                                row[idx] = row.get(idx, F.zero) + c
                    rhs = fk[a, b].coeff(e)
                    if row or rhs:
                        eqs.append((row, rhs))
    sol = solve_affine(eqs, len(index), F)
    if not sol.feasible:
        return None
    v = sol.particular
    comps = {}
    for k in S.ranks:
        rows = T.rank(k - 1)
        if not rows:
            continue
        comps[k] = PolyMatrix(F, rows, S.rank(k), [
            [Poly(F, [v[index[(k, a, b, e)]] for e in range(nb)]) for b in range(S.rank(k))]
            for a in range(rows)])
    h = Homotopy(S, T, comps)
    if h.boundary() != f:
        raise AssertionError("homotopy solver produced a non-solution")
    return h


# ----------------------------------------------------------------------------
# normal form


@dataclass(frozen=True, order=True)
class Piece:
    """A summand of a normal form.

    ``kind`` is ``"two_term"`` (P_n[shift], n >= 1), ``"contractible"``
    (P_0[shift]) or ``"free_stalk"`` (R in degree -shift).
    """

    kind: str
    n: int
    shift: int

    def complex(self, field: Field) -> FreeComplex:
        if self.kind == "free_stalk":
            return FreeComplex(field, {-self.shift: 1})
        return make_P(field, self.n, self.shift)

    def __str__(self):
        if self.kind == "two_term":
            return f"P{self.n}[{self.shift}]" if self.shift else f"P{self.n}"
        if self.kind == "contractible":
            return f"P0[{self.shift}]"
        return f"R[{self.shift}]"


_KIND_ORDER = {"two_term": 0, "contractible": 1, "free_stalk": 2}


@dataclass
class NormalForm:
    summands: list[Piece]
    target: FreeComplex
    iso_to: ChainMap
    iso_from: ChainMap
    # indices (into ``summands``) of the two-term pieces, in order
    two_term: list[int] = dc_field(default_factory=list)

    def multiset(self) -> Counter:
        return Counter(self.summands)


def _embed(field, n: int, idx: list[int], block: PolyMatrix) -> PolyMatrix:
    rows = [list(r) for r in PolyMatrix.identity(field, n).entries]
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            rows[i][j] = block[a, b]
    return PolyMatrix(field, n, n, rows)


def normal_form(c: FreeComplex) -> NormalForm:
    """Chain isomorphism from ``c`` onto a direct sum of two-term, contractible
    and free stalk pieces."""
    F = c.field
    degs = c.degrees
    T = {k: PolyMatrix.identity(F, c.rank(k)) for k in degs}
    Ti = {k: PolyMatrix.identity(F, c.rank(k)) for k in degs}
    active = {k: list(range(c.rank(k))) for k in degs}
    # (degree of bottom, bottom index, top index, polynomial)
    pairs = []
    stalks = []
    if degs:
        for k in range(degs[-1] - 1, degs[0] - 1, -1):
            if not c.rank(k):
                continue
            if not c.rank(k + 1):
                continue
            D = T[k + 1] * c.d(k) * Ti[k]
            sub = D.submatrix(active[k + 1], active[k])
            L, diag, R, Li, Ri = smith_with_inverses(sub)
            n1 = c.rank(k + 1)
            T[k + 1] = _embed(F, n1, active[k + 1], L) * T[k + 1]
            Ti[k + 1] = Ti[k + 1] * _embed(F, n1, active[k + 1], Li)
            n0 = c.rank(k)
            T[k] = _embed(F, n0, active[k], Ri) * T[k]
            Ti[k] = Ti[k] * _embed(F, n0, active[k], R)
            r = sum(1 for i in range(min(diag.rows, diag.cols)) if diag[i, i])
            for i in range(r):
                pairs.append((k, active[k][i], active[k + 1][i], diag[i, i]))
            stalks.extend((k + 1, j) for j in active[k + 1][r:])
            active[k + 1] = []
            active[k] = active[k][r:]
        stalks.extend((degs[0], j) for j in active[degs[0]])
        for k in degs[1:]:
            # degrees whose lower neighbour has rank zero were skipped above
            if active[k] and not c.rank(k - 1):
                stalks.extend((k, j) for j in active[k])
                active[k] = []

    pieces = []  # (Piece, {degree: coordinate index})
    for k, bot, top, p in pairs:
        if not p.is_monomial():
            raise DomainError(f"invariant factor {p} is not a monomial; no P_n summand")
        e = p.degree
        s = -(k + 1)
        want = F.one if s % 2 == 0 else -F.one
        lam = want / p.lc
        row = [list(r) for r in T[k + 1].entries]
        row[top] = [a * lam for a in row[top]]
        T[k + 1] = PolyMatrix(F, len(row), c.rank(k + 1), row)
        inv = F.one / lam
        cols = [list(r) for r in Ti[k + 1].entries]
        for r_ in cols:
            r_[top] = r_[top] * inv
        Ti[k + 1] = PolyMatrix(F, c.rank(k + 1), len(cols[0]) if cols else 0, cols)
        kind = "two_term" if e > 0 else "contractible"
        pieces.append((Piece(kind, e, s), {k: bot, k + 1: top}))
    for k, j in stalks:
        pieces.append((Piece("free_stalk", 0, -k), {k: j}))

    pieces.sort(key=lambda pc: (_KIND_ORDER[pc[0].kind], -pc[0].shift, pc[0].n))
    summands = [pc[0] for pc in pieces]
    target = FreeComplex.direct_sum(F, [pc.complex(F) for pc in summands])

    to_comps, from_comps = {}, {}
    for k in degs:
        order = [coords[k] for _, coords in pieces if k in coords]
        rows_t = [T[k].entries[i] for i in order]
        to_comps[k] = PolyMatrix(F, len(order), c.rank(k), rows_t)
        from_comps[k] = Ti[k].submatrix(list(range(c.rank(k))), order)
    iso_to = ChainMap(c, target, to_comps)
    iso_from = ChainMap(target, c, from_comps)
    if not (validate_chain_map(iso_to) and validate_chain_map(iso_from)):
        raise AssertionError("normal form change of basis is not a chain map")
    if iso_to @ iso_from != ChainMap.identity(target) or iso_from @ iso_to != ChainMap.identity(c):
        raise AssertionError("normal form change of basis is not an isomorphism")
    two = [i for i, p in enumerate(summands) if p.kind == "two_term"]
    return NormalForm(summands, target, iso_to, iso_from, two)
