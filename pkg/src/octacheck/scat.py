"""Finitely presented K-linear categories given by structure constants.

``build_category("S")`` is the category generated by an octahedron: six
exceptional objects A..F, one-dimensional Hom spaces spanned by the fourteen
arrows, composition fixed by the octahedron relations.  ``"E"`` is the quiver
A -> B -> C with its composite, ``"Eprime"`` the fragment of three line
bundles on the projective plane with linear-form arrows.

Morphisms between direct sums are :class:`SMorphism` values: ordered source
and target slot lists of ``(object, shift)`` and coefficients keyed by
``(target slot, source slot, basis name)``, where the basis name is ``"id"``
or an arrow name.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import BuildError, DomainError, PreconditionError
from .exactalg import Field, complete_basis, mat_inverse, nullspace, rank, rref, solve_affine
from .search import DEFAULT_CAP, find_invertible

ID = "id"


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str
    shift: int = 0


class PresCategory:
    """Objects, arrows (a basis of all non-identity Homs) and the composition
    table ``comp[(g, f)] = {arrow: coefficient}``; absent pairs compose to 0."""

    def __init__(self, name: str, objects: Sequence[str], arrows: Sequence[Arrow],
                 comp: Mapping[tuple[str, str], Mapping[str, int]]):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = {a.name: a for a in arrows}
        self.comp = {k: dict(v) for k, v in comp.items()}
        self._validate()

    # basis bookkeeping -------------------------------------------------------
    def ends(self, name: str, X: str | None = None):
        """(source, target, shift) of a basis element; identities need ``X``."""
        if name == ID:
            return X, X, 0
        a = self.arrows[name]
        return a.src, a.tgt, a.shift

    def hom_basis(self, X: str, Y: str, n: int = 0) -> list[str]:
        """Basis names of Hom(X, Y[n])."""
        out = [ID] if (X == Y and n == 0) else []
        out.extend(a.name for a in self.arrows.values() if (a.src, a.tgt, a.shift) == (X, Y, n))
        return out

    def hom_dim(self, X: str, Y: str, n: int = 0) -> int:
        return len(self.hom_basis(X, Y, n))

    def compose_basis(self, g: str, f: str) -> dict[str, int]:
        """``g o f`` for basis elements (g applied after the appropriate shift)."""
        if f == ID:
            return {g: 1}
        if g == ID:
            return {f: 1}
        return dict(self.comp.get((g, f), {}))

    def composable(self, g: str, f: str) -> bool:
        return self.arrows[f].tgt == self.arrows[g].src

    def _validate(self):
        for a in self.arrows.values():
            if a.src not in self.objects or a.tgt not in self.objects or a.name == ID:
                raise BuildError(f"bad arrow {a}")
        for (g, f), terms in self.comp.items():
            if g not in self.arrows or f not in self.arrows or not self.composable(g, f):
                raise BuildError(f"composition entry {g} o {f} is not composable")
            src, tgt = self.arrows[f].src, self.arrows[g].tgt
            sh = self.arrows[f].shift + self.arrows[g].shift
            for r in terms:
                if self.ends(r, src) != (src, tgt, sh):
                    raise BuildError(f"{g} o {f} = {r} has the wrong type")
        bad = self.associativity_failures()
        if bad:
            raise BuildError(f"associativity fails for {bad[0]}")

    def _lin(self, g_terms: Mapping[str, int], f_terms: Mapping[str, int]) -> dict[str, int]:
        out: dict[str, int] = {}
        for g, a in g_terms.items():
            for f, b in f_terms.items():
                for r, c in self.compose_basis(g, f).items():
                    out[r] = out.get(r, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def associativity_failures(self) -> list[tuple[str, str, str]]:
        names = list(self.arrows)
        bad = []
        for x, y, z in itertools.product(names, repeat=3):
            if not (self.composable(y, x) and self.composable(z, y)):
                continue
            left = self._lin(self.compose_basis(z, y), {x: 1})
            right = self._lin({z: 1}, self.compose_basis(y, x))
            if left != right:
                bad.append((z, y, x))
        return bad

    def composable_pairs(self) -> list[tuple[str, str]]:
        return [(g, f) for g in self.arrows for f in self.arrows if self.composable(g, f)]


# ----------------------------------------------------------------------------
# built-in categories

S_OBJECTS = ("A", "B", "C", "D", "E", "F")
S_ARROWS = (
    Arrow("f", "A", "B"), Arrow("fp", "B", "D"), Arrow("fpp", "D", "A", 1),
    Arrow("g", "B", "C"), Arrow("gp", "C", "F"), Arrow("gpp", "F", "B", 1),
    Arrow("h", "A", "C"), Arrow("hp", "C", "E"), Arrow("hpp", "E", "A", 1),
    Arrow("k", "D", "E"), Arrow("kp", "E", "F"), Arrow("kpp", "F", "D", 1),
    Arrow("l", "B", "E"), Arrow("lp", "E", "B", 1),
)
# nonzero composites; every other composable pair composes to zero
S_RELATIONS = {
    ("g", "f"): {"h": 1},
    ("hp", "g"): {"l": 1},
    ("k", "fp"): {"l": 1},
    ("hpp", "k"): {"fpp": 1},
    ("kp", "hp"): {"gp": 1},
    ("fp", "gpp"): {"kpp": 1},
    ("f", "hpp"): {"lp": 1},
    ("gpp", "kp"): {"lp": 1},
}
S_ZERO_RELATIONS = (("fp", "f"), ("hpp", "hp"), ("g", "gpp"), ("kp", "k"))


def build_category(which: str) -> PresCategory:
    if which == "S":
        return PresCategory("S", S_OBJECTS, S_ARROWS, S_RELATIONS)
    if which == "E":
        arrows = [Arrow("f", "A", "B"), Arrow("g", "B", "C"), Arrow("h", "A", "C")]
        return PresCategory("E", ("A", "B", "C"), arrows, {("g", "f"): {"h": 1}})
    if which == "Eprime":
        arrows = [Arrow(f"a{i}", "O", "O(1)") for i in range(3)]
        arrows += [Arrow(f"b{i}", "O(1)", "O(2)") for i in range(3)]
        arrows += [Arrow(f"c{i}{j}", "O", "O(2)") for i in range(3) for j in range(i, 3)]
        comp = {(f"b{j}", f"a{i}"): {f"c{min(i, j)}{max(i, j)}": 1} for i in range(3) for j in range(3)}
        return PresCategory("Eprime", ("O", "O(1)", "O(2)"), arrows, comp)
    raise DomainError(f"unknown category {which!r}")


def hom_table(cat: PresCategory, shifts: Iterable[int] = range(-3, 4)) -> dict[tuple[str, str, int], list[str]]:
    """All nonzero Hom(X, Y[n]) between distinct objects, with their bases."""
    out = {}
    for X in cat.objects:
        for Y in cat.objects:
            for n in shifts:
                b = [x for x in cat.hom_basis(X, Y, n) if x != ID]
                if b:
                    out[(X, Y, n)] = b
    return out


# ----------------------------------------------------------------------------
# morphisms between direct sums

Slot = tuple  # (object name, shift)


class SMorphism:
    __slots__ = ("cat", "field", "src", "tgt", "coeffs")

    def __init__(self, cat: PresCategory, field: Field, src: Sequence[Slot], tgt: Sequence[Slot],
                 coeffs: Mapping[tuple[int, int, str], object] | None = None):
        self.cat = cat
        self.field = field
        self.src = tuple((str(X), int(n)) for X, n in src)
        self.tgt = tuple((str(X), int(n)) for X, n in tgt)
        clean = {}
        for (j, i, name), c in (coeffs or {}).items():
            c = field(c)
            if not c:
                continue
            if not (0 <= j < len(self.tgt) and 0 <= i < len(self.src)):
                raise DomainError(f"coefficient ({j}, {i}) out of range")
            (X, n), (Y, m) = self.src[i], self.tgt[j]
            if name not in cat.hom_basis(X, Y, m - n):
                raise DomainError(f"{name} is not a basis morphism {X}[{n}] -> {Y}[{m}]")
            clean[(j, i, name)] = clean.get((j, i, name), field.zero) + c
        self.coeffs = {k: v for k, v in clean.items() if v}

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, cat, field, src, tgt):
        return cls(cat, field, src, tgt)

    @classmethod
    def identity(cls, cat, field, slots):
        return cls(cat, field, slots, slots, {(i, i, ID): 1 for i in range(len(slots))})

    @classmethod
    def arrow(cls, cat, field, name: str, shift: int = 0, coeff=1):
        X, Y, m = cat.ends(name)
        return cls(cat, field, [(X, shift)], [(Y, shift + m)], {(0, 0, name): coeff})

    @classmethod
    def from_blocks(cls, cat, field, src, tgt, blocks: Mapping[tuple, Sequence[Sequence]]):
        """Build from K-matrices: key ``(name, X, n)`` holds the matrix of the
        component ``X[n] (x) V -> Y[n+m] (x) W`` of basis ``name`` (``"id"``
        included), rows indexing target slots of type ``(Y, n+m)`` and
        columns source slots of type ``(X, n)`` in slot order."""
        coeffs = {}
        for (name, X, n), M in blocks.items():
            _, Y, m = cat.ends(name, X)
            cols = [i for i, s in enumerate(src) if tuple(s) == (X, n)]
            rows = [j for j, s in enumerate(tgt) if tuple(s) == (Y, n + m)]
            for a, j in enumerate(rows):
                for b, i in enumerate(cols):
                    if M[a][b]:
                        coeffs[(j, i, name)] = M[a][b]
        return cls(cat, field, src, tgt, coeffs)

    def blocks(self) -> dict[tuple, list[list]]:
        """Inverse of :meth:`from_blocks`; only nonzero blocks are returned."""
        out = {}
        keys = {(name, *self.src[i]) for (j, i, name) in self.coeffs}
        for name, X, n in keys:
            _, Y, m = self.cat.ends(name, X)
            cols = [i for i, s in enumerate(self.src) if s == (X, n)]
            rows = [j for j, s in enumerate(self.tgt) if s == (Y, n + m)]
            out[(name, X, n)] = [[self.coeffs.get((j, i, name), self.field.zero) for i in cols]
                                 for j in rows]
        return out

    # algebra -----------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SMorphism):
            return NotImplemented
        return (self.cat is other.cat and self.src == other.src and self.tgt == other.tgt
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.src, self.tgt, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same(self, other):
        if self.src != other.src or self.tgt != other.tgt:
            raise DomainError("morphisms have different source/target")

    def __add__(self, other: "SMorphism") -> "SMorphism":
        self._same(other)
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, self.field.zero) + v
        return SMorphism(self.cat, self.field, self.src, self.tgt, c)

    def scale(self, s) -> "SMorphism":
        s = self.field(s)
        return SMorphism(self.cat, self.field, self.src, self.tgt,
                         {k: s * v for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "SMorphism") -> "SMorphism":
        return cat_compose(self.cat, self, other)

    def shift(self, k: int = 1) -> "SMorphism":
        return SMorphism(self.cat, self.field, [(X, n + k) for X, n in self.src],
                         [(X, n + k) for X, n in self.tgt], self.coeffs)

    def restrict(self, rows: Sequence[int], cols: Sequence[int]) -> "SMorphism":
        ri = {j: a for a, j in enumerate(rows)}
        ci = {i: b for b, i in enumerate(cols)}
        c = {(ri[j], ci[i], name): v for (j, i, name), v in self.coeffs.items() if j in ri and i in ci}
        return SMorphism(self.cat, self.field, [self.src[i] for i in cols], [self.tgt[j] for j in rows], c)

    def embed(self, src, tgt, rows: Sequence[int], cols: Sequence[int]) -> "SMorphism":
        """Place this morphism as the (rows, cols) block of a morphism src -> tgt."""
        c = {(rows[j], cols[i], name): v for (j, i, name), v in self.coeffs.items()}
        return SMorphism(self.cat, self.field, src, tgt, c)

    def permuted(self, src_perm: Sequence[int], tgt_perm: Sequence[int]) -> "SMorphism":
        """Reorder slots: new source slot ``a`` is old slot ``src_perm[a]``."""
        si = {old: new for new, old in enumerate(src_perm)}
        ti = {old: new for new, old in enumerate(tgt_perm)}
        c = {(ti[j], si[i], name): v for (j, i, name), v in self.coeffs.items()}
        return SMorphism(self.cat, self.field, [self.src[i] for i in src_perm],
                         [self.tgt[j] for j in tgt_perm], c)

    # coefficient vectors -----------------------------------------------------
    def to_vector(self) -> list:
        return [self.coeffs.get(k, self.field.zero) for k in s_hom_basis(self.cat, self.src, self.tgt)]

    @classmethod
    def from_vector(cls, cat, field, src, tgt, vec):
        basis = s_hom_basis(cat, tuple(src), tuple(tgt))
        return cls(cat, field, src, tgt, {k: c for k, c in zip(basis, vec) if c})

    def __repr__(self):
        terms = " + ".join(f"{v}*{name}[{j},{i}]" for (j, i, name), v in sorted(self.coeffs.items()))
        return f"SMorphism({list(self.src)} -> {list(self.tgt)}: {terms or '0'})"


def s_hom_basis(cat: PresCategory, src: Sequence[Slot], tgt: Sequence[Slot]) -> list[tuple[int, int, str]]:
    out = []
    for j, (Y, m) in enumerate(tgt):
        for i, (X, n) in enumerate(src):
            for name in cat.hom_basis(X, Y, m - n):
                out.append((j, i, name))
    return out


def cat_compose(cat: PresCategory, g2: SMorphism, g1: SMorphism) -> SMorphism:
    """``g2 o g1`` by the structure constants."""
    if g1.tgt != g2.src:
        raise DomainError("cannot compose: slot lists differ")
    F = g1.field
    by_mid: dict[int, list] = {}
    for (j, i, a), c in g1.coeffs.items():
        by_mid.setdefault(j, []).append((i, a, c))
    out: dict = {}
    for (k, j, b), d in g2.coeffs.items():
        for i, a, c in by_mid.get(j, ()):
            for r, e in cat.compose_basis(b, a).items():
                key = (k, i, r)
                out[key] = out.get(key, F.zero) + d * c * e
    return SMorphism(cat, F, g1.src, g2.tgt, out)


def _lin_matrix(field, fn, n):
    cols = [fn([field.one if a == k else field.zero for a in range(n)]) for k in range(n)]
    m = len(cols[0]) if cols else len(fn([]))
    return [[cols[k][r] for k in range(n)] for r in range(m)]


def solve_smorphism(cat, field, src, tgt, fn, rhs: list):
    """Affine solution space of ``fn(x) == rhs`` over x in Hom(src, tgt)."""
    n = len(s_hom_basis(cat, src, tgt))
    A = _lin_matrix(field, lambda v: fn(SMorphism.from_vector(cat, field, src, tgt, v)), n)
    return solve_affine(list(zip(A, rhs)), n, field)


def s_unit_blocks(src, tgt, offset: int = 0, cat: PresCategory | None = None):
    """Index blocks of identity coefficients per slot type, or ``None`` if
    the slot multisets differ (no isomorphism possible)."""
    if Counter(src) != Counter(tgt):
        return None
    basis = s_hom_basis(cat, src, tgt)
    where = {(j, i): a for a, (j, i, name) in enumerate(basis) if name == ID}
    out = []
    for typ in dict.fromkeys(src):
        cols = [i for i, s in enumerate(src) if s == typ]
        rows = [j for j, s in enumerate(tgt) if s == typ]
        out.append([[where[(j, i)] + offset for i in cols] for j in rows])
    return out


def s_is_invertible(u: SMorphism) -> tuple[bool, SMorphism | None]:
    """Invertible iff slot types agree and each identity block is invertible;
    the inverse is solved for and checked on both sides."""
    blocks = s_unit_blocks(u.src, u.tgt, cat=u.cat)
    if blocks is None:
        return False, None
    vec = u.to_vector()
    F = u.field
    for b in blocks:
        if mat_inverse(F, [[vec[i] for i in row] for row in b]) is None:
            return False, None
    idv = SMorphism.identity(u.cat, F, u.src).to_vector()
    space = solve_smorphism(u.cat, F, u.tgt, u.src, lambda v: (v @ u).to_vector(), idv)
    if not space.feasible:
        raise AssertionError("identity blocks invertible but no left inverse")
    v = SMorphism.from_vector(u.cat, F, u.tgt, u.src, space.particular)
    if v @ u != SMorphism.identity(u.cat, F, u.src) or u @ v != SMorphism.identity(u.cat, F, u.tgt):
        raise AssertionError("inverse failed verification")
    return True, v


def category_relations(cat: PresCategory, field: Field) -> dict[str, bool]:
    """The defining relations of S, evaluated by structure-constant composition."""
    def a(name, shift=0):
        return SMorphism.arrow(cat, field, name, shift)

    return {
        "h = g o f": a("g") @ a("f") == a("h"),
        "l = h' o g": a("hp") @ a("g") == a("l"),
        "l = k o f'": a("k") @ a("fp") == a("l"),
        "f'' = h'' o k": a("hpp") @ a("k") == a("fpp"),
        "g' = k' o h'": a("kp") @ a("hp") == a("gp"),
        "k'' = S f' o g''": a("fp", 1) @ a("gpp") == a("kpp"),
        "l' = S f o h''": a("f", 1) @ a("hpp") == a("lp"),
        "l' = g'' o k'": a("gpp") @ a("kp") == a("lp"),
        "f' o f = 0": (a("fp") @ a("f")).is_zero(),
        "h'' o h' = 0": (a("hpp") @ a("hp")).is_zero(),
        "S g o g'' = 0": (a("g", 1) @ a("gpp")).is_zero(),
        "k' o k = 0": (a("kp") @ a("k")).is_zero(),
    }


# ----------------------------------------------------------------------------
# Krull-Schmidt decomposition of morphisms in S

PAIR_PIECES = {
    # tag: (source types, target types, [(target idx, source idx, arrow, coeff)])
    "(g;f')": ((("B", 0),), (("C", 0), ("D", 0)), [(0, 0, "g", 1), (1, 0, "fp", 1)]),
    "(k';-h'')": ((("E", 0),), (("F", 0), ("A", 1)), [(0, 0, "kp", 1), (1, 0, "hpp", -1)]),
    "(h',-k)": ((("C", 0), ("D", 0)), (("E", 0),), [(0, 0, "hp", 1), (0, 1, "k", -1)]),
    "(g'',Sf)": ((("F", 0), ("A", 1)), (("B", 1),), [(0, 0, "gpp", 1), (0, 1, "f", 1)]),
}


@dataclass(frozen=True)
class DecompPiece:
    """An indecomposable summand ``tag`` shifted by ``shift``, occupying the
    given slots of the (re-based) source and target."""

    tag: str
    shift: int
    src_slots: tuple[int, ...]
    tgt_slots: tuple[int, ...]

    @property
    def key(self) -> tuple[str, int]:
        return (self.tag, self.shift)


def canonical_piece(cat: PresCategory, field: Field, tag: str, shift: int = 0) -> SMorphism:
    """The normal form of an indecomposable morphism, shifted by ``shift``."""
    if tag.startswith("id:"):
        X = tag[3:]
        return SMorphism.identity(cat, field, [(X, shift)])
    if tag.endswith("->0"):
        return SMorphism.zero(cat, field, [(tag[:-3], shift)], [])
    if tag.startswith("0->"):
        return SMorphism.zero(cat, field, [], [(tag[3:], shift)])
    if tag in PAIR_PIECES:
        s, t, cs = PAIR_PIECES[tag]
        u = SMorphism(cat, field, s, t, {(j, i, a): c for j, i, a, c in cs})
        return u.shift(shift)
    return SMorphism.arrow(cat, field, tag, shift)


@dataclass
class Decomposition:
    u: SMorphism
    pieces: list[DecompPiece]
    P: SMorphism  # source change of basis
    Pinv: SMorphism
    Q: SMorphism  # target change of basis
    Qinv: SMorphism
    D: SMorphism  # Q o u o P^-1, block diagonal in the pieces

    def multiset(self) -> Counter:
        return Counter(p.key for p in self.pieces)

    def recompose(self) -> SMorphism:
        return self.Qinv @ self.D @ self.P


@dataclass
class DeccritResult:
    sigma: SMorphism
    sigma_inv: SMorphism
    tau: SMorphism
    tau_inv: SMorphism
    conjugated: SMorphism  # tau o u o sigma^-1 = alpha (+) delta~


def deccrit_split(cat: PresCategory, u: SMorphism, V: Sequence[int], W: Sequence[int],
                  V_rest: Sequence[int] | None = None, W_rest: Sequence[int] | None = None,
                  beta_t: SMorphism | None = None, gamma_t: SMorphism | None = None) -> DeccritResult:
    """Split off ``alpha = u|_{V -> W}`` when the off-diagonal blocks factor
    through it: ``beta = alpha o beta~`` and ``gamma = gamma~ o alpha``."""
    F = u.field
    V, W = list(V), list(W)
    Vr = [i for i in range(len(u.src)) if i not in V] if V_rest is None else list(V_rest)
    Wr = [j for j in range(len(u.tgt)) if j not in W] if W_rest is None else list(W_rest)
    alpha = u.restrict(W, V)
    beta = u.restrict(W, Vr)
    gamma = u.restrict(Wr, V)
    sv, sw = [u.src[i] for i in V], [u.tgt[j] for j in W]
    svr, swr = [u.src[i] for i in Vr], [u.tgt[j] for j in Wr]
    if beta_t is None:
        sp = solve_smorphism(cat, F, svr, sv, lambda x: (alpha @ x).to_vector(), beta.to_vector())
        if not sp.feasible:
            raise PreconditionError("beta does not factor through alpha")
        beta_t = SMorphism.from_vector(cat, F, svr, sv, sp.particular)
    if gamma_t is None:
        sp = solve_smorphism(cat, F, sw, swr, lambda x: (x @ alpha).to_vector(), gamma.to_vector())
        if not sp.feasible:
            raise PreconditionError("gamma does not factor through alpha")
        gamma_t = SMorphism.from_vector(cat, F, sw, swr, sp.particular)
    if alpha @ beta_t != beta or gamma_t @ alpha != gamma:
        raise PreconditionError("supplied factorizations do not hold")
    idS = SMorphism.identity(cat, F, u.src)
    idT = SMorphism.identity(cat, F, u.tgt)
    b = beta_t.embed(u.src, u.src, V, Vr)
    c = gamma_t.embed(u.tgt, u.tgt, Wr, W)
    sigma, sigma_inv = idS + b, idS - b
    tau, tau_inv = idT - c, idT + c
    conj = tau @ u @ sigma_inv
    if not conj.restrict(W, Vr).is_zero() or not conj.restrict(Wr, V).is_zero():
        raise AssertionError("deccrit conjugation left off-diagonal terms")
    return DeccritResult(sigma, sigma_inv, tau, tau_inv, conj)


def _basis_matrix(field, first: Sequence[Sequence], d: int):
    """Invertible G (new coords = G old coords) whose new basis starts with
    the given old-coordinate vectors."""
    cols = complete_basis(field, [list(v) for v in first], d)
    M = [[cols[c][r] for c in range(d)] for r in range(d)]
    G = mat_inverse(field, M)
    assert G is not None
    return G


class _Decomposer:
    def __init__(self, cat: PresCategory, u: SMorphism):
        self.cat, self.F = cat, u.field
        self.u0 = self.u = u
        self.P = self.Pinv = SMorphism.identity(cat, u.field, u.src)
        self.Q = self.Qinv = SMorphism.identity(cat, u.field, u.tgt)
        self.act_s = list(range(len(u.src)))
        self.act_t = list(range(len(u.tgt)))
        self.pieces: list[DecompPiece] = []

    # slot helpers
    def s_slots(self, typ):
        return [i for i in self.act_s if self.u.src[i] == typ]

    def t_slots(self, typ):
        return [j for j in self.act_t if self.u.tgt[j] == typ]

    def mat(self, name, rows, cols):
        c = self.u.coeffs
        return [[c.get((j, i, name), self.F.zero) for i in cols] for j in rows]

    def change_src(self, slots, G):
        if not slots:
            return
        cat, F, src = self.cat, self.F, self.u.src
        Gi = mat_inverse(F, G)
        g = SMorphism.identity(cat, F, src)
        gi = SMorphism.identity(cat, F, src)
        blk = {(slots[a], slots[b], ID): G[a][b] for a in range(len(slots)) for b in range(len(slots))}
        blki = {(slots[a], slots[b], ID): Gi[a][b] for a in range(len(slots)) for b in range(len(slots))}
        keep = {k: v for k, v in g.coeffs.items() if k[1] not in slots}
        g = SMorphism(cat, F, src, src, {**keep, **blk})
        gi = SMorphism(cat, F, src, src, {**keep, **blki})
        self.u = self.u @ gi
        self.P = g @ self.P
        self.Pinv = self.Pinv @ gi

    def change_tgt(self, slots, H):
        if not slots:
            return
        cat, F, tgt = self.cat, self.F, self.u.tgt
        Hi = mat_inverse(F, H)
        base = {k: v for k, v in SMorphism.identity(cat, F, tgt).coeffs.items() if k[1] not in slots}
        h = SMorphism(cat, F, tgt, tgt, {**base, **{(slots[a], slots[b], ID): H[a][b]
                                                    for a in range(len(slots)) for b in range(len(slots))}})
        hi = SMorphism(cat, F, tgt, tgt, {**base, **{(slots[a], slots[b], ID): Hi[a][b]
                                                     for a in range(len(slots)) for b in range(len(slots))}})
        self.u = h @ self.u
        self.Q = h @ self.Q
        self.Qinv = self.Qinv @ hi

    def rebase_src(self, slots, first):
        if slots:
            self.change_src(slots, _basis_matrix(self.F, first, len(slots)))

    def rebase_tgt(self, slots, first):
        if slots:
            self.change_tgt(slots, _basis_matrix(self.F, first, len(slots)))

    def split(self, tag, shift, V, W):
        Vr = [i for i in self.act_s if i not in V]
        Wr = [j for j in self.act_t if j not in W]
        res = deccrit_split(self.cat, self.u, V, W, Vr, Wr)
        self.u = res.conjugated
        self.P = res.sigma @ self.P
        self.Pinv = self.Pinv @ res.sigma_inv
        self.Q = res.tau @ self.Q
        self.Qinv = self.Qinv @ res.tau_inv
        self.act_s = Vr
        self.act_t = Wr
        self.pieces.append(DecompPiece(tag, shift, tuple(V), tuple(W)))

    def types_src(self, X):
        return sorted({self.u.src[i][1] for i in self.act_s if self.u.src[i][0] == X})

    def types_tgt(self, Y):
        return sorted({self.u.tgt[j][1] for j in self.act_t if self.u.tgt[j][0] == Y})

    # steps
    def step_identity(self) -> bool:
        F = self.F
        for X in self.cat.objects:
            for n in self.types_src(X):
                cols, rows = self.s_slots((X, n)), self.t_slots((X, n))
                M = self.mat(ID, rows, cols)
                v = _nonzero_column(F, M)
                if v is None:
                    continue
                w = _apply(F, M, v)
                self.rebase_src(cols, [v])
                self.rebase_tgt(rows, [w])
                self.split(f"id:{X}", n, [cols[0]], [rows[0]])
                return True
        return False

    def step_kernel(self, X, a1, a2, pair, sign2) -> bool:
        """Kernel comparison of two arrows leaving X."""
        F, cat = self.F, self.cat
        (_, Y1, m1), (_, Y2, m2) = cat.ends(a1), cat.ends(a2)
        for n in self.types_src(X):
            cols = self.s_slots((X, n))
            r1, r2 = self.t_slots((Y1, n + m1)), self.t_slots((Y2, n + m2))
            M1, M2 = self.mat(a1, r1, cols), self.mat(a2, r2, cols)
            d = len(cols)
            K1, K2 = nullspace(F, M1, d), nullspace(F, M2, d)
            for (Ma, ra, arrow, Kother, ya, ma), (Mb, rb) in (
                    ((M1, r1, a1, K2, Y1, m1), (M2, r2)), ((M2, r2, a2, K1, Y2, m2), (M1, r1))):
                # ker(other) not inside ker(arrow): v in ker(other) with arrow(v) != 0
                v = next((k for k in Kother if any(_apply(F, Ma, k))), None)
                if v is None:
                    continue
                self.rebase_src(cols, [v])
                self.rebase_tgt(ra, [_apply(F, Ma, v)])
                self.split(arrow, n, [cols[0]], [ra[0]])
                return True
            if not any(any(row) for row in M1):
                continue
            # equal kernels, nonzero: normalize both to [I 0; 0 0]
            vs = _complement_vectors(F, K1, d)
            w1 = [_apply(F, M1, v) for v in vs]
            w2 = [[sign2 * x for x in _apply(F, M2, v)] for v in vs]
            self.rebase_src(cols, vs + K1)
            self.rebase_tgt(r1, w1)
            self.rebase_tgt(r2, w2)
            self.split(pair, n, [cols[0]], [r1[0], r2[0]])
            return True
        return False

    def step_image(self, Y, b1, b2, pair, sign2) -> bool:
        """Image comparison of two arrows entering Y."""
        F, cat = self.F, self.cat
        (X1, _, m1), (X2, _, m2) = cat.ends(b1), cat.ends(b2)
        for n in self.types_tgt(Y):
            rows = self.t_slots((Y, n))
            c1, c2 = self.s_slots((X1, n - m1)), self.s_slots((X2, n - m2))
            M1, M2 = self.mat(b1, rows, c1), self.mat(b2, rows, c2)
            e = len(rows)
            I1, I2 = _column_space(F, M1, e), _column_space(F, M2, e)
            for (Ma, ca, arrow, Iother, sh), _ in (((M2, c2, b2, I1, n - m2), None),
                                                   ((M1, c1, b1, I2, n - m1), None)):
                # im(arrow) not inside im(other)
                k = next((b for b in range(len(ca))
                          if rank(F, Iother + [_col(Ma, b)]) > len(Iother)), None)
                if k is None:
                    continue
                v = [F.one if a == k else F.zero for a in range(len(ca))]
                w = _col(Ma, k)
                self.rebase_src(ca, [v])
                self.rebase_tgt(rows, [w] + Iother)
                self.split(arrow, sh, [ca[0]], [rows[0]])
                return True
            if not I1:
                continue
            # equal nonzero images: normalize to [I 0; 0 0] and sign2 * [I 0; 0 0]
            pre1 = [_preimage(F, M1, w) for w in I1]
            pre2 = [_preimage(F, M2, [sign2 * x for x in w]) for w in I1]
            self.rebase_src(c1, pre1 + nullspace(F, M1, len(c1)))
            self.rebase_src(c2, pre2 + nullspace(F, M2, len(c2)))
            self.rebase_tgt(rows, I1)
            self.split(pair, n - m1, [c1[0], c2[0]], [rows[0]])
            return True
        return False

    def step_single(self, names) -> bool:
        F, cat = self.F, self.cat
        for name in names:
            X, Y, m = cat.ends(name)
            for n in self.types_src(X):
                cols, rows = self.s_slots((X, n)), self.t_slots((Y, n + m))
                M = self.mat(name, rows, cols)
                v = _nonzero_column(F, M)
                if v is None:
                    continue
                self.rebase_src(cols, [v])
                self.rebase_tgt(rows, [_apply(F, M, v)])
                self.split(name, n, [cols[0]], [rows[0]])
                return True
        return False

    def run(self) -> Decomposition:
        while (self.step_identity()
               or self.step_kernel("B", "g", "fp", "(g;f')", 1)
               or self.step_kernel("E", "kp", "hpp", "(k';-h'')", -1)
               or self.step_image("E", "hp", "k", "(h',-k)", -1)
               or self.step_image("B", "gpp", "f", "(g'',Sf)", 1)
               or self.step_single(["fpp", "gp", "h", "kpp", "l", "lp"])):
            pass
        if self.u.restrict(self.act_t, self.act_s).coeffs:
            raise AssertionError("decomposition left a nonzero remainder")
        for i in list(self.act_s):
            X, n = self.u.src[i]
            self.pieces.append(DecompPiece(f"{X}->0", n, (i,), ()))
        for j in list(self.act_t):
            X, n = self.u.tgt[j]
            self.pieces.append(DecompPiece(f"0->{X}", n, (), (j,)))
        return Decomposition(self.u0, self.pieces, self.P, self.Pinv, self.Q, self.Qinv, self.u)


def _apply(F, M, v):
    return [sum((a * b for a, b in zip(row, v)), F.zero) for row in M]


def _col(M, k):
    return [row[k] for row in M]


def _nonzero_column(F, M):
    if not M or not M[0]:
        return None
    for k in range(len(M[0])):
        if any(row[k] for row in M):
            return [F.one if a == k else F.zero for a in range(len(M[0]))]
    return None


def _column_space(F, M, e) -> list[list]:
    """A basis of the column space (as vectors of length e)."""
    if not M or not M[0]:
        return []
    R, piv = rref(F, [list(c) for c in zip(*M)])
    return [R[a] for a in range(len(piv))]


def _complement_vectors(F, K, d) -> list[list]:
    """Vectors completing the subspace basis K to K^d (excluding K itself)."""
    full = complete_basis(F, K, d)
    return full[len(K):]


def _preimage(F, M, w):
    n = len(M[0])
    sp = solve_affine([(row, b) for row, b in zip(M, w)], n, F)
    assert sp.feasible
    return list(sp.particular)


def decompose_morphism(u: SMorphism, cat: PresCategory | None = None) -> Decomposition:
    """Split ``u`` into indecomposable pieces following the fixed reduction
    order: identities; kernels of (g, f') and (k', h''); images of (h', k)
    and (g'', f); remaining arrows; zero stalks."""
    cat = cat or u.cat
    dec = _Decomposer(cat, u).run()
    _check_decomposition(dec)
    return dec


def _check_decomposition(dec: Decomposition):
    cat, F = dec.u.cat, dec.u.field
    if dec.P @ dec.Pinv != SMorphism.identity(cat, F, dec.u.src) or \
            dec.Q @ dec.Qinv != SMorphism.identity(cat, F, dec.u.tgt):
        raise AssertionError("change of basis is not invertible")
    if dec.recompose() != dec.u:
        raise AssertionError("recomposition differs from the input")
    covered = set()
    for p in dec.pieces:
        block = dec.D.restrict(p.tgt_slots, p.src_slots)
        if block != canonical_piece(cat, F, p.tag, p.shift):
            raise AssertionError(f"piece {p.tag} is not in normal form")
        covered |= {(j, i) for j in p.tgt_slots for i in p.src_slots}
    if any((j, i) not in covered for (j, i, _) in dec.D.coeffs):
        raise AssertionError("decomposition has terms outside its pieces")


# ----------------------------------------------------------------------------
# triangles in S


@dataclass(frozen=True)
class STriangle:
    u: SMorphism
    v: SMorphism
    w: SMorphism

    def __post_init__(self):
        if self.u.tgt != self.v.src or self.w.src != self.v.tgt or \
                self.w.tgt != tuple((X, n + 1) for X, n in self.u.src):
            raise DomainError("triangle maps do not chain")

    def rotate(self) -> "STriangle":
        return STriangle(self.v, self.w, -self.u.shift(1))

    def shift(self, k: int = 1) -> "STriangle":
        sign = -1 if k % 2 else 1
        return STriangle(self.u.shift(k), self.v.shift(k), self.w.shift(k).scale(sign))


def generating_triangles(cat: PresCategory, field: Field) -> dict[str, STriangle]:
    """The six triangles of the octahedron, inside S."""
    a = lambda name: SMorphism.arrow(cat, field, name)  # noqa: E731
    P = lambda tag: canonical_piece(cat, field, tag)  # noqa: E731
    return {
        "tri1": STriangle(a("f"), a("fp"), a("fpp")),
        "tri2": STriangle(a("h"), a("hp"), a("hpp")),
        "tri3": STriangle(a("g"), a("gp"), a("gpp")),
        "tri4": STriangle(a("k"), a("kp"), a("kpp")),
        "tri5": STriangle(a("l"), P("(k';-h'')"), P("(g'',Sf)")),
        "tri6": STriangle(P("(g;f')"), P("(h',-k)"), a("lp")),
    }


# tag -> (generating triangle, rotation count)
_TRIANGLE_OF = {}
for _t, _names in (("tri1", ("f", "fp", "fpp")), ("tri2", ("h", "hp", "hpp")),
                   ("tri3", ("g", "gp", "gpp")), ("tri4", ("k", "kp", "kpp")),
                   ("tri5", ("l", "(k';-h'')", "(g'',Sf)")), ("tri6", ("(g;f')", "(h',-k)", "lp"))):
    for _r, _nm in enumerate(_names):
        _TRIANGLE_OF[_nm] = (_t, _r)


def completion(cat: PresCategory, field: Field, tag: str, shift: int) -> STriangle:
    """A distinguished triangle whose first map is ``canonical_piece(tag, shift)``."""
    if tag.startswith("id:") or tag.endswith("->0") or tag.startswith("0->"):
        X = tag[3:] if tag.startswith(("id:", "0->")) else tag[:-3]
        base = shift - 1 if tag.startswith("0->") else shift
        ident = SMorphism.identity(cat, field, [(X, base)])
        t = STriangle(ident, SMorphism.zero(cat, field, [(X, base)], []),
                      SMorphism.zero(cat, field, [], [(X, base + 1)]))
        rot = 0 if tag.startswith("id:") else (1 if tag.endswith("->0") else 2)
    else:
        name, rot = _TRIANGLE_OF[tag]
        t = generating_triangles(cat, field)[name]
    for _ in range(rot):
        t = t.rotate()
    if not tag.startswith(("id:", "0->")) and not tag.endswith("->0"):
        t = t.shift(shift)
    if t.u != canonical_piece(cat, field, tag, shift):
        raise AssertionError(f"completion of {tag} does not start with its normal form")
    return t


@dataclass
class SDistinguishedReport:
    verdict: str
    witness: SMorphism | None
    pieces: Counter
    solution_dim: int
    method: str


def _sum_morphisms(cat, field, src, tgt, parts):
    """Block morphism from ``parts = [(morphism, rows, cols)]``."""
    c = {}
    for m, rows, cols in parts:
        for (j, i, name), v in m.coeffs.items():
            key = (rows[j], cols[i], name)
            c[key] = c.get(key, field.zero) + v
    return SMorphism(cat, field, src, tgt, c)


def is_distinguished_S(t: STriangle, cap: int = DEFAULT_CAP, seed: int = 0) -> SDistinguishedReport:
    """Compare ``t`` with the canonical completion of its first map."""
    cat, F = t.u.cat, t.u.field
    dec = decompose_morphism(t.u, cat)
    # completion of D = Q u P^-1, slot by slot
    C_slots, v_parts, w_parts = [], [], []
    for p in dec.pieces:
        comp = completion(cat, F, p.tag, p.shift)
        off = len(C_slots)
        C_slots.extend(comp.v.tgt)
        rng_c = list(range(off, off + len(comp.v.tgt)))
        v_parts.append((comp.v, rng_c, list(p.tgt_slots)))
        w_parts.append((comp.w, list(p.src_slots), rng_c))
    srcS = [(X, n + 1) for X, n in t.u.src]
    vD = _sum_morphisms(cat, F, t.u.tgt, C_slots, v_parts)
    wD = _sum_morphisms(cat, F, C_slots, srcS, w_parts)
    v_c = vD @ dec.Q
    w_c = dec.Pinv.shift(1) @ wD
    Z = t.v.tgt
    space = solve_smorphism(cat, F, Z, C_slots,
                            lambda phi: (phi @ t.v).to_vector() + (w_c @ phi).to_vector(),
                            v_c.to_vector() + t.w.to_vector())
    ms = dec.multiset()
    if not space.feasible:
        return SDistinguishedReport("CertifiedNo", None, ms, -1, "infeasible")
    blocks = s_unit_blocks(Z, C_slots, cat=cat)
    if blocks is None:
        return SDistinguishedReport("CertifiedNo", None, ms, space.dim, "object mismatch")

    def verify(vec):
        return s_is_invertible(SMorphism.from_vector(cat, F, Z, C_slots, vec))[0]

    res = find_invertible(space, blocks, verify=verify, cap=cap, seed=seed)
    if res.status == "found":
        phi = SMorphism.from_vector(cat, F, Z, C_slots, res.vector)
        return SDistinguishedReport("CertifiedYes", phi, ms, space.dim, res.method)
    verdict = "CertifiedNo" if res.status == "none" else "Inconclusive"
    return SDistinguishedReport(verdict, None, ms, space.dim, res.method)


# ----------------------------------------------------------------------------
# functors


@dataclass
class CatFunctor:
    """A K-linear functor out of a presented category.

    ``target`` is a :class:`PresCategory`, or ``None`` for the homotopy
    category of P-sums, in which case ``obj_map`` values are ``PObject`` and
    ``arrow_map`` values ``HomMatrix``; otherwise arrow images are linear
    combinations ``{basis name: coefficient}``.
    """

    source: PresCategory
    target: PresCategory | None
    field: Field
    obj_map: dict
    arrow_map: dict

    def image(self, name: str, shift: int = 0, X: str | None = None):
        if self.target is None:
            from .homcat import HomMatrix
            if name == ID:
                return HomMatrix.identity(self.field, self.obj_map[X].shift(shift))
            return self.arrow_map[name].shift(shift)
        if name == ID:
            return {ID: 1}
        return dict(self.arrow_map[name])

    def apply(self, u: SMorphism):
        """Image of a morphism between sums (homotopy-category targets only)."""
        from .homcat import HomMatrix, PObject
        if self.target is not None:
            raise DomainError("apply is defined for functors into the homotopy category")
        F = self.field
        src_objs = [self.obj_map[X].shift(n) for X, n in u.src]
        tgt_objs = [self.obj_map[X].shift(n) for X, n in u.tgt]
        src = sum(src_objs, PObject(()))
        tgt = sum(tgt_objs, PObject(()))
        so = list(itertools.accumulate([0] + [len(o) for o in src_objs]))
        to = list(itertools.accumulate([0] + [len(o) for o in tgt_objs]))
        total = HomMatrix.zero(F, src, tgt)
        for (j, i, name), c in u.coeffs.items():
            X, n = u.src[i]
            m = self.image(name, n, X).scale(c)
            ent = {(a + to[j], b + so[i]): t for (a, b), t in m.entries.items()}
            total = total + HomMatrix(F, src, tgt, ent)
        return total


def check_functor(Fn: CatFunctor) -> bool:
    """Identities and all basis compositions are preserved."""
    cat = Fn.source
    if Fn.target is None:
        from .homcat import HomMatrix
        for name, a in cat.arrows.items():
            img = Fn.image(name)
            if img.src != Fn.obj_map[a.src] or img.tgt != Fn.obj_map[a.tgt].shift(a.shift):
                return False
        for g, f in cat.composable_pairs():
            mf = cat.arrows[f].shift
            lhs = Fn.image(g, mf) @ Fn.image(f)
            X = cat.arrows[f].src
            rhs = HomMatrix.zero(Fn.field, lhs.src, lhs.tgt)
            for r, c in cat.compose_basis(g, f).items():
                rhs = rhs + Fn.image(r, 0, X).scale(c)
            if lhs != rhs:
                return False
        return True
    tgt = Fn.target
    for name, a in cat.arrows.items():
        for b in Fn.arrow_map[name]:
            if tgt.ends(b, Fn.obj_map[a.src]) != (Fn.obj_map[a.src], Fn.obj_map[a.tgt], a.shift):
                return False
    for g, f in cat.composable_pairs():
        lhs = tgt._lin(Fn.image(g), Fn.image(f))
        rhs: dict = {}
        for r, c in cat.compose_basis(g, f).items():
            for b, d in Fn.image(r).items():
                rhs[b] = rhs.get(b, 0) + c * d
        rhs = {k: v for k, v in rhs.items() if v}
        if lhs != rhs:
            return False
    return True


def compose_functors(R: CatFunctor, S: CatFunctor) -> CatFunctor:
    """``R o S`` for functors between presented categories."""
    if S.target is not R.source:
        raise DomainError("functors are not composable")
    objs = {X: R.obj_map[Y] for X, Y in S.obj_map.items()}
    arrows = {}
    for name, terms in S.arrow_map.items():
        out: dict = {}
        for b, c in terms.items():
            for r, d in R.image(b).items():
                out[r] = out.get(r, 0) + c * d
        arrows[name] = {k: v for k, v in out.items() if v}
    return CatFunctor(S.source, R.target, S.field, objs, arrows)


def is_identity_functor(Fn: CatFunctor) -> bool:
    return (Fn.target is Fn.source and all(Fn.obj_map[X] == X for X in Fn.source.objects)
            and all(Fn.arrow_map[a] == {a: 1} for a in Fn.source.arrows))


def beilinson_functors(field: Field) -> tuple[CatFunctor, CatFunctor, CatFunctor, PresCategory, PresCategory]:
    """``S: E -> E'``, its retraction ``R`` and the faulty ``R'`` with
    ``a1 -> f``."""
    E, Ep = build_category("E"), build_category("Eprime")
    objs = {"A": "O", "B": "O(1)", "C": "O(2)"}
    back = {v: k for k, v in objs.items()}
    S = CatFunctor(E, Ep, field, objs, {"f": {"a0": 1}, "g": {"b0": 1}, "h": {"c00": 1}})
    rmap = {name: {} for name in Ep.arrows}
    rmap.update({"a0": {"f": 1}, "b0": {"g": 1}, "c00": {"h": 1}})
    R = CatFunctor(Ep, E, field, back, rmap)
    bad = dict(rmap)
    bad.update({"a0": {}, "a1": {"f": 1}})
    Rbad = CatFunctor(Ep, E, field, back, bad)
    return S, R, Rbad, E, Ep


def functor_from_octahedron(o, cat: PresCategory | None = None, cap: int = DEFAULT_CAP,
                            seed: int = 0) -> CatFunctor:
    """The exact functor out of S determined by a good octahedron."""
    from .tri import validate_octahedron
    if not validate_octahedron(o, cap=cap, seed=seed).good:
        raise PreconditionError("octahedron is not good")
    cat = cat or build_category("S")
    objs = {X: o.obj(X) for X in S_OBJECTS}
    arrows = {name: o.map(name) for name in cat.arrows}
    Fn = CatFunctor(cat, None, o.field, objs, arrows)
    if not check_functor(Fn):
        raise AssertionError("octahedron relations do not give a functor")
    return Fn


def functor_triangle_images(Fn: CatFunctor, cap: int = DEFAULT_CAP, seed: int = 0) -> dict[str, str]:
    """Verdicts for the images of the six generating triangles of S."""
    from .tri import Triangle, is_distinguished
    out = {}
    for name, t in generating_triangles(Fn.source, Fn.field).items():
        img = Triangle.of(Fn.apply(t.u), Fn.apply(t.v), Fn.apply(t.w))
        out[name] = is_distinguished(img, cap=cap, seed=seed).verdict
    return out


# ----------------------------------------------------------------------------
# random morphisms (test and report corpus)


def random_smorphism(cat: PresCategory, field: Field, rng: random.Random, max_summands: int = 4,
                     shifts: Iterable[int] = (0, 1), density: float = 0.6) -> SMorphism:
    shifts = list(shifts)
    objs = list(cat.objects)
    src = [(rng.choice(objs), rng.choice(shifts)) for _ in range(rng.randint(1, max_summands))]
    tgt = [(rng.choice(objs), rng.choice(shifts)) for _ in range(rng.randint(1, max_summands))]
    coeffs = {}
    for key in s_hom_basis(cat, src, tgt):
        if rng.random() < density:
            coeffs[key] = field.random(rng)
    return SMorphism(cat, field, src, tgt, coeffs)


def random_automorphism(cat: PresCategory, field: Field, slots, rng: random.Random) -> SMorphism:
    """A random invertible endomorphism of a sum of slots."""
    while True:
        vec = [field.random(rng) for _ in s_hom_basis(cat, slots, slots)]
        u = SMorphism.from_vector(cat, field, slots, slots, vec)
        if s_is_invertible(u)[0]:
            return u
