"""Triangles and octahedra in the homotopy category of P-sums.

A triangle ``X -f-> Y -g-> Z -h-> X[1]`` is certified distinguished by
comparing it with the cone triangle of ``f``: the cone is brought to normal
form, its contractible pieces are dropped, and we look for an invertible
``phi: Z -> cone`` with ``phi o g = j`` and ``q o phi = h``.  Such ``phi`` exists
exactly when the triangle is isomorphic to the cone triangle by a map that is
the identity on ``X`` and ``Y``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .complex import ChainMap, NormalForm, Piece, cone_of, normal_form
from .errors import DomainError, PreconditionError
from .exactalg import AffineSolutionSpace, Field, PolyMatrix, solve_affine
from .homcat import (HomMatrix, PObject, compose, hom_space_basis, is_invertible,
                     linear_map_matrix, presentify, realize, realize_object, unit_blocks)
from .search import DEFAULT_CAP, find_invertible

CERTIFIED_YES = "CertifiedYes"
CERTIFIED_NO = "CertifiedNo"
INCONCLUSIVE = "Inconclusive"
FOUND = "Found"
NONE_CERTIFIED = "NoneCertified"


@dataclass(frozen=True)
class Triangle:
    X: PObject
    Y: PObject
    Z: PObject
    f: HomMatrix
    g: HomMatrix
    h: HomMatrix

    def __post_init__(self):
        if (self.f.src, self.f.tgt) != (self.X, self.Y):
            raise DomainError("f must go X -> Y")
        if (self.g.src, self.g.tgt) != (self.Y, self.Z):
            raise DomainError("g must go Y -> Z")
        if (self.h.src, self.h.tgt) != (self.Z, self.X.shift(1)):
            raise DomainError("h must go Z -> X[1]")

    @classmethod
    def of(cls, f: HomMatrix, g: HomMatrix, h: HomMatrix) -> "Triangle":
        return cls(f.src, f.tgt, g.tgt, f, g, h)

    def rotate(self) -> "Triangle":
        return Triangle.of(self.g, self.h, -self.f.shift(1))

    def shift(self, n: int = 1) -> "Triangle":
        sign = -1 if n % 2 else 1
        return Triangle.of(self.f.shift(n), self.g.shift(n), self.h.shift(n).scale(sign))


@dataclass
class DistinguishedReport:
    verdict: str
    witness: HomMatrix | None
    cone_pieces: list[Piece]
    solution_dim: int
    method: str

    @property
    def ok(self) -> bool:
        return self.verdict == CERTIFIED_YES


def _prefix_maps(big, small):
    """Projection ``big -> small`` and inclusion ``small -> big`` onto the
    leading coordinates of every degree."""
    F = big.field
    pi, io = {}, {}
    for k, r in big.ranks.items():
        s = small.rank(k)
        pi[k] = PolyMatrix(F, s, r, [[F.one if a == b else F.zero for b in range(r)] for a in range(s)])
        io[k] = PolyMatrix(F, r, s, [[F.one if a == b else F.zero for b in range(s)] for a in range(r)])
    return ChainMap(big, small, pi), ChainMap(small, big, io)


@dataclass
class ConeData:
    """The cone triangle of ``f`` transported to a P-sum ``W``."""

    W: PObject
    j: HomMatrix  # Y -> W
    q: HomMatrix  # W -> X[1]
    normal_form: NormalForm


def cone_triangle(f: HomMatrix) -> ConeData:
    F = f.field
    C, incl, proj = cone_of(realize(f))
    nf = normal_form(C)
    if any(p.kind == "free_stalk" for p in nf.summands):
        raise AssertionError("cone of a morphism of P-sums has a free stalk summand")
    W = PObject(tuple((p.n, p.shift) for p in nf.summands if p.kind == "two_term"))
    pi, io = _prefix_maps(nf.target, realize_object(F, W))
    j = presentify(pi @ nf.iso_to @ incl, f.tgt, W)
    q = presentify(proj @ nf.iso_from @ io, W, f.src.shift(1))
    return ConeData(W, j, q, nf)


def solve_hom(field: Field, src: PObject, tgt: PObject,
              fn: Callable[[HomMatrix], list], rhs: list) -> AffineSolutionSpace:
    """Solve the linear system ``fn(u) == rhs`` for ``u`` in Hom(src, tgt);
    ``fn`` returns a flat coefficient vector."""
    n = len(hom_space_basis(src, tgt))
    A = linear_map_matrix(field, lambda v: fn(HomMatrix.from_vector(field, src, tgt, v)), n)
    return solve_affine(list(zip(A, rhs)), n, field)


def is_distinguished(t: Triangle, cap: int = DEFAULT_CAP, seed: int = 0) -> DistinguishedReport:
    F = t.f.field
    cd = cone_triangle(t.f)
    W = cd.W
    space = solve_hom(F, t.Z, W, lambda phi: compose(phi, t.g).to_vector() + compose(cd.q, phi).to_vector(),
                      cd.j.to_vector() + t.h.to_vector())
    pieces = list(cd.normal_form.summands)
    if not space.feasible:
        return DistinguishedReport(CERTIFIED_NO, None, pieces, -1, "infeasible")
    blocks = unit_blocks(t.Z, W)
    if blocks is None:
        return DistinguishedReport(CERTIFIED_NO, None, pieces, space.dim, "object mismatch")

    def verify(v):
        return is_invertible(HomMatrix.from_vector(F, t.Z, W, v))[0]

    res = find_invertible(space, blocks, verify=verify, cap=cap, seed=seed)
    if res.status == "found":
        phi = HomMatrix.from_vector(F, t.Z, W, res.vector)
        assert compose(phi, t.g) == cd.j and compose(cd.q, phi) == t.h
        return DistinguishedReport(CERTIFIED_YES, phi, pieces, space.dim, res.method)
    verdict = CERTIFIED_NO if res.status == "none" else INCONCLUSIVE
    return DistinguishedReport(verdict, None, pieces, space.dim, res.method)


def basis_triangle(field: Field, m: int, n: int, i: int) -> Triangle:
    """``P_m -x^i-> P_n -> P_{m-n+i}[1] + P_i -> P_m[1]`` with P_0 summands dropped."""
    if not (m >= 1 and n >= 1 and max(0, n - m) <= i < n):
        raise DomainError(f"x^{i}: P_{m} -> P_{n} is not a basis morphism")
    k = m - n + i
    X, Y = PObject(((m, 0),)), PObject(((n, 0),))
    zs, g_rows, h_cols = [], {}, {}
    if k > 0:
        g_rows[len(zs)] = {("y", n): 1}
        h_cols[len(zs)] = {("x", n - i): -1}
        zs.append((k, 1))
    if i > 0:
        g_rows[len(zs)] = {("x", 0): 1}
        h_cols[len(zs)] = {("y", i): 1}
        zs.append((i, 0))
    Z = PObject(tuple(zs))
    f = HomMatrix(field, X, Y, {(0, 0): {("x", i): 1}})
    g = HomMatrix(field, Y, Z, {(r, 0): t for r, t in g_rows.items()})
    h = HomMatrix(field, Z, X.shift(1), {(0, c): t for c, t in h_cols.items()})
    return Triangle(X, Y, Z, f, g, h)


# ----------------------------------------------------------------------------
# octahedra

OBJECTS = ("A", "B", "C", "D", "E", "F")
# map name -> (source, target, shift of target)
MAPS = {
    "f": ("A", "B", 0), "fp": ("B", "D", 0), "fpp": ("D", "A", 1),
    "g": ("B", "C", 0), "gp": ("C", "F", 0), "gpp": ("F", "B", 1),
    "h": ("A", "C", 0), "hp": ("C", "E", 0), "hpp": ("E", "A", 1),
    "k": ("D", "E", 0), "kp": ("E", "F", 0), "kpp": ("F", "D", 1),
    "l": ("B", "E", 0), "lp": ("E", "B", 1),
}
PRETTY = {"fp": "f'", "fpp": "f''", "gp": "g'", "gpp": "g''", "hp": "h'", "hpp": "h''",
          "kp": "k'", "kpp": "k''", "lp": "l'"}


@dataclass(frozen=True)
class Octahedron:
    A: PObject
    B: PObject
    C: PObject
    D: PObject
    E: PObject
    F: PObject
    f: HomMatrix
    fp: HomMatrix
    fpp: HomMatrix
    g: HomMatrix
    gp: HomMatrix
    gpp: HomMatrix
    h: HomMatrix
    hp: HomMatrix
    hpp: HomMatrix
    k: HomMatrix
    kp: HomMatrix
    kpp: HomMatrix
    l: HomMatrix
    lp: HomMatrix

    def __post_init__(self):
        for name, (s, t, sh) in MAPS.items():
            u = getattr(self, name)
            if u.src != getattr(self, s) or u.tgt != getattr(self, t).shift(sh):
                raise DomainError(f"{PRETTY.get(name, name)} has the wrong source or target")

    @property
    def field(self) -> Field:
        return self.f.field

    def obj(self, name: str) -> PObject:
        return getattr(self, name)

    def map(self, name: str) -> HomMatrix:
        return getattr(self, name)

    def replace(self, **changes) -> "Octahedron":
        return replace(self, **changes)

    def relations(self) -> dict[str, bool]:
        o = self
        z = HomMatrix.zero
        F = o.field
        return {
            "h = g o f": o.h == o.g @ o.f,
            "l = h' o g": o.l == o.hp @ o.g,
            "l = k o f'": o.l == o.k @ o.fp,
            "f'' = h'' o k": o.fpp == o.hpp @ o.k,
            "g' = k' o h'": o.gp == o.kp @ o.hp,
            "k'' = S f' o g''": o.kpp == o.fp.shift(1) @ o.gpp,
            "l' = S f o h''": o.lp == o.f.shift(1) @ o.hpp,
            "l' = g'' o k'": o.lp == o.gpp @ o.kp,
            "f' o f = 0": (o.fp @ o.f) == z(F, o.A, o.D),
            "h'' o h' = 0": (o.hpp @ o.hp) == z(F, o.C, o.A.shift(1)),
            "S g o g'' = 0": (o.g.shift(1) @ o.gpp) == z(F, o.F, o.C.shift(1)),
            "k' o k = 0": (o.kp @ o.k) == z(F, o.D, o.F),
        }

    def triangles(self) -> dict[str, Triangle]:
        o = self
        F = o.field
        return {
            "tri1": Triangle.of(o.f, o.fp, o.fpp),
            "tri2": Triangle.of(o.h, o.hp, o.hpp),
            "tri3": Triangle.of(o.g, o.gp, o.gpp),
            "tri4": Triangle.of(o.k, o.kp, o.kpp),
            "tri5": Triangle.of(o.l, HomMatrix.vstack(F, [o.kp, -o.hpp]),
                                HomMatrix.hstack(F, [o.gpp, o.f.shift(1)])),
            "tri6": Triangle.of(HomMatrix.vstack(F, [o.g, o.fp]),
                                HomMatrix.hstack(F, [o.hp, -o.k]), o.lp),
        }


@dataclass
class OctahedronReport:
    valid: bool
    good: bool
    relations: dict[str, bool]
    triangles: dict[str, str]


def validate_octahedron(o: Octahedron, cap: int = DEFAULT_CAP, seed: int = 0) -> OctahedronReport:
    rel = o.relations()
    tris = {name: is_distinguished(t, cap=cap, seed=seed).verdict for name, t in o.triangles().items()}
    valid = all(rel.values()) and all(tris[f"tri{i}"] == CERTIFIED_YES for i in range(1, 5))
    good = valid and tris["tri5"] == CERTIFIED_YES and tris["tri6"] == CERTIFIED_YES
    return OctahedronReport(valid, good, rel, tris)


def _is_unique(field, src, tgt, fn, rhs: HomMatrix) -> bool:
    space = solve_hom(field, src, tgt, lambda u: fn(u).to_vector(), rhs.to_vector())
    return space.feasible and space.dim == 0


def goodness_by_uniqueness(o: Octahedron) -> dict[str, bool]:
    """The sufficient conditions for goodness: each named map is the only
    solution of its defining equation."""
    F = o.field
    return {
        "k' unique with x o h' = g'": _is_unique(F, o.E, o.F, lambda x: x @ o.hp, o.gp),
        "S f unique with S g o x = S h": _is_unique(F, o.A.shift(1), o.B.shift(1),
                                                    lambda x: o.g.shift(1) @ x, o.h.shift(1)),
        "g unique with x o f = h": _is_unique(F, o.B, o.C, lambda x: x @ o.f, o.h),
        "k unique with h'' o x = f''": _is_unique(F, o.D, o.E, lambda x: o.hpp @ x, o.fpp),
    }


# ----------------------------------------------------------------------------
# isomorphism search


@dataclass
class IsoSearchReport:
    verdict: str
    witnesses: dict[str, HomMatrix] | None
    constraint_system_size: tuple[int, int]  # (equations, unknowns)
    solution_space_dim: int
    field: str
    method: str
    contradiction: str | None = None

    def __post_init__(self):
        if self.verdict == FOUND:
            assert self.witnesses is not None
            for name, phi in self.witnesses.items():
                assert is_invertible(phi)[0], f"phi_{name} is not invertible"


class _IsoSystem:
    """Unknowns: the coefficient vectors of phi_X in Hom(X, X~), X in A..F."""

    def __init__(self, o1: Octahedron, o2: Octahedron):
        self.o1, self.o2 = o1, o2
        self.field = o1.field
        self.offsets = {}
        n = 0
        for X in OBJECTS:
            self.offsets[X] = n
            n += len(hom_space_basis(o1.obj(X), o2.obj(X)))
        self.n = n

    def split(self, vec) -> dict[str, HomMatrix]:
        out = {}
        for X in OBJECTS:
            a = self.offsets[X]
            b = a + len(hom_space_basis(self.o1.obj(X), self.o2.obj(X)))
            out[X] = HomMatrix.from_vector(self.field, self.o1.obj(X), self.o2.obj(X), vec[a:b])
        return out

    def residual(self, phis: dict[str, HomMatrix], names=None) -> list:
        out = []
        for name in names or MAPS:
            s, t, sh = MAPS[name]
            x, xt = self.o1.map(name), self.o2.map(name)
            out.extend((xt @ phis[s] - phis[t].shift(sh) @ x).to_vector())
        return out

    def rows(self, names=None) -> list[tuple[list, object]]:
        A = linear_map_matrix(self.field, lambda v: self.residual(self.split(v), names), self.n)
        return [(row, self.field.zero) for row in A]

    def coord(self, X: str, j: int, i: int, kind: str, e: int) -> int:
        for a, (jj, ii, b) in enumerate(hom_space_basis(self.o1.obj(X), self.o2.obj(X))):
            if (jj, ii, b.kind, b.i) == (j, i, kind, e):
                return self.offsets[X] + a
        raise DomainError(f"phi_{X} has no ({j}, {i}) {kind}^{e} coordinate")

    def blocks(self):
        out = []
        for X in OBJECTS:
            b = unit_blocks(self.o1.obj(X), self.o2.obj(X), self.offsets[X])
            if b is None:
                return None
            out.extend(b)
        return out

    def verify(self, vec) -> bool:
        phis = self.split(vec)
        return not any(self.residual(phis)) and all(is_invertible(p)[0] for p in phis.values())


def iso_search(o1: Octahedron, o2: Octahedron, cap: int = DEFAULT_CAP, seed: int = 0) -> IsoSearchReport:
    """Decide whether two octahedra are isomorphic (phi on shifted objects is
    the shift of phi on the unshifted one)."""
    sys_ = _IsoSystem(o1, o2)
    F = sys_.field
    rows = sys_.rows()
    size = (len(rows), sys_.n)
    space = solve_affine(rows, sys_.n, F)
    blocks = sys_.blocks()

    def report(verdict, vec, method, contradiction=None, dim=space.dim):
        wit = sys_.split(vec) if vec is not None else None
        return IsoSearchReport(verdict, wit, size, dim, F.descriptor, method, contradiction)

    if blocks is None:
        return report(NONE_CERTIFIED, None, "object mismatch")

    # identity first when the objects agree
    if all(o1.obj(X) == o2.obj(X) for X in OBJECTS):
        ident = []
        for X in OBJECTS:
            ident.extend(HomMatrix.identity(F, o1.obj(X)).to_vector())
        if sys_.verify(ident):
            return report(FOUND, ident, "identity")

    # An invertible phi has nonzero 1x1 unit coordinates; rescaling all of phi
    # makes any one of them equal to 1.  Infeasibility after that
    # normalization certifies non-isomorphism over every field.
    singles = [b[0][0] for b in blocks if len(b) == 1]
    for c in singles:
        norm = solve_affine(rows + [({c: 1}, 1)], sys_.n, F)
        if not norm.feasible:
            # enumeration cross-check on the homogeneous system
            cross = find_invertible(space, blocks, verify=sys_.verify, cap=cap, seed=seed)
            if cross.status == "found":
                raise AssertionError("normalization certificate contradicted by enumeration")
            method = cross.method if cross.status == "none" else "normalization"
            return report(NONE_CERTIFIED, None, method,
                          contradiction=f"unit coordinate {c} cannot be 1")

    target = solve_affine(rows + [({singles[0]: 1}, 1)], sys_.n, F) if singles else space
    res = find_invertible(target, blocks, verify=sys_.verify, cap=cap, seed=seed)
    if res.status == "found":
        return report(FOUND, res.vector, res.method)
    if res.status == "none":
        return report(NONE_CERTIFIED, None, res.method)
    return report(INCONCLUSIVE, None, res.method)


def forced_value(space: AffineSolutionSpace, functional: dict[int, object]):
    """The constant value of a linear functional on an affine space, or
    ``None`` when it varies."""
    F = space.field
    if not space.feasible:
        return None

    def ev(v):
        return sum((F(c) * v[i] for i, c in functional.items()), F.zero)

    if any(ev(b) for b in space.basis):
        return None
    return ev(space.particular)


@dataclass
class ContradictionReport:
    beta_E_minus_beta: object
    beta1_E_minus_beta: object
    feasible_before: bool
    feasible_after: bool

    @property
    def detected(self) -> bool:
        return (self.feasible_before and not self.feasible_after
                and self.beta_E_minus_beta == 1 and self.beta1_E_minus_beta == 0)


def contradiction_chain(o1: Octahedron, o2: Octahedron) -> ContradictionReport:
    """Replay the hand argument against an isomorphism of the two reference
    octahedra: normalize the leading coefficient of phi_A, impose the
    commutations with f, g, f', g'', k', h'' and read off the forced values of
    phi_E's x^1 coefficients; then add the commutation with h'."""
    sys_ = _IsoSystem(o1, o2)
    F = sys_.field
    first = ["f", "g", "fp", "gpp", "kp", "hpp"]
    norm = ({sys_.coord("A", 0, 0, "x", 0): 1}, 1)
    space = solve_affine(sys_.rows(first) + [norm], sys_.n, F)
    beta = sys_.coord("A", 0, 0, "x", 1)
    beta_E = sys_.coord("E", 1, 1, "x", 1)
    beta1_E = sys_.coord("E", 0, 0, "x", 1)
    d1 = forced_value(space, {beta_E: 1, beta: -1})
    d2 = forced_value(space, {beta1_E: 1, beta: -1})
    after = solve_affine(sys_.rows(first + ["hp"]) + [norm], sys_.n, F)
    return ContradictionReport(d1, d2, space.feasible, after.feasible)


# ----------------------------------------------------------------------------
# deformation


def _nilpotent(u: HomMatrix) -> bool:
    p = u
    for _ in range(len(hom_space_basis(u.src, u.tgt)) + 1):
        if p.is_zero():
            return True
        p = p @ u
    return p.is_zero()


def epsilon_deform(o: Octahedron, eps: HomMatrix, eps1: HomMatrix | None = None,
                   eps2: HomMatrix | None = None) -> Octahedron:
    """Replace ``k`` by ``(1+eps) o k`` and ``k'`` by ``k' o (1-eps)``."""
    F = o.field
    E = o.E
    for name, e in (("eps", eps), ("eps'", eps1), ("eps''", eps2)):
        if e is not None and (e.src != E or e.tgt != E):
            raise PreconditionError(f"{name} must be an endomorphism of E")

    def need(cond: bool, name: str):
        if not cond:
            raise PreconditionError(f"precondition violated: {name}")

    one = HomMatrix.identity(F, E)
    need((eps @ eps).is_zero(), "eps o eps = 0")
    need((eps @ o.l).is_zero(), "eps o l = 0")
    need((o.lp @ eps).is_zero(), "l' o eps = 0")
    need((o.hpp @ eps @ o.k).is_zero(), "h'' o eps o k = 0")
    need((o.kp @ eps @ o.hp).is_zero(), "k' o eps o h' = 0")
    if (eps1 is None) != (eps2 is None):
        raise PreconditionError("eps' and eps'' must be given together")
    if eps1 is not None:
        need(_nilpotent(eps1), "eps' nilpotent")
        need(_nilpotent(eps2), "eps'' nilpotent")
        need((eps1 @ o.l).is_zero(), "eps' o l = 0")
        need((o.hpp @ eps1).is_zero(), "h'' o eps' = 0")
        need((o.kp @ (eps1 - eps)).is_zero(), "k' o (eps' - eps) = 0")
        need((o.lp @ eps2).is_zero(), "l' o eps'' = 0")
        need((eps2 @ o.hp).is_zero(), "eps'' o h' = 0")
        need(((eps2 - eps) @ o.k).is_zero(), "(eps'' - eps) o k = 0")
    return o.replace(k=(one + eps) @ o.k, kp=o.kp @ (one - eps))


# ----------------------------------------------------------------------------
# the two explicit octahedra


def _hm(F, src, tgt, entries) -> HomMatrix:
    return HomMatrix(F, PObject(src), PObject(tgt), entries)


def reference_deformation(field: Field) -> tuple[HomMatrix, HomMatrix, HomMatrix]:
    """The three endomorphisms of E = P_2[1] + P_2 deforming the first
    octahedron into the second."""
    E = ((2, 1), (2, 0))
    eps = _hm(field, E, E, {(0, 1): {("y", 2): 1}})
    eps1 = _hm(field, E, E, {(0, 1): {("y", 2): 1}, (1, 1): {("x", 1): 1}})
    eps2 = _hm(field, E, E, {(0, 0): {("x", 1): -1}, (0, 1): {("y", 2): 1}})
    return eps, eps1, eps2


def reference_octahedra(field: Field) -> tuple[Octahedron, Octahedron]:
    """Two good octahedra extending ``P_3 -x^1-> P_3 -x^1-> P_3``."""
    F = field
    P3 = ((3, 0),)
    P3s = ((3, 1),)
    D = ((1, 1), (1, 0))
    Ds = ((1, 2), (1, 1))
    E = ((2, 1), (2, 0))
    x1 = _hm(F, P3, P3, {(0, 0): {("x", 1): 1}})
    col_1 = {(0, 0): {("y", 3): 1}, (1, 0): {("x", 0): 1}}
    row_1 = {(0, 0): {("x", 2): -1}, (0, 1): {("y", 1): 1}}
    o1 = Octahedron(
        A=PObject(P3), B=PObject(P3), C=PObject(P3), D=PObject(D), E=PObject(E), F=PObject(D),
        f=x1,
        fp=_hm(F, P3, D, col_1),
        fpp=_hm(F, D, P3s, row_1),
        g=x1,
        gp=_hm(F, P3, D, col_1),
        gpp=_hm(F, D, P3s, row_1),
        h=_hm(F, P3, P3, {(0, 0): {("x", 2): 1}}),
        hp=_hm(F, P3, E, {(0, 0): {("y", 3): 1}, (1, 0): {("x", 0): 1}}),
        hpp=_hm(F, E, P3s, {(0, 0): {("x", 1): -1}, (0, 1): {("y", 2): 1}}),
        k=_hm(F, D, E, {(0, 0): {("x", 1): 1}, (1, 1): {("x", 1): 1}}),
        kp=_hm(F, E, D, {(0, 0): {("x", 0): 1}, (1, 1): {("x", 0): 1}}),
        kpp=_hm(F, D, Ds, {(0, 0): {("y", 1): -1}, (1, 1): {("y", 1): 1}}),
        l=_hm(F, P3, E, {(0, 0): {("y", 2): 1}, (1, 0): {("x", 1): 1}}),
        lp=_hm(F, E, P3s, {(0, 0): {("x", 2): -1}, (0, 1): {("y", 1): 1}}),
    )
    o2 = o1.replace(
        k=_hm(F, D, E, {(0, 0): {("x", 1): 1}, (0, 1): {("y", 1): 1}, (1, 1): {("x", 1): 1}}),
        kp=_hm(F, E, D, {(0, 0): {("x", 0): 1}, (0, 1): {("y", 2): -1}, (1, 1): {("x", 0): 1}}),
    )
    return o1, o2


def zero_octahedron(field: Field) -> Octahedron:
    Z = PObject(())
    kw = {X: Z for X in OBJECTS}
    for name, (s, t, sh) in MAPS.items():
        kw[name] = HomMatrix.zero(field, Z, Z)
    return Octahedron(**kw)
