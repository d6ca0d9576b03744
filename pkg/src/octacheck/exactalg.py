"""Exact scalars, univariate polynomials over a field, polynomial matrices and
the small dense linear-algebra toolkit used throughout the package.

Two fields are supported: the rationals (``fractions.Fraction``) and prime
fields GF(p) (:class:`ModP`).  Nothing here ever touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class ModP:
    """Residue class modulo a prime, stored as the least nonnegative residue."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DomainError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(o, self.p) * self.inverse()

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModP(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, desc: str) -> "Field":
        d = desc.strip().lower()
        if d in ("q", "qq", "rationals"):
            return cls(None)
        m = re.fullmatch(r"(?:fp|gf|f):?(\d+)", d)
        if not m:
            raise DomainError(f"unknown field descriptor {desc!r}")
        return cls(int(m.group(1)))

    @property
    def descriptor(self) -> str:
        return "q" if self.p is None else f"fp:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, ModP):
                raise DomainError("cannot coerce a GF(p) element into Q")
            if isinstance(x, Fraction):
                return x
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise DomainError(f"cannot coerce GF({x.p}) element into GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator, self.p) / x.denominator
        return ModP(int(x), self.p)

    def elements(self):
        if self.p is None:
            raise DomainError("Q is infinite")
        return [ModP(v, self.p) for v in range(self.p)]

    def random(self, rng, bound: int = 3):
        """A random element; over Q an integer in [-bound, bound]."""
        if self.p is None:
            return Fraction(rng.randint(-bound, bound))
        return ModP(rng.randrange(self.p), self.p)

    def fmt(self, c) -> str:
        return str(c)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(GF({self.p}))"


# ----------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of x^k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs: list) -> "Poly":
        while cs and not cs[-1]:
            cs.pop()
        p = cls.__new__(cls)
        p.field = field
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, [])

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, [field(c)])

    @classmethod
    def monomial(cls, field, k: int, c=1):
        if k < 0:
            raise DomainError("negative exponent")
        return cls._raw(field, [field.zero] * k + [field(c)])

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Lowest exponent with nonzero coefficient (-1 for zero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def is_monomial(self) -> bool:
        return bool(self.coeffs) and sum(1 for c in self.coeffs if c) == 1

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] = cs[k] + c
        return Poly._raw(self.field, cs)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly._raw(self.field, [c * a for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(self.field, [])
        cs = [self.field.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    cs[i + j] = cs[i + j] + ai * bj
        return Poly._raw(self.field, cs)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly.const(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def truncate(self, n: int) -> "Poly":
        """Reduction modulo x^n."""
        return Poly._raw(self.field, list(self.coeffs[: max(n, 0)]))

    def monic(self) -> "Poly":
        return self * (self.field.one / self.lc)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            if k == 0:
                body = mag
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == "1" else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    _TERM = re.compile(r"([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*x(?:\s*\^\s*(\d+))?)?")

    @classmethod
    def parse(cls, field: Field, text: str) -> "Poly":
        """Inverse of ``str``: accepts e.g. ``"1 - 2/3*x + x^3"``."""
        s = text.strip()
        if not s:
            raise DomainError("empty polynomial string")
        cs: dict[int, object] = {}
        pos = 0
        while pos < len(s):
            if s[pos].isspace():
                pos += 1
                continue
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise DomainError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                k = int(m.group(4)) if m.group(4) else 1
            else:
                k = 0
            cs[k] = cs.get(k, 0) + sign * c
            pos = m.end()
        top = max(cs)
        return cls(field, [cs.get(k, 0) for k in range(top + 1)])


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise DomainError("division by the zero polynomial")
    F = a.field
    r = list(a.coeffs)
    db = b.degree
    inv = F.one / b.lc
    if len(r) - 1 < db:
        return Poly.zero(F), a
    q = [F.zero] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        t = c * inv
        q[k - db] = t
        for j, bj in enumerate(b.coeffs):
            if bj:
                r[k - db + j] = r[k - db + j] - t * bj
    return Poly._raw(F, q), Poly._raw(F, r[:db])


# ----------------------------------------------------------------------------
# polynomial matrices


class PolyMatrix:
    """Immutable rows x cols matrix of :class:`Poly`."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if entries is None:
            z = Poly.zero(field)
            entries = tuple(tuple(z for _ in range(cols)) for _ in range(rows))
        else:
            entries = tuple(tuple(_as_poly(field, e) for e in row) for row in entries)
            if len(entries) != rows or any(len(row) != cols for row in entries):
                raise DomainError(f"entry grid does not match {rows}x{cols}")
        self.entries = entries

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(field, len(rows), cols, rows)

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n):
        one, z = Poly.const(field, 1), Poly.zero(field)
        return cls(field, n, n, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, field, blocks: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        """Assemble a block matrix; every block row must share heights."""
        rows = []
        for brow in blocks:
            h = brow[0].rows
            for r in range(h):
                row = []
                for b in brow:
                    if b.rows != h:
                        raise DomainError("ragged block row")
                    row.extend(b.entries[r])
                rows.append(row)
        cols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls(field, len(rows), cols, rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.field, len(rows), len(cols),
                          [[self.entries[i][j] for j in cols] for i in rows])

    def transpose(self):
        return PolyMatrix(self.field, self.cols, self.rows,
                          [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return PolyMatrix(self.field, self.rows, self.cols,
                              [[e * other for e in row] for row in self.entries])
        if self.cols != other.rows:
            raise DomainError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        z = Poly.zero(self.field)
        out = []
        for i in range(self.rows):
            row = []
            ai = self.entries[i]
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    if ai[k] and other.entries[k][j]:
                        acc = acc + ai[k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, self.rows, other.cols, out)

    def __add__(self, other):
        self._same_shape(other)
        return PolyMatrix(self.field, self.rows, self.cols,
                          [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return PolyMatrix(self.field, self.rows, self.cols,
                          [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix(self.field, self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DomainError("shape mismatch")

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def max_degree(self) -> int:
        return max((e.degree for row in self.entries for e in row), default=-1)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"

    def determinant(self) -> Poly:
        if self.rows != self.cols:
            raise DomainError("determinant of a non-square matrix")
        return _poly_det([list(r) for r in self.entries], self.field)


def _as_poly(field, e):
    if isinstance(e, Poly):
        return e
    if isinstance(e, str):
        return Poly.parse(field, e)
    return Poly.const(field, e)


def _poly_det(a, field):
    n = len(a)
    if n == 0:
        return Poly.const(field, 1)
    if n == 1:
        return a[0][0]
    total = Poly.zero(field)
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _poly_det(minor, field)
        total = total + term if j % 2 == 0 else total - term
    return total


def smith_with_inverses(m: PolyMatrix):
    """Smith reduction returning ``(left, diag, right, left_inv, right_inv)``.

    Pivots are chosen of minimal degree, ties broken by lowest (row, col);
    nonzero diagonal entries are made monic.
    """
    F = m.field
    r, c = m.rows, m.cols
    A = [list(row) for row in m.entries]
    one, zero = Poly.const(F, 1), Poly.zero(F)

    def eye(n):
        return [[one if i == j else zero for j in range(n)] for i in range(n)]

    L, Li, R, Ri = eye(r), eye(r), eye(c), eye(c)

    def row_swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        L[i], L[j] = L[j], L[i]
        for row in Li:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]
        Ri[i], Ri[j] = Ri[j], Ri[i]

    def row_addmul(i, j, q):
        # row_i += q * row_j
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
        L[i] = [a + q * b for a, b in zip(L[i], L[j])]
        for row in Li:
            row[j] = row[j] - q * row[i]

    def col_addmul(i, j, q):
        # col_i += q * col_j
        for row in A:
            row[i] = row[i] + q * row[j]
        for row in R:
            row[i] = row[i] + q * row[j]
        Ri[j] = [a - q * b for a, b in zip(Ri[j], Ri[i])]

    def row_scale(i, s):
        A[i] = [a * s for a in A[i]]
        L[i] = [a * s for a in L[i]]
        inv = F.one / s
        for row in Li:
            row[i] = row[i] * inv

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                e = A[i][j]
                if e and (best is None or e.degree < A[best[0]][best[1]].degree):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            for i in range(t + 1, r):
                if A[i][t]:
                    q, _ = poly_divmod(A[i][t], A[t][t])
                    row_addmul(i, t, -q)
            rem = [i for i in range(t + 1, r) if A[i][t]]
            if rem:
                i = min(rem, key=lambda k: (A[k][t].degree, k))
                row_swap(t, i)
                continue
            for j in range(t + 1, c):
                if A[t][j]:
                    q, _ = poly_divmod(A[t][j], A[t][t])
                    col_addmul(j, t, -q)
            rem = [j for j in range(t + 1, c) if A[t][j]]
            if rem:
                j = min(rem, key=lambda k: (A[t][k].degree, k))
                col_swap(t, j)
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if A[i][j] and poly_divmod(A[i][j], A[t][t])[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, one)
        lc = A[t][t].lc
        if lc != F.one:
            row_scale(t, F.one / lc)
        t += 1

    mk = lambda rows, n_r, n_c: PolyMatrix(F, n_r, n_c, rows)
    return mk(L, r, r), mk(A, r, c), mk(R, c, c), mk(Li, r, r), mk(Ri, c, c)


def matrix_smith_reduce(m: PolyMatrix) -> tuple[PolyMatrix, PolyMatrix, PolyMatrix]:
    """Return ``(left, diag, right)`` with ``left * m * right == diag``."""
    left, diag, right, _, _ = smith_with_inverses(m)
    return left, diag, right


def is_smith_form(d: PolyMatrix) -> bool:
    n = min(d.rows, d.cols)
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d[i, j]:
                return False
    for k in range(n - 1):
        a, b = d[k, k], d[k + 1, k + 1]
        if a.is_zero():
            if b:
                return False
        elif b and poly_divmod(b, a)[1]:
            return False
    return True


# ----------------------------------------------------------------------------
# dense linear algebra over the field


def mat_identity(field: Field, n: int) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_zeros(field: Field, r: int, c: int) -> list[list]:
    return [[field.zero] * c for _ in range(r)]


def mat_mul(field: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    n = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != n:
            raise DomainError("inner dimensions differ")
        acc = [field.zero] * cols
        for k, aik in enumerate(row):
            if aik:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] = acc[j] + aik * bk[j]
        out.append(acc)
    return out


def mat_vec(field: Field, a, v) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), field.zero) for row in a]


def rref(field: Field, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(field: Field, rows) -> int:
    return len(rref(field, rows)[1])


def nullspace(field: Field, rows: Sequence[Sequence], ncols: int) -> list[list]:
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx][f]
        basis.append(v)
    return basis


def mat_inverse(field: Field, a: Sequence[Sequence]):
    """Inverse of a square matrix, or ``None`` when singular."""
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(a)]
    R, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R[:n]]


def det(field: Field, a: Sequence[Sequence]):
    n = len(a)
    M = [list(r) for r in a]
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        inv = field.one / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def complete_basis(field: Field, vectors: Sequence[Sequence], n: int) -> list[list]:
    """Extend independent ``vectors`` to a basis of K^n with standard vectors."""
    basis = [list(v) for v in vectors]
    r = rank(field, basis) if basis else 0
    if r != len(basis):
        raise DomainError("vectors to complete are dependent")
    for i in range(n):
        e = [field.one if k == i else field.zero for k in range(n)]
        if rank(field, basis + [e]) > r:
            basis.append(e)
            r += 1
        if r == n:
            break
    return basis


# ----------------------------------------------------------------------------
# affine systems


@dataclass(frozen=True)
class AffineSolutionSpace:
    """Solution set ``particular + span(basis)``; ``particular is None`` means infeasible."""

    field: Field
    ambient_dim: int
    particular: tuple | None
    basis: tuple

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    @property
    def dim(self) -> int:
        return len(self.basis) if self.feasible else -1

    def point(self, params: Sequence) -> list:
        if not self.feasible:
            raise DomainError("infeasible system has no points")
        v = list(self.particular)
        for t, b in zip(params, self.basis):
            if t:
                v = [x + t * y for x, y in zip(v, b)]
        return v


INFEASIBLE = None


def solve_affine(equations: Iterable[tuple[Mapping[int, object] | Sequence, object]],
                 n: int, field: Field) -> AffineSolutionSpace:
    """Solve a system of linear equations ``sum_k a_k u_k = b``.

    Each equation is ``(coeffs, rhs)`` where ``coeffs`` is either a length-n
    sequence or a sparse mapping ``{index: coefficient}``.
    """
    rows = []
    for coeffs, rhs in equations:
        row = [field.zero] * (n + 1)
        if isinstance(coeffs, Mapping):
            for k, a in coeffs.items():
                row[k] = row[k] + field(a)
        else:
            if len(coeffs) != n:
                raise DomainError("equation length does not match unknown count")
            for k, a in enumerate(coeffs):
                row[k] = field(a)
        row[n] = field(rhs)
        if any(row):
            rows.append(row)
    if not rows:
        basis = tuple(tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n))
        return AffineSolutionSpace(field, n, tuple([field.zero] * n), basis)
    R, pivots = rref(field, rows)
    if n in pivots:
        return AffineSolutionSpace(field, n, INFEASIBLE, ())
    particular = [field.zero] * n
    for row_idx, pc in enumerate(pivots):
        particular[pc] = R[row_idx][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -R[row_idx][f]
        basis.append(tuple(v))
    return AffineSolutionSpace(field, n, tuple(particular), tuple(basis))
