"""Search an affine family of morphisms for an invertible member.

Invertibility of a morphism between P-sums (or S-sums) depends only on a few
"unit" coordinates: the x^0 (identity) coefficients between equal summands,
grouped into one square block per isomorphism class.  The test is the
nonvanishing of a product of block determinants, a polynomial of degree at
most ``N`` (the total block size) in each parameter.  We therefore:

* project the family onto the unit coordinates and keep an independent set
  of ``r`` directions;
* over GF(p), enumerate all ``p^r`` points when that is within the cap;
* over Q, evaluate on the grid ``{0..N}^r`` when it fits the cap, which is a
  complete certificate because a polynomial of degree <= N in each variable
  vanishing on such a grid is zero;
* otherwise draw seeded random samples, which can only ever find a witness.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .exactalg import AffineSolutionSpace, Field, det, rref

DEFAULT_CAP = 10**6
DEFAULT_SAMPLES = 64


@dataclass
class SearchResult:
    status: str  # "found", "none" or "inconclusive"
    vector: list | None
    method: str  # "trivial", "exhaustive", "grid", "sampled", "infeasible"
    points: int
    unit_rank: int


def blocks_invertible(field: Field, vec: Sequence, blocks: Sequence[Sequence[Sequence[int]]]) -> bool:
    """True iff every index block, read off ``vec``, is an invertible matrix."""
    for b in blocks:
        m = [[vec[i] for i in row] for row in b]
        if not det(field, m):
            return False
    return True


def find_invertible(space: AffineSolutionSpace, blocks: Sequence[Sequence[Sequence[int]]],
                    verify: Callable[[list], bool] | None = None,
                    cap: int = DEFAULT_CAP, seed: int = 0,
                    samples: int = DEFAULT_SAMPLES) -> SearchResult:
    """Look for ``v`` in ``space`` whose unit ``blocks`` are all invertible.

    ``blocks`` lists square matrices of coordinate indices.  ``verify`` is an
    optional exact check applied to any candidate before it is reported.
    """
    F = space.field
    if not space.feasible:
        return SearchResult("none", None, "infeasible", 0, 0)
    coords = sorted({i for b in blocks for row in b for i in row})
    N = sum(len(b) for b in blocks)

    # independent directions of the projected family
    proj = [[vec[i] for i in coords] for vec in space.basis]
    dirs: list[Sequence] = []
    if proj:
        # columns of the transposed projection give which basis vectors matter
        _, piv = rref(F, [list(col) for col in zip(*proj)])
        dirs = [space.basis[k] for k in piv]
    r = len(dirs)
    base = list(space.particular)

    # the block test only needs the unit coordinates
    local = {c: a for a, c in enumerate(coords)}
    lblocks = [[[local[i] for i in row] for row in b] for b in blocks]
    base_u = [base[i] for i in coords]
    dirs_u = [[d[i] for i in coords] for d in dirs]

    def point(params, b=base, ds=dirs):
        v = list(b)
        for t, d in zip(params, ds):
            if t:
                v = [x + t * y for x, y in zip(v, d)]
        return v

    def accept(params):
        if not blocks_invertible(F, point(params, base_u, dirs_u), lblocks):
            return None
        v = point(params)
        if verify is not None and not verify(v):
            raise AssertionError("unit blocks invertible but exact verification failed")
        return v

    if r == 0:
        v = accept(())
        return SearchResult("found" if v is not None else "none", v, "trivial", 1, 0)

    if F.is_finite and F.p ** r <= cap:
        values, method = F.elements(), "exhaustive"
    elif not F.is_finite and (N + 1) ** r <= cap:
        values, method = [F(c) for c in range(N + 1)], "grid"
    else:
        values, method = None, "sampled"

    count = 0
    if values is not None:
        for params in itertools.product(values, repeat=r):
            count += 1
            v = accept(params)
            if v is not None:
                return SearchResult("found", v, method, count, r)
        return SearchResult("none", None, method, count, r)

    rng = random.Random(seed)
    for _ in range(samples):
        count += 1
        v = accept([F.random(rng, bound=max(3, N)) for _ in range(r)])
        if v is not None:
            return SearchResult("found", v, method, count, r)
    return SearchResult("inconclusive", None, method, count, r)
