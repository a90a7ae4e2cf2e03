"""Correlated-equilibrium polytopes: constraint systems and exact vertex
enumeration.

Vertex enumeration is a double-description-style incremental method seeded
from the 0/1 bounding box (all systems handled here live in probability
coordinates), with vertex adjacency decided by exact algebraic rank.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import ZERO, ONE, dot, rank
from .simplex import LinearSystem


class UnboundedPolytopeError(ValueError):
    """The input was not confined to the unit box, so the enumeration cannot
    certify the vertex list."""


@dataclass(frozen=True)
class SymCEIndex:
    """Bijection between upper-triangle matrix coordinates (i <= j) and the
    flat variables of the symmetric-CE system."""

    m: int

    @property
    def pairs(self):
        return [(i, j) for i in range(self.m) for j in range(i, self.m)]

    @property
    def size(self):
        return self.m * (self.m + 1) // 2

    def idx(self, i, j):
        if i > j:
            i, j = j, i
        return i * self.m - i * (i - 1) // 2 + (j - i)

    def pair(self, k):
        return self.pairs[k]

    def multiplicity(self, k):
        i, j = self.pair(k)
        return 1 if i == j else 2

    def vec_to_matrix(self, v):
        P = [[ZERO] * self.m for _ in range(self.m)]
        for k, (i, j) in enumerate(self.pairs):
            P[i][j] = v[k]
            P[j][i] = v[k]
        return tuple(tuple(row) for row in P)

    def matrix_to_vec(self, P):
        return tuple(P[i][j] for (i, j) in self.pairs)


def ce_system(game, symmetric_only=False):
    """Linear system cutting out ce(game), or ce_sym(game) in
    upper-triangle coordinates when symmetric_only is set.

    Incentive rows say that switching every recommendation s to t cannot
    help; for the symmetric system only the row player's rows are emitted
    (the column player's are redundant by symmetry of the matrix variable).
    """
    m = game.m
    A = game.A
    if symmetric_only:
        index = SymCEIndex(m)
        n = index.size
        ineqs = []
        for s in range(m):
            for t in range(m):
                if s == t:
                    continue
                coeffs = [ZERO] * n
                for j in range(m):
                    coeffs[index.idx(s, j)] += A[t][j] - A[s][j]
                ineqs.append((coeffs, ZERO))
        for k in range(n):
            coeffs = [ZERO] * n
            coeffs[k] = -ONE
            ineqs.append((coeffs, ZERO))
        norm = [Fraction(index.multiplicity(k)) for k in range(n)]
        return LinearSystem(
            num_vars=n, inequalities=ineqs, equalities=[(norm, ONE)]
        )

    n = m * m
    flat = lambda i, j: i * m + j
    ineqs = []
    for s in range(m):
        for t in range(m):
            if s == t:
                continue
            # row player: recommendation s, deviation t
            coeffs = [ZERO] * n
            for j in range(m):
                coeffs[flat(s, j)] += A[t][j] - A[s][j]
            ineqs.append((coeffs, ZERO))
            # column player (payoffs A^T): recommendation s, deviation t
            coeffs = [ZERO] * n
            for i in range(m):
                coeffs[flat(i, s)] += A[t][i] - A[s][i]
            ineqs.append((coeffs, ZERO))
    for k in range(n):
        coeffs = [ZERO] * n
        coeffs[k] = -ONE
        ineqs.append((coeffs, ZERO))
    return LinearSystem(
        num_vars=n,
        inequalities=ineqs,
        equalities=[([ONE] * n, ONE)],
    )


def enumerate_vertices(system, max_box_dim=14):
    """All vertices of the (bounded) polyhedron of `system`, exact and
    lexicographically sorted.

    The variables must live inside the unit box [0, 1]^n; a vertex whose
    determination relies on the box rather than the system raises
    UnboundedPolytopeError.
    """
    n = system.num_vars
    if n > max_box_dim:
        raise ValueError(f"dimension {n} exceeds enumeration budget")

    # constraint rows a.v <= b; the first 2n are the bounding box
    rows = []
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        rows.append((list(e), ONE))        # v_j <= 1
        e = [ZERO] * n
        e[j] = -ONE
        rows.append((list(e), ZERO))       # -v_j <= 0
    n_box = len(rows)
    cut_rows = []
    for a, b in system.equalities:
        cut_rows.append((list(a), b))
        cut_rows.append(([-x for x in a], -b))
    for a, b in system.inequalities:
        cut_rows.append((list(a), b))
    rows.extend(cut_rows)

    # seed: box vertices with their tight box facets
    verts = {}
    for bits in itertools.product((ZERO, ONE), repeat=n):
        tight = frozenset(
            2 * j + (0 if bits[j] == ONE else 1) for j in range(n)
        )
        verts[bits] = set(tight)

    def adjacent(tu, tw):
        common = tu & tw
        if len(common) < n - 1:
            return False
        return rank([rows[i][0] for i in common]) == n - 1

    for idx in range(n_box, len(rows)):
        a, b = rows[idx]
        vals = {pt: dot(a, pt) - b for pt in verts}
        drop = [pt for pt, v in vals.items() if v > 0]
        if not drop:
            for pt, v in vals.items():
                if v == 0:
                    verts[pt].add(idx)
            continue
        keep = [pt for pt, v in vals.items() if v <= 0]
        new_pts = {}
        for u in drop:
            vu = vals[u]
            tu = verts[u]
            for w in keep:
                vw = vals[w]
                if vw == 0:
                    continue
                if not adjacent(frozenset(tu), frozenset(verts[w])):
                    continue
                t = vu / (vu - vw)
                z = tuple(u[j] + t * (w[j] - u[j]) for j in range(n))
                tz = (tu & verts[w]) | {idx}
                if z in new_pts:
                    new_pts[z] |= tz
                else:
                    new_pts[z] = set(tz)
        for pt in drop:
            del verts[pt]
        for pt, v in vals.items():
            if v == 0 and pt in verts:
                verts[pt].add(idx)
        for z, tz in new_pts.items():
            if z in verts:
                verts[z] |= tz
            else:
                verts[z] = tz

    result = []
    for pt, tight in verts.items():
        sys_rows = [rows[i][0] for i in tight if i >= n_box]
        if rank(sys_rows) < n:
            raise UnboundedPolytopeError(
                "vertex pinned by the bounding box; polyhedron may be "
                "unbounded or exceed the unit box"
            )
        result.append(pt)
    result.sort()
    return result
