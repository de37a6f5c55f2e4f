"""Quotient of free Manin symbols by the 2-term, 3-term (and star) relations.

The identification relations x + xS = 0 and x - x*star = 0 have coefficients
+-1 and are folded by a signed union-find; the genuine 3-term relations are
then eliminated by sparse exact-rational Gauss elimination with Markowitz
pivoting.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .p1 import p1_list, p1_normalize

DEFAULT_LEVEL_CAP = 10_000


class SpaceCapError(ValueError):
    pass


class SeparationError(ValueError):
    pass


# right action of 2x2 integer matrices on row vectors (c, d)
def _act(cd, m):
    c, d = cd
    return (c * m[0][0] + d * m[1][0], c * m[0][1] + d * m[1][1])


S_MAT = ((0, -1), (1, 0))
T_MAT = ((0, -1), (1, -1))       # order 3
T2_MAT = ((-1, 1), (-1, 0))


@dataclass
class ManinSymbolSpace:
    N: int
    sign: int                  # +1 plus quotient, -1 minus quotient, 0 full
    p1_reps: list              # list of (c, d)
    rep_index: dict            # (c, d) normalized -> index
    relation_basis: list       # per p1 index: dict basis_position -> Fraction
    basis: list                # p1 indices of the free generators
    dim: int = field(init=False)
    _p1_table: object = field(init=False, repr=False, compare=False,
                              default=None)

    def __post_init__(self):
        self.dim = len(self.basis)

    def p1_table(self):
        """Dense N x N table (c, d) -> symbol index (-1 for non-primitive).

        Built once by sweeping the unit orbit of every normalized
        representative; every primitive pair is the unit multiple of exactly
        one representative.
        """
        if self._p1_table is None:
            import numpy as np
            N = self.N
            T = np.full((N, N), -1, dtype=np.int32)
            units = np.array([u for u in range(1, N + 1)
                              if gcd(u, N) == 1], dtype=np.int64)
            for (c0, d0), i in self.rep_index.items():
                T[units * c0 % N, units * d0 % N] = i
            self._p1_table = T
        return self._p1_table

    def lookup(self, c, d):
        """Index of the symbol (c:d); None for non-primitive pairs."""
        N = self.N
        if N == 1:
            return self.rep_index[(0, 0)]
        i = int(self.p1_table()[c % N, d % N])
        return None if i < 0 else i

    def reduce(self, c, d):
        """Expression of (c:d) in the quotient basis, as {position: Fraction}."""
        i = self.lookup(c, d)
        return {} if i is None else self.relation_basis[i]


class _SignedUnionFind:
    """x_i = sign * x_root, with a dead flag for symbols forced to zero."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.dead = [False] * n

    def union(self, i, j, rel_sign):
        """Impose x_i = rel_sign * x_j."""
        ri, si = self.root_sign(i)
        rj, sj = self.root_sign(j)
        if ri == rj:
            if si != rel_sign * sj:
                self.dead[ri] = True
            return
        # attach rj under ri: x_rj = (si / (rel_sign*sj)) x_ri
        self.parent[rj] = ri
        self.sign[rj] = si * rel_sign * sj
        if self.dead[rj]:
            self.dead[ri] = True

    def root_sign(self, i):
        root = i
        s = 1
        while self.parent[root] != root:
            s *= self.sign[root]
            root = self.parent[root]
        # path compression
        j = i
        acc = s
        while self.parent[j] != j:
            nxt = self.parent[j]
            nsig = self.sign[j]
            self.parent[j] = root
            self.sign[j] = acc
            acc = acc * nsig  # sign from nxt to root
            j = nxt
        return root, s


def build_space(N, plus=True, level_cap=DEFAULT_LEVEL_CAP, sign=None):
    """The plus/minus/full quotient of Manin symbols for Gamma_0(N)."""
    if sign is None:
        sign = 1 if plus else 0
    if N < 1:
        raise ValueError("level must be positive")
    if N > level_cap:
        raise SpaceCapError("level %d exceeds cap %d" % (N, level_cap))
    reps = p1_list(N)
    rep_index = {r: i for i, r in enumerate(reps)}
    n = len(reps)

    def idx(cd):
        return rep_index[p1_normalize(N, *cd)]

    uf = _SignedUnionFind(n)
    for i, cd in enumerate(reps):
        uf.union(i, idx(_act(cd, S_MAT)), -1)
        if sign:
            c, d = cd
            uf.union(i, idx((-c, d)), sign)

    # 3-term relations on the surviving classes
    rows = []
    seen = set()
    for i, cd in enumerate(reps):
        j = idx(_act(cd, T_MAT))
        k = idx(_act(cd, T2_MAT))
        key = tuple(sorted((i, j, k)))
        if key in seen:
            continue
        seen.add(key)
        row = {}
        for t in (i, j, k):
            r, s = uf.root_sign(t)
            if uf.dead[r]:
                continue
            row[r] = row.get(r, Fraction(0)) + s
        row = {c: v for c, v in row.items() if v}
        if row:
            rows.append(row)

    roots = sorted({uf.root_sign(i)[0] for i in range(n)
                    if not uf.dead[uf.root_sign(i)[0]]})
    expressed = _eliminate(rows, roots)

    basis = [r for r in roots if r not in expressed]
    pos = {r: t for t, r in enumerate(basis)}

    # back-substitute to express every root purely in basis
    resolved = {}

    def resolve(r):
        if r in resolved:
            return resolved[r]
        if r not in expressed:
            out = {pos[r]: Fraction(1)}
        else:
            out = {}
            for c, v in expressed[r].items():
                for b, w in resolve(c).items():
                    out[b] = out.get(b, Fraction(0)) + v * w
            out = {b: w for b, w in out.items() if w}
        resolved[r] = out
        return out

    # iterative resolution to avoid deep recursion
    order = list(expressed)
    progress = True
    while order and progress:
        progress = False
        rest = []
        for r in order:
            if all(c in resolved or c not in expressed for c in expressed[r]):
                resolve(r)
                progress = True
            else:
                rest.append(r)
        order = rest
    assert not order, "cyclic elimination dependency"

    relation_basis = []
    for i in range(n):
        r, s = uf.root_sign(i)
        if uf.dead[r]:
            relation_basis.append({})
        else:
            relation_basis.append({b: s * w for b, w in resolve(r).items()})
    return ManinSymbolSpace(N, sign, reps, rep_index, relation_basis, basis)


def _eliminate(rows, variables):
    """Sparse exact elimination with Markowitz pivoting.

    Returns {var: expression} with expressions referring only to surviving
    variables (acyclic chains resolved by the caller).
    """
    rows = [dict(r) for r in rows]
    col_rows = {v: set() for v in variables}
    for ri, row in enumerate(rows):
        for c in row:
            col_rows[c].add(ri)
    active = set(range(len(rows)))
    expressed = {}
    while True:
        best = None
        for ri in active:
            row = rows[ri]
            if not row:
                continue
            rcount = len(row)
            for c, v in row.items():
                score = (rcount - 1) * (len(col_rows[c]) - 1)
                if best is None or score < best[0]:
                    best = (score, ri, c)
            if best and best[0] == 0:
                break
        if best is None:
            break
        _, ri, c = best
        row = rows[ri]
        piv = row[c]
        expr = {c2: -v / piv for c2, v in row.items() if c2 != c}
        expressed[c] = expr
        active.discard(ri)
        for c2 in row:
            col_rows[c2].discard(ri)
        for rj in list(col_rows[c]):
            other = rows[rj]
            coef = other.pop(c)
            col_rows[c].discard(rj)
            for c2, v in expr.items():
                nv = other.get(c2, Fraction(0)) + coef * v
                if nv:
                    if c2 not in other:
                        col_rows[c2].add(rj)
                    other[c2] = nv
                elif c2 in other:
                    del other[c2]
                    col_rows[c2].discard(rj)
            if not other:
                active.discard(rj)
        row.clear()
    # substitute chains inside expressions so each refers only to free vars
    # (done lazily by caller's resolve); here ensure no expression mentions an
    # expressed var that was eliminated *later* in a cycle -- elimination order
    # guarantees acyclicity because each expressed var is removed from all rows.
    return expressed
