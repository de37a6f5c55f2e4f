"""Enumeration of rational newforms at a level via Manin-symbol eigenspaces.

The search runs modulo a 31-bit prime: a depth-first branch over integer
Hecke eigenvalues inside the Hasse window, pruning empty kernels.  Any
1-dimensional simultaneous eigenspace is necessarily new (oldform eigen-
systems occur with multiplicity >= 2 for every good T_ell) and is then
reconstructed and certified exactly over Z by `isolate_table`.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from ..modsym.eigen import (
    MOD_PRIMES, _hecke_mod, _kernel_mod, _matmul_mod, _next_prime,
    _reduction_matrix_mod, hecke_matrices, isolate_table,
)
from ..modsym.space import SeparationError, _act
from ..modsym.symbol import PlusModularSymbol

SEARCH_ELL_CAP = 200  # kernels still >1-dimensional past this are oldforms


def table_ap(space, table, ell):
    """Exact Hecke eigenvalue of a certified table at a good prime ell.

    Evaluated through the path identity

        a_p * lambda{oo -> x} = lambda{oo -> p x}
                                + sum_{b mod p} lambda{oo -> (x + b)/p},

    which needs O(ell log ell) table lookups (summing Merel's matrices
    against a symbol takes O(ell^2) time to enumerate them).
    """
    assert space.N % ell != 0
    sym = PlusModularSymbol(space.N, "?", tuple(table), Fraction(1), space)
    for m in range(1, 64):
        for a in range(m):
            if gcd(a, m) != 1 and m != 1:
                continue
            r = sym.raw(a, m)
            if r == 0:
                continue
            s = sym.raw(ell * a, m) + sum(sym.raw(a + b * m, ell * m)
                                          for b in range(ell))
            q, rem = divmod(s, r)
            assert rem == 0, "non-integral eigenvalue at ell=%d" % ell
            return q
    raise SeparationError("zero table")


def ap_batch(space, table, ells):
    """Exact eigenvalues at many good primes via vectorized path sums.

    Same path identity as `table_ap`, but the b-sum for each ell is
    evaluated with numpy in continued-fraction lockstep, which matters when
    twisted L-series need a_p for every prime up to a few thousand.
    """
    if max(abs(t) for t in table) > 1 << 40:
        return {ell: table_ap(space, table, ell) for ell in ells}
    sym = PlusModularSymbol(space.N, "?", tuple(table), Fraction(1), space)
    base = None
    for m in range(1, 64):
        for a in range(m):
            if gcd(a, m) != 1 and m != 1:
                continue
            if sym.raw(a, m):
                base = (a, m)
                break
        if base:
            break
    if base is None:
        raise SeparationError("zero table")
    a, m = base
    r = sym.raw(a, m)
    tab = np.asarray(table, dtype=np.int64)
    out = {}
    for ell in ells:
        assert space.N % ell != 0
        nums = a + m * np.arange(ell, dtype=np.int64)
        s = sym.raw(ell * a, m) + _path_sum_batch(space, tab, nums, ell * m)
        q, rem = divmod(s, r)
        assert rem == 0, "non-integral eigenvalue at ell=%d" % ell
        out[ell] = q
    return out


def _path_sum_batch(space, tab, nums, den):
    """Sum over i of the integer path sum {oo -> nums[i]/den} against tab.

    Mirrors PlusModularSymbol.raw: walk the continued fractions of all
    nums[i]/den in lockstep, accumulating the table value at each pair of
    consecutive convergent denominators (q_k, (-1)^(k-1) q_{k-1})."""
    N = space.N
    T = space.p1_table()
    x = nums % den
    y = np.full_like(x, den)
    q = x // y
    x, y = y.copy(), x - q * y
    q0 = np.zeros_like(x)
    q1 = np.ones_like(x)
    sign = -1
    idx = T[q1 % N, (sign * q0) % N]
    total = int(tab[idx[idx >= 0]].sum())
    active = y > 0
    while active.any():
        sign = -sign
        q = np.zeros_like(x)
        np.floor_divide(x, y, out=q, where=active)
        q1, q0 = np.where(active, q * q1 + q0, q1), np.where(active, q1, q0)
        x, y = np.where(active, y, x), np.where(active, x - q * y, y)
        idx = T[q1 % N, (sign * q0) % N]
        good = active & (idx >= 0)
        total += int(tab[idx[good]].sum())
        active &= y > 0
    return total


def rational_newforms(space, primes=MOD_PRIMES, oldforms=()):
    """All rational newform eigen-tables on the given quotient space.

    Returns a list of exact integer tables (content 1), one per rational
    newform of level space.N, in a deterministic order.

    `oldforms` is an optional list of (ap_dict, multiplicity) pairs, one
    per rational newform at a proper divisor level M | N (multiplicity =
    number of divisors of N/M, the dimension its eigensystem contributes
    at level N).  A branch whose dimension equals the total multiplicity
    of the still-consistent oldform systems contains no newform and is
    pruned: a hidden newform (or a second oldform system) sharing the
    eigenvalues so far would force a strictly larger dimension, and mod-p
    degeneracy can only enlarge eigenspaces, never shrink them.
    """
    N = space.N
    if space.dim == 0:
        return []
    p = primes[0]
    R = _reduction_matrix_mod(space, p)
    hecke_cache = {}

    def hecke_T(ell):
        if ell not in hecke_cache:
            hecke_cache[ell] = _hecke_mod(space, ell, p, R).T.copy()
        return hecke_cache[ell]

    systems = []  # (aps dict, dual eigenvector mod p)

    def dfs(K, aps, ell_iter_pos, olds):
        ells = []
        ell = 2
        while len(ells) <= ell_iter_pos:
            if N % ell:
                ells.append(ell)
            ell = _next_prime(ell)
        ell = ells[-1]
        if ell > SEARCH_ELL_CAP:
            return
        A = hecke_T(ell)
        AK = _matmul_mod(A, K, p)
        hasse = isqrt(4 * ell)
        for a in range(-hasse, hasse + 1):
            B = (AK - a * K) % p
            small = _kernel_mod(B, p)
            if small.shape[1] == 0:
                continue
            K2 = _matmul_mod(K, small, p)
            aps2 = dict(aps)
            aps2[ell] = a
            olds2 = [(o, m) for o, m in olds if o.get(ell) == a]
            if olds2 and sum(m for _, m in olds2) == K2.shape[1]:
                continue  # pure oldform space
            if K2.shape[1] == 1:
                systems.append((aps2, K2[:, 0] % p))
            else:
                dfs(K2, aps2, ell_iter_pos + 1, olds2)

    dfs(np.eye(space.dim, dtype=np.int64), {}, 0, list(oldforms))

    tables = []
    for aps, w in systems:
        table_mod_p = _matmul_mod(R, w.reshape(-1, 1), p)[:, 0]

        def ap_func(ell, _aps=aps, _t=table_mod_p):
            if ell in _aps:
                return _aps[ell]
            a = _mod_eigenvalue(space, _t, ell, p)
            _aps[ell] = a
            return a

        try:
            table, _ = isolate_table(space, ap_func,
                                     label="level %d newform" % N,
                                     primes=primes, seed=(p, w))
        except SeparationError:
            continue  # mod-p artifact, not a rational eigensystem
        if table not in tables:
            tables.append(table)
    tables.sort(key=lambda t: _sort_key(space, t))
    return tables


def _mod_eigenvalue(space, table_mod_p, ell, p):
    """Integer a_ell recovered from the mod-p table via the Hasse bound."""
    mats = hecke_matrices(ell)
    for i, cd in enumerate(space.p1_reps):
        t = int(table_mod_p[i])
        if t == 0:
            continue
        s = sum(int(table_mod_p[j]) for j in
                (space.lookup(*_act(cd, m)) for m in mats) if j is not None)
        a = s * pow(t, -1, p) % p
        if a > p // 2:
            a -= p
        assert a * a <= 4 * ell, "eigenvalue %d out of Hasse range at %d" % (a, ell)
        return a
    raise SeparationError("zero mod-p table")


def _sort_key(space, table):
    key = []
    ell = 2
    while len(key) < 6:
        if space.N % ell:
            key.append(table_ap(space, table, ell))
        ell = _next_prime(ell)
    return tuple(key)
