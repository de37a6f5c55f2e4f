"""Hecke operators on Manin symbols and eigen-functional isolation.

T_ell acts through Merel's matrices {(a,b;c,d) : ad-bc = ell, a>b>=0,
d>c>=0}.  Eigen-isolation runs multimodularly (int64 linear algebra modulo
31-bit primes), and the resulting functional is reconstructed to an exact
integer table certified by re-checking every defining relation in Z.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .space import SeparationError, _act, S_MAT, T_MAT, T2_MAT

# 31-bit primes for multimodular linear algebra (products of two residues
# stay below 2^62, inside int64)
MOD_PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
              2147483549, 2147483543, 2147483497, 2147483489, 2147483477)


@lru_cache(maxsize=None)
def hecke_matrices(n):
    """Merel's matrices of determinant n: a > b >= 0, d > c >= 0."""
    out = []
    # bc = 0 cases: ad = n
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        for c in range(d):
            out.append(((a, 0), (c, d)))
        for b in range(1, a):
            out.append(((a, b), (0, d)))
    # b, c >= 1: for fixed (a, b), d is confined to a short interval by
    # c >= 1 (ad - n >= b) and c < d (d(a-b) < n)
    for a in range(2, n):
        for b in range(1, a):
            dmin = (n + b + a - 1) // a
            dmax = (n - 1) // (a - b)
            for d in range(dmin, dmax + 1):
                k = a * d - n
                if k % b == 0:
                    out.append(((a, b), (k // b, d)))
    return tuple(out)


def hecke_action(space, ell):
    """Exact matrix of T_ell on the quotient basis (columns = images)."""
    dim = space.dim
    mats = hecke_matrices(ell)
    cols = []
    for b in space.basis:
        cd = space.p1_reps[b]
        acc = {}
        for m in mats:
            for pos, v in space.reduce(*_act(cd, m)).items():
                acc[pos] = acc.get(pos, Fraction(0)) + v
        cols.append(acc)
    return [[cols[j].get(i, Fraction(0)) for j in range(dim)]
            for i in range(dim)]


# ---------------------------------------------------------------------------
# modular linear algebra

def _reduction_matrix_mod(space, p):
    """n x dim matrix of the quotient map, mod p (cached on the space)."""
    cache = getattr(space, "_red_mod_cache", None)
    if cache is None:
        cache = {}
        space._red_mod_cache = cache
    if p in cache:
        return cache[p]
    n = len(space.p1_reps)
    R = np.zeros((n, space.dim), dtype=np.int64)
    for i, expr in enumerate(space.relation_basis):
        for pos, v in expr.items():
            R[i, pos] = v.numerator * pow(v.denominator, -1, p) % p
    cache[p] = R
    return R


def _hecke_mod(space, ell, p, R):
    dim = space.dim
    N = space.N
    M = np.zeros((dim, dim), dtype=np.int64)
    mats = np.array(hecke_matrices(ell), dtype=np.int64)  # (k, 2, 2)
    T = space.p1_table()
    cds = np.array([space.p1_reps[b] for b in space.basis], dtype=np.int64)
    # right action on row vectors: (c, d) . m, broadcast over all matrices
    c_img = (cds[:, 0:1] * mats[None, :, 0, 0]
             + cds[:, 1:2] * mats[None, :, 1, 0]) % N
    d_img = (cds[:, 0:1] * mats[None, :, 0, 1]
             + cds[:, 1:2] * mats[None, :, 1, 1]) % N
    idx = T[c_img, d_img]                                 # (dim, k)
    for j in range(dim):
        rows = idx[j][idx[j] >= 0]
        if rows.size:
            # entries are < p < 2^31 and len(rows) < 2^11, so the sum
            # stays inside int64
            M[:, j] = R[rows].sum(axis=0) % p
    return M


def _rref_mod(A, p):
    """Row-reduce A mod p in place; returns list of pivot columns."""
    A %= p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        mask = A[:, c].copy()
        mask[r] = 0
        A -= np.outer(mask, A[r])
        A %= p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def _kernel_mod(A, p):
    """Basis of the right kernel of A mod p, as columns of an int64 array."""
    B = A.copy() % p
    pivots = _rref_mod(B, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        out[fc, k] = 1
        for r, pc in enumerate(pivots):
            out[pc, k] = (-B[r, fc]) % p
    return out


def sturm_bound(N):
    """Index/6 bound after which Hecke eigenvalues determine the form."""
    index = N
    n = N
    q = 2
    while q * q <= n:
        if n % q == 0:
            index = index // q * (q + 1)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        index = index // n * (n + 1)
    return index // 6 + 1


def _dual_eigenvector_mod(space, ap_func, p, R, label="?"):
    """1-dim kernel of (T_ell^T - a_ell) for successive good ell, mod p."""
    N = space.N
    K = None  # columns span current kernel
    bound = sturm_bound(N)
    ell = 2
    used = []
    while True:
        if ell > bound:
            raise SeparationError(
                "eigenspace not 1-dimensional at Sturm bound for %s" % label)
        if N % ell == 0:
            ell = _next_prime(ell)
            continue
        a = ap_func(ell) % p
        M = _hecke_mod(space, ell, p, R)
        A = (M.T - a * np.eye(space.dim, dtype=np.int64)) % p
        if K is None:
            K = _kernel_mod(A, p)
        else:
            # restrict to current kernel: solve (A K) x = 0
            AK = _matmul_mod(A, K, p)
            small = _kernel_mod(AK, p)
            K = _matmul_mod(K, small, p)
        used.append(ell)
        if K.shape[1] == 0:
            raise SeparationError("empty eigenspace for %s mod %d" % (label, p))
        if K.shape[1] == 1:
            return K[:, 0] % p, used
        ell = _next_prime(ell)


def _matmul_mod(A, B, p):
    # block to keep intermediate sums within int64
    max_terms = (1 << 62) // (p * p)
    n = A.shape[1]
    if n <= max_terms:
        return A @ B % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, n, max_terms):
        out = (out + A[:, s:s + max_terms] @ B[s:s + max_terms]) % p
    return out


def _next_prime(q):
    q += 1
    while any(q % r == 0 for r in range(2, isqrt(q) + 1)):
        q += 1
    return q


# ---------------------------------------------------------------------------
# exact reconstruction

def _rational_reconstruct(c, m):
    """x = a/b with c*b = a mod m, |a|, b <= sqrt(m/2); None if impossible."""
    bound = isqrt(m // 2)
    r0, r1 = m, c % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, s1) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return Fraction(r1, s1)


def _crt_pair(a1, m1, a2, m2):
    d = (a2 - a1) * pow(m1, -1, m2) % m2
    return a1 + m1 * d, m1 * m2


def isolate_symbol(space, record, primes=MOD_PRIMES):
    """Exact integer eigen-functional table attached to a curve record.

    Returns (table, used_ells): table[i] is the value at space.p1_reps[i] of
    the Hecke eigen-functional, scaled to content 1 and certified by exact
    re-verification of every relation and one Hecke eigen-identity.
    """
    return isolate_table(space, record.ap, label=record.label, primes=primes)


def isolate_table(space, ap_func, label="?", primes=MOD_PRIMES, seed=None):
    """As isolate_symbol, but driven by an eigenvalue function ell -> a_ell.

    `seed`, if given, is a (p, w) pair with w a known dual eigenvector mod
    p (e.g. from the newform search), which skips recomputing it for that
    prime.  Reconstruction is attempted after every prime; a premature
    reconstruction can only fail the exact certification, never pass it.
    """
    n = len(space.p1_reps)
    acc = None
    mod = 1
    used = None
    anchor = None
    for p in primes:
        R = _reduction_matrix_mod(space, p)
        if seed is not None and p == seed[0]:
            w = seed[1] % p
            if used is None:
                ell = 2
                while space.N % ell == 0:
                    ell = _next_prime(ell)
                used = [ell]
        else:
            w, used = _dual_eigenvector_mod(space, ap_func, p, R, label=label)
        table_p = _matmul_mod(R, w.reshape(-1, 1), p)[:, 0]
        if anchor is None:
            # scale anchor: first nonzero entry (fixed across all primes)
            anchor = next((i for i in range(n) if table_p[i]), None)
            if anchor is None:
                raise SeparationError("zero eigen-functional for %s" % label)
        if not table_p[anchor]:
            continue  # unlucky prime for the chosen anchor; skip it
        table_p = table_p * pow(int(table_p[anchor]), -1, p) % p
        if acc is None:
            acc, mod = [int(x) for x in table_p], p
        else:
            acc = [_crt_pair(a, mod, int(b), p)[0] for a, b in zip(acc, table_p)]
            mod *= p
        vals = [_rational_reconstruct(a, mod) for a in acc]
        if all(v is not None for v in vals):
            table = _clear_to_content_one(vals)
            if _certify_table(space, table, ap_func, used):
                return table, used
    raise SeparationError("rational reconstruction failed for %s" % label)


def _clear_to_content_one(vals):
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _certify_table(space, table, ap_func, used_ells):
    """Exact check: relations + star + one Hecke eigen-identity over Z."""
    ell = used_ells[0]
    a = ap_func(ell)
    mats = hecke_matrices(ell)
    N = space.N
    big = max(abs(t) for t in table)
    if N > 1 and big * (len(mats) + 3) < 1 << 62:
        # int64-vectorized path (sums provably stay inside int64)
        T = space.p1_table()
        tab = np.asarray(table, dtype=np.int64)
        cds = np.asarray(space.p1_reps, dtype=np.int64)

        def vals(mat_arr):
            c = (cds[:, 0:1] * mat_arr[None, :, 0, 0]
                 + cds[:, 1:2] * mat_arr[None, :, 1, 0]) % N
            d = (cds[:, 0:1] * mat_arr[None, :, 0, 1]
                 + cds[:, 1:2] * mat_arr[None, :, 1, 1]) % N
            idx = T[c, d]
            return np.where(idx >= 0, tab[idx], 0)

        st = vals(np.array([S_MAT, T_MAT, T2_MAT], dtype=np.int64))
        if (tab + st[:, 0]).any() or (tab + st[:, 1] + st[:, 2]).any():
            return False
        if space.sign:
            neg = T[(-cds[:, 0]) % N, cds[:, 1] % N]
            if (tab != space.sign * np.where(neg >= 0, tab[neg], 0)).any():
                return False
        hsum = vals(np.asarray(mats, dtype=np.int64)).sum(axis=1)
        return not (hsum != a * tab).any()

    def val(cd):
        i = space.lookup(*cd)
        return 0 if i is None else table[i]

    for i, cd in enumerate(space.p1_reps):
        if table[i] + val(_act(cd, S_MAT)) != 0:
            return False
        if table[i] + val(_act(cd, T_MAT)) + val(_act(cd, T2_MAT)) != 0:
            return False
        if space.sign and table[i] != space.sign * val((-cd[0], cd[1])):
            return False
    for i, cd in enumerate(space.p1_reps):
        if sum(val(_act(cd, m)) for m in mats) != a * table[i]:
            return False
    return True
