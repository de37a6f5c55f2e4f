"""Recovery of the elliptic curve attached to a rational newform.

Real and imaginary period units are measured from exact twisted sums of the
plus and minus eigen-tables against numerically computed twisted L-values.
Small rational multiples of these units span the candidate period lattices;
c4 = 12 g2 and c6 = 216 g3 of a candidate lattice are rounded to integers
and the resulting curve is verified exactly (conductor and a_ell's).
"""

from bisect import bisect_left, bisect_right
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import mpmath as mp

from sympy import primerange

from ..curves import (
    SingularCurveError, all_local_data, an_coefficients, conductor,
    minimal_model,
)
from ..curves.weierstrass import curve_from_c_invariants
from ..modsym.symbol import PlusModularSymbol
from ..modsym.twist import (
    fundamental_discs, kronecker, twist_terms, twisted_l_value,
)
from .newforms import ap_batch, table_ap

_SMALL_RATIONALS = sorted(
    {Fraction(a, b) for a in range(1, 9) for b in range(1, 9)},
    key=lambda r: (max(r.numerator, r.denominator), r))

_RATIONAL_PAIRS = sorted(
    ((r1, r2) for r1 in _SMALL_RATIONALS for r2 in _SMALL_RATIONALS),
    key=lambda p: (max(p[0].numerator, p[0].denominator,
                       p[1].numerator, p[1].denominator), p))


class RecoveryError(ValueError):
    pass


def _path_sum(space, table, a, b):
    sym = PlusModularSymbol(space.N, "?", tuple(table), Fraction(1), space)
    return sym.raw(a, b)


def _twist_unit(space, table, an_provider, negative):
    """sqrt(|D|) * |L(f, chi_D, 1)| / |twisted raw sum| for the first
    nonvanishing fundamental twist of the requested parity."""
    N = space.N
    for D in fundamental_discs(negative=negative):
        m = abs(D)
        if gcd(m, N) != 1:
            continue
        raw = sum(kronecker(D, a) * _path_sum(space, table, a, m)
                  for a in range(m) if gcd(a, m) == 1) if m > 1 \
            else _path_sum(space, table, 0, 1)
        if raw == 0:
            continue
        an = an_provider(twist_terms(N, D))
        lchi = twisted_l_value(an, N, D)
        if lchi is None:
            raise RecoveryError(
                "nonzero twisted sum with odd sign at level %d, D=%d" % (N, D))
        with mp.workdps(30):
            return float(mp.sqrt(m) * abs(lchi) / abs(raw))
    raise RecoveryError("no nonvanishing %s twist at level %d"
                        % ("odd" if negative else "even", N))


def _lattice_c_invariants(w1, w2im, rectangular, _cache={}):
    """(c4, c6) floats for Z*w1 + Z*w2, w2 = i*w2im or (w1 + i*w2im)/2."""
    with mp.workdps(30):
        w1 = mp.mpf(w1)
        tau = (mp.mpc(0, w2im) / w1) if rectangular \
            else (mp.mpc(w1, w2im) / (2 * w1))
        if tau.imag < 0.004:
            # |q| > 0.975: the Eisenstein series no longer converges
            # usefully; such lattices have |disc| far beyond any curve of
            # moderate conductor
            return None
        key = (rectangular, round(float(tau.imag), 12))
        if key in _cache:
            e4, e6 = _cache[key]
        else:
            e4, e6 = _eisenstein_pair(mp.exp(2j * mp.pi * tau))
            _cache[key] = (e4, e6)
        c4 = (2 * mp.pi / w1) ** 4 * e4
        c6 = (2 * mp.pi / w1) ** 6 * e6
        if abs(c4.imag) > 1e-8 * (1 + abs(c4)) or abs(c6.imag) > 1e-8 * (1 + abs(c6)):
            return None
        return float(c4.real), float(c6.real)


def _eisenstein_pair(q):
    """(E4, E6) at nome q, by incremental powers."""
    s4 = mp.mpf(0)
    s6 = mp.mpf(0)
    qn = mp.mpf(1)
    for n in range(1, 20001):
        qn = qn * q
        t = qn / (1 - qn)
        n3 = n ** 3
        s4 += n3 * t
        s6 += n3 * n * n * t
        if n3 * n * n * abs(qn) < mp.mpf("1e-34"):
            break
    return 1 + 240 * s4, 1 - 504 * s6


def curve_from_newform(plus_space, plus_table, minus_space, minus_table,
                       an_provider=None):
    """The minimal model whose Neron lattice matches the newform's periods.

    an_provider(terms) must return exact a_n coefficients of the newform up
    to `terms` (used for twisted L-values); defaults to eigenvalue expansion
    from the plus table.
    """
    N = plus_space.N
    if an_provider is None:
        an_provider = _an_provider_from_table(plus_space, plus_table)
    x_re = _twist_unit(plus_space, plus_table, an_provider, negative=False)
    x_im = _twist_unit(minus_space, minus_table, an_provider, negative=True)
    bad_primes = _prime_tuple(N)

    checked = set()
    for r1, r2 in _RATIONAL_PAIRS:
        w1 = x_re * float(r1)
        w2im = x_im * float(r2)
        for rect in (True, False):
            res = _lattice_c_invariants(w1, w2im, rect)
            if res is None:
                continue
            c4f, c6f = res
            for c4 in _c4_candidates(c4f):
                for c6 in _c6_candidates(c4, c6f, bad_primes):
                    if (c4, c6) in checked:
                        continue
                    checked.add((c4, c6))
                    model = _verified_curve(c4, c6, N, plus_space, plus_table)
                    if model is not None:
                        return model
    raise RecoveryError("no integral lattice found for level %d" % N)


def _prime_tuple(N):
    out = []
    n = N
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _c4_candidates(c4f):
    """Integers within the float-error window around c4f.

    The period unit carries a relative error of at most ~3e-8 (observed
    ~1e-9), entering c4 to the 4th power; beyond the cap the float cannot
    pin down an integer and no curve of moderate conductor lives there."""
    err = int(1.2e-7 * abs(c4f)) + 2
    if err > 64:
        return []
    c0 = round(c4f)
    return [c0 + d for d in sorted(range(-err, err + 1), key=abs)]


def _c6_candidates(c4, c6f, primes):
    """Exact c6 solutions near c6f: the discriminant (c4^3 - c6^2)/1728 of
    a conductor-N curve is supported on the primes of N, so enumerate
    N-smooth discriminants in the float-error window and take integer
    square roots.  This sidesteps the float resolution limit on c6, whose
    absolute error grows as ~6 * (unit relative error) * |c6|."""
    if abs(c6f) > 1e14:
        # far beyond any minimal model of moderate conductor; a junk
        # lattice this size would force a huge smooth enumeration
        return []
    err = int(2e-7 * abs(c6f)) + 8
    c0 = round(c6f)
    lo, hi = c0 - err, c0 + err
    cube = c4 ** 3
    s_hi = max(lo * lo, hi * hi)
    s_lo = 0 if lo <= 0 <= hi else min(lo * lo, hi * hi)
    d_lo = -((s_hi - cube) // 1728)   # ceil((cube - s_hi) / 1728)
    d_hi = (cube - s_lo) // 1728
    if d_lo > d_hi:
        return []
    mag = max(abs(d_lo), abs(d_hi), 1)
    smooth = _smooth_sorted(primes, mag.bit_length())
    out = []
    for sign in (1, -1):
        a = max(1, d_lo if sign == 1 else -d_hi)
        b = d_hi if sign == 1 else -d_lo
        for i in range(bisect_left(smooth, a), bisect_right(smooth, b)):
            m = cube - 1728 * sign * smooth[i]
            if m < 0:
                continue
            r = isqrt(m)
            if r * r != m:
                continue
            for c6 in {r, -r}:
                if lo <= c6 <= hi:
                    out.append(c6)
    out.sort(key=lambda c6: (abs(c6 - c0), c6))
    return out


@lru_cache(maxsize=64)
def _smooth_sorted(primes, bits):
    """Sorted list of all `primes`-smooth positive integers <= 2**bits."""
    cap = 1 << bits
    out = []

    def rec(i, v):
        if i == len(primes):
            out.append(v)
            return
        p = primes[i]
        while v <= cap:
            rec(i + 1, v)
            v *= p

    rec(0, 1)
    out.sort()
    return out


def _verified_curve(c4, c6, N, space, table):
    if (c4 ** 3 - c6 ** 2) % 1728 != 0 or c4 ** 3 == c6 ** 2:
        return None
    # the minimal discriminant of a conductor-N curve is supported on the
    # primes of N; reject anything else before attempting factorizations
    disc = abs(c4 ** 3 - c6 ** 2) // 1728
    n = N
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            while disc % p == 0:
                disc //= p
        p += 1
    if n > 1:
        while disc % n == 0:
            disc //= n
    if disc != 1:
        return None
    try:
        model = curve_from_c_invariants(c4, c6)
    except (SingularCurveError, ValueError):
        return None
    if model is None:
        return None
    try:
        model = minimal_model(model)
        if conductor(model) != N:
            return None
    except (SingularCurveError, ValueError, AssertionError):
        return None
    an = an_coefficients(model, 32, local=all_local_data(model))
    for ell in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if N % ell == 0:
            continue
        if an[ell] != table_ap(space, table, ell):
            return None
    return model


def _an_provider_from_table(space, table):
    """Exact a_n expansion from the Hecke eigenvalues of the table.

    Good primes use table_ap; primes dividing the level use the U_p
    eigenvalue on the table (a_p in {0, +-1} for a newform on Gamma_0).
    """
    cache = {}

    def ap(p):
        if p not in cache:
            cache[p] = table_ap(space, table, p) if space.N % p \
                else _bad_ap(space, table, p)
        return cache[p]

    def provider(terms):
        ps = list(primerange(2, terms + 1))
        missing = [p for p in ps if p not in cache and space.N % p]
        if missing:
            cache.update(ap_batch(space, table, missing))
        ppow = {}
        for p in ps:
            app = ap(p)
            prev2, prev1 = 1, app
            q = p
            while q <= terms:
                ppow[q] = prev1
                prev2, prev1 = prev1, (app * prev1 if space.N % p == 0
                                       else app * prev1 - p * prev2)
                q *= p
        a = [0] * (terms + 1)
        a[1] = 1
        for n in range(2, terms + 1):
            m, x = 1, n
            for p in ps:
                if p * p > x:
                    break
                if x % p == 0:
                    q = 1
                    while x % p == 0:
                        x //= p
                        q *= p
                    m *= ppow[q]
            if x > 1:
                m *= ppow[x]
            a[n] = m
        return a

    return provider


def _bad_ap(space, table, p):
    """Eigenvalue of U_p on the symbol, via paths:
    a_p * lambda{oo -> a/m} = sum_b lambda{oo -> (a + b m)/(p m)}."""
    if space.N % (p * p) == 0:
        return 0
    for m in range(1, 64):
        for a in range(m):
            if gcd(a, m) != 1 and m != 1:
                continue
            r = _path_sum(space, table, a, m)
            if r == 0:
                continue
            s = sum(_path_sum(space, table, a + b * m, p * m)
                    for b in range(p))
            q, rem = divmod(s, r)
            if rem != 0 or q not in (-1, 1):
                raise RecoveryError("bad-prime eigenvalue %s/%s at p=%d"
                                    % (s, r, p))
            return q
    raise RecoveryError("zero table at p=%d" % p)
