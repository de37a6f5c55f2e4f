"""Point counts over F_p, Hecke eigenvalue coefficients, and rational torsion."""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .tate import GOOD, local_data
from .weierstrass import valuation


class BadReductionError(ValueError):
    pass


def count_points(model, p):
    """#E(F_p) for a model with good reduction at p (naive, vectorized)."""
    a1, a2, a3, a4, a6 = model.ainvs
    if p == 2:
        n = 1
        for x in (0, 1):
            for y in (0, 1):
                if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    n += 1
        return n
    if p < 60:
        # small primes: direct quadratic-character sum
        qr = {(x * x) % p for x in range(p)}
        n = p + 1
        b2, b4, b6 = model.b2 % p, model.b4 % p, model.b6 % p
        for x in range(p):
            g = (4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p
            if g == 0:
                continue
            n += 1 if g in qr else -1
        return n
    x = np.arange(p, dtype=np.int64)
    sq = np.zeros(p, dtype=np.int8)
    sq[(x * x) % p] = 1
    g = (4 * x + model.b2 % p) % p
    g = (g * x + (2 * model.b4) % p) % p
    g = (g * x + model.b6 % p) % p
    chi = np.where(g == 0, 0, 2 * sq[g].astype(np.int64) - 1)
    return int(p + 1 + chi.sum())


def ap(model, p):
    """Trace of Frobenius a_p = p + 1 - #E(F_p) for a prime of good reduction."""
    if model.disc % p == 0:
        raise BadReductionError("bad reduction at %d" % p)
    a = p + 1 - count_points(model, p)
    assert a * a <= 4 * p
    return a


def an_coefficients(model, nmax, local=None):
    """Dirichlet coefficients a_1..a_nmax of the L-function of the curve.

    `local` optionally maps bad primes to their LocalData (to avoid rerunning
    Tate's algorithm).  Good a_p by point counting, bad p by reduction type,
    the rest by multiplicativity.
    """
    a = [0] * (nmax + 1)
    a[1] = 1
    sieve = _prime_sieve(nmax)
    for p in sieve:
        if model.disc % p != 0:
            app = ap(model, p)
        else:
            ld = (local or {}).get(p) or local_data(model, p)
            if ld.reduction == GOOD:
                app = ap(model, p)
            elif ld.reduction == "split_multiplicative":
                app = 1
            elif ld.reduction == "nonsplit_multiplicative":
                app = -1
            else:
                app = 0
        good = model.disc % p != 0 or (local or {}).get(p, local_data(model, p)).reduction == GOOD
        # prime powers
        q = p
        while q <= nmax:
            if q == p:
                a[q] = app
            else:
                a[q] = a[q // p] * app - (p * a[q // (p * p)] if good else 0)
            q *= p
        # multiply into composites
    for n in range(2, nmax + 1):
        if a[n] != 0 or n == 1:
            continue
        m = _smallest_prime_power_factor(n)
        if m != n:
            a[n] = a[m] * a[n // m]
    return a


def _smallest_prime_power_factor(n):
    p = _least_prime_factor(n)
    q = 1
    while n % p == 0:
        q *= p
        n //= p
    return q


def _least_prime_factor(n):
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _prime_sieve(n):
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


# ---------------------------------------------------------------------------
# rational torsion

def torsion_bound(model, num_primes=12):
    """gcd of #E(F_p) over the first `num_primes` good primes > 3."""
    b = 0
    count = 0
    p = 5
    while count < num_primes:
        while model.disc % p == 0 or not _is_prime(p):
            p += 2
        b = gcd(b, count_points(model, p))
        count += 1
        p += 2
        if b == 1:
            return 1
    return b


def _is_prime(n):
    if n < 2:
        return False
    for f in range(2, isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def short_model_coeffs(model):
    """(A, B) with E isomorphic over Q to Y^2 = X^3 + A X + B via
    X = 36x + 3b2, Y = 108(2y + a1 x + a3)."""
    return -27 * model.c4, -54 * model.c6


def _short_on_curve(A, B, P):
    if P is None:
        return True
    x, y = P
    return y * y == x**3 + A * x + B


def _short_add(A, B, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = Fraction(3 * x1 * x1 + A, 2 * y1)
    else:
        lam = Fraction(y2 - y1, x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def point_order(A, B, P, bound=20):
    """Exact order of P if at most `bound`, else None."""
    Q = P
    for n in range(1, bound + 1):
        if Q is None:
            return n
        Q = _short_add(A, B, Q, P)
    return None


def torsion_points(model, lattice=None):
    """All rational torsion points on the short model Y^2 = X^3 + AX + B.

    Candidates come from the analytic parametrization (division points of the
    real period), are rounded to integers (Lutz-Nagell integrality) and then
    certified by exact arithmetic.  Returns the list of affine points.
    """
    import mpmath as mp

    from .periods import curve_lattice

    A, B = short_model_coeffs(model)
    bound = torsion_bound(model)
    if bound == 1:
        return []
    with mp.workdps(45):
        lat = lattice or curve_lattice(A, B)
        candidates = _torsion_x_candidates(A, B, lat, bound)
    pts = set()
    for X in candidates:
        y2 = X**3 + A * X + B
        if y2 < 0:
            continue
        Y = isqrt(y2)
        if Y * Y != y2:
            continue
        for s in ({0} if Y == 0 else {Y, -Y}):
            P = (Fraction(X), Fraction(s))
            if _short_on_curve(A, B, P) and point_order(A, B, P) is not None:
                pts.add((X, s))
    return sorted(pts)


def _torsion_x_candidates(A, B, lat, bound):
    import mpmath as mp

    xs = set()
    w1, w2 = lat.w1, lat.w2
    zs = []
    for j in range(1, bound):
        zs.append(j * w1 / bound)
        if lat.rectangular:
            zs.append(w2 / 2 + j * w1 / bound)
    if lat.rectangular:
        zs.append(w2 / 2)
    for z in zs:
        try:
            x = lat.weierstrass_p(z)
        except (ZeroDivisionError, ValueError):
            continue
        if abs(mp.im(x)) < 1e-6 and abs(mp.re(x)) < 1e15:
            xs.add(int(mp.nint(mp.re(x))))
    return xs


def torsion_order(model):
    """Exact order of the rational torsion subgroup."""
    return len(torsion_points(model)) + 1
