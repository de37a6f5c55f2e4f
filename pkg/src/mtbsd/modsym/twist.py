"""Quadratic twists: Kronecker characters and twisted L-values at s = 1.

For a newform f of level N and a primitive quadratic character chi_D with
gcd(D, N) = 1, f tensor chi_D is a newform of level N*D^2; its L-value at 1
is computed by the usual exponential series once the Fricke sign is +1, and
the sign itself is measured numerically from the W-involution.
"""

from math import gcd, isqrt

import mpmath as mp


def kronecker(a, n):
    """The Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    out = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            out = -out
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def _squarefree(n):
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def fundamental_discs(limit=200, negative=False):
    """Fundamental discriminants with |D| < limit, of the requested sign."""
    out = []
    for m in range(1, limit):
        d = -m if negative else m
        if d % 4 == 1 and _squarefree(m):
            out.append(d)
        elif d % 4 == 0 and (d // 4) % 4 in (2, 3) and _squarefree(abs(d) // 4):
            out.append(d)
    return out


def fricke_sign(coeffs, level, y=1.1):
    """Numerically measured eigenvalue eps in g(1/y) = eps * y^2 * g(y).

    g(y) = sum c_n exp(-2 pi n y / sqrt(level)).  Returns +1 or -1; None when
    the form is numerically too small to decide (vanishing twist).
    """
    with mp.workdps(30):
        rt = mp.sqrt(level)
        yv = mp.mpf(y)

        def g(t):
            return mp.fsum(coeffs[n] * mp.exp(-2 * mp.pi * n * t / rt)
                           for n in range(1, len(coeffs)) if coeffs[n])

        num, den = g(1 / yv), yv ** 2 * g(yv)
        if abs(den) < mp.mpf("1e-12"):
            return None
        eps = num / den
        if abs(abs(eps) - 1) > 1e-4:
            return None
        return 1 if eps > 0 else -1


def twisted_l_value(an, N, D):
    """L(f tensor chi_D, 1), or None when the functional-equation sign is -1.

    `an` must extend past ~6*|D|*sqrt(N) terms for a small series tail.
    """
    m = abs(D) if D != 1 else 1
    coeffs = [0] * len(an)
    for n in range(1, len(an)):
        c = kronecker(D, n)
        if c:
            coeffs[n] = c * an[n]
    level = N * m * m
    eps = fricke_sign(coeffs, level)
    if eps is None or eps < 0:
        return None
    with mp.workdps(30):
        rt = mp.sqrt(level)
        return 2 * mp.fsum(mp.mpf(coeffs[n]) / n * mp.exp(-2 * mp.pi * n / rt)
                           for n in range(1, len(coeffs)) if coeffs[n])


def twist_terms(N, D):
    """Series length giving ~1e-8 relative tails for the twisted L-value."""
    return max(64, 3 * abs(D) * (isqrt(N) + 1) + 16)
