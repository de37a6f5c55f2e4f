"""L(E,1), L'(E,1) and the sign of the functional equation, by rapidly
convergent exponential series."""

from math import isqrt

import mpmath as mp

from .points import an_coefficients


def default_terms(conductor):
    """Enough terms for ~1e-15 tails in the exponential series."""
    return max(64, int(6 * isqrt(conductor)) + 16)


def functional_equation_sign(model, conductor, terms=None, an=None):
    """Sign w in Lambda(2-s) = w Lambda(s), computed numerically.

    Uses the Fricke involution: with g(y) = sum a_n exp(-2 pi n y / sqrt(N)),
    g(1/y) = eps * y^2 * g(y) where eps = -w is the W_N eigenvalue of f.
    """
    terms = terms or default_terms(conductor)
    a = an if an is not None else an_coefficients(model, terms)
    with mp.workdps(30):
        rtN = mp.sqrt(conductor)

        def g(y):
            return mp.fsum(a[n] * mp.exp(-2 * mp.pi * n * y / rtN)
                           for n in range(1, terms + 1))

        y = mp.mpf("1.1")
        num, den = g(1 / y), y ** 2 * g(y)
        eps = num / den
        assert abs(abs(eps) - 1) < 1e-6, "Fricke eigenvalue not +-1: %s" % mp.nstr(eps)
        # eps = -(W_N eigenvalue); the root number is w = -(W_N eigenvalue) = eps
        return 1 if eps > 0 else -1


def l_value_at_1(model, conductor, terms=None, an=None, sign=None):
    """L(E, 1) = (1 + w) * sum a_n / n * exp(-2 pi n / sqrt(N))."""
    terms = terms or default_terms(conductor)
    a = an if an is not None else an_coefficients(model, terms)
    w = sign if sign is not None else functional_equation_sign(model, conductor, terms, a)
    if w == -1:
        return mp.mpf(0)
    with mp.workdps(30):
        rtN = mp.sqrt(conductor)
        return 2 * mp.fsum(mp.mpf(a[n]) / n * mp.exp(-2 * mp.pi * n / rtN)
                           for n in range(1, terms + 1))


def l_derivative_at_1(model, conductor, terms=None, an=None):
    """L'(E, 1) = 2 * sum a_n / n * E1(2 pi n / sqrt(N)), valid when w = -1."""
    terms = terms or default_terms(conductor)
    a = an if an is not None else an_coefficients(model, terms)
    with mp.workdps(30):
        rtN = mp.sqrt(conductor)
        return 2 * mp.fsum(mp.mpf(a[n]) / n * mp.e1(2 * mp.pi * n / rtN)
                           for n in range(1, terms + 1))


def analytic_rank(model, conductor, terms=None, an=None, tol=1e-8):
    """Order of vanishing of L(E, s) at s = 1, assuming rank <= 3.

    Returns (rank, leading value).  Ranks 2 and 3 are detected as numerical
    vanishing of the lower-order terms with the matching sign.
    """
    terms = terms or default_terms(conductor)
    a = an if an is not None else an_coefficients(model, terms)
    w = functional_equation_sign(model, conductor, terms, a)
    if w == 1:
        lval = l_value_at_1(model, conductor, terms, a, sign=1)
        if abs(lval) > tol:
            return 0, lval
        return 2, None
    lder = l_derivative_at_1(model, conductor, terms, a)
    if abs(lder) > tol:
        return 1, lder
    return 3, None
