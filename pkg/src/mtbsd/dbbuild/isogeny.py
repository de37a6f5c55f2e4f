"""Isogeny classes over Q via division polynomials and Velu's formulas.

For each Mazur-admissible prime degree ell, a cheap necessary condition
(reducibility of x^2 - a_p x + p mod ell for many good p) prunes the
search; surviving degrees factor the ell-division polynomial on the short
model y^2 = x^3 + Ax + B, and every monic degree-(ell-1)/2 product of
irreducible factors is pushed through Kohel's form of Velu's formulas.
Codomains are verified exactly (conductor and a_p agreement).
"""

from fractions import Fraction
from itertools import combinations

import sympy
from sympy import Poly, Symbol, ZZ

from ..curves import (
    SingularCurveError, all_local_data, an_coefficients, conductor,
    minimal_model,
)
from ..curves.weierstrass import curve_from_c_invariants

ISOGENY_DEGREES = (2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163)
MAX_CLASS_SIZE = 8

_X = Symbol("x")


class IsogenyError(ValueError):
    pass


def _short_AB(model):
    """(A, B) with y^2 = x^3 + Ax + B isomorphic to the model over Q."""
    return -27 * model.c4, -54 * model.c6


def _division_polynomials(A, B, top):
    """P_m for m <= top: psi_m = P_m (m odd), psi_m = 2y P_m (m even)."""
    f = Poly(_X ** 3 + A * _X + B, _X, domain=ZZ)
    P = {0: Poly(0, _X, domain=ZZ), 1: Poly(1, _X, domain=ZZ),
         2: Poly(1, _X, domain=ZZ),
         3: Poly(3 * _X ** 4 + 6 * A * _X ** 2 + 12 * B * _X - A * A,
                 _X, domain=ZZ),
         4: Poly(2 * (_X ** 6 + 5 * A * _X ** 4 + 20 * B * _X ** 3
                      - 5 * A * A * _X ** 2 - 4 * A * B * _X
                      - 8 * B * B - A ** 3), _X, domain=ZZ)}
    for n in range(5, top + 1):
        m = n // 2
        if n % 2:
            if m % 2 == 0:
                P[n] = 16 * f * f * P[m + 2] * P[m] ** 3 \
                    - P[m - 1] * P[m + 1] ** 3
            else:
                P[n] = P[m + 2] * P[m] ** 3 \
                    - 16 * f * f * P[m - 1] * P[m + 1] ** 3
        else:
            P[n] = P[m] * (P[m + 2] * P[m - 1] ** 2 - P[m - 2] * P[m + 1] ** 2)
    return P


def _kernel_candidates(A, B, ell):
    """Monic rational polynomials of degree (ell-1)/2 dividing P_ell."""
    d = (ell - 1) // 2
    P = _division_polynomials(A, B, ell)[ell]
    _, factors = P.factor_list()
    factors = [g for g, e in factors for _ in range(e)]
    out = []
    for r in range(1, len(factors) + 1):
        for combo in combinations(range(len(factors)), r):
            deg = sum(factors[i].degree() for i in combo)
            if deg != d:
                continue
            prod = Poly(1, _X, domain=ZZ)
            for i in combo:
                prod *= factors[i]
            coeffs = prod.all_coeffs()
            lead = coeffs[0]
            out.append([Fraction(int(c), int(lead)) for c in coeffs])
    # dedupe (repeated factors give repeated products)
    uniq = []
    for h in out:
        if h not in uniq:
            uniq.append(h)
    return uniq


def _velu_codomain(A, B, h):
    """(A', B') of the Velu isogeny with monic kernel polynomial h (coeff
    list, descending)."""
    n = len(h) - 1
    s1 = -h[1] if n >= 1 else Fraction(0)
    s2 = h[2] if n >= 2 else Fraction(0)
    s3 = -h[3] if n >= 3 else Fraction(0)
    b4, b6 = 2 * A, 4 * B
    t = 6 * (s1 * s1 - 2 * s2) + n * b4
    w = 10 * (s1 ** 3 - 3 * s1 * s2 + 3 * s3) + 3 * b4 * s1 + n * b6
    return A - 5 * t, B - 7 * w


def _model_from_AB(A, B, N):
    c4 = -48 * A
    c6 = -864 * B
    if c4.denominator != 1 or c6.denominator != 1:
        return None
    try:
        model = curve_from_c_invariants(int(c4), int(c6))
        model = minimal_model(model)
    except (SingularCurveError, ValueError):
        return None
    if conductor(model) != N:
        return None
    return model


def _same_ap(m1, m2, bound=50):
    a1 = an_coefficients(m1, bound, local=all_local_data(m1))
    a2 = an_coefficients(m2, bound, local=all_local_data(m2))
    return a1 == a2


def _reducible_mod_ell(model, ell, N, prime_bound=100):
    """Necessary condition for a rational ell-isogeny: x^2 - a_p x + p is
    reducible mod ell at every good p."""
    an = an_coefficients(model, prime_bound, local=all_local_data(model))
    for p in sympy.primerange(2, prime_bound):
        if N % p == 0 or p == ell:
            continue
        disc = (an[p] * an[p] - 4 * p) % ell
        if disc and pow(disc, (ell - 1) // 2, ell) != 1:
            return False
    return True


def _prime_isogenous(model, N):
    """Minimal models ell-isogenous to the given one, for prime ell."""
    out = []
    A, B = _short_AB(model)
    # ell = 2: rational 2-torsion on the short model
    two_tors = Poly(_X ** 3 + A * _X + B, _X, domain=ZZ)
    for root in two_tors.ground_roots():
        x0 = Fraction(sympy.Rational(root).p, sympy.Rational(root).q)
        t = 3 * x0 * x0 + A
        w = x0 * t
        cod = _model_from_AB(A - 5 * t, B - 7 * w, N)
        if cod is not None and _same_ap(model, cod):
            out.append(cod)
    for ell in ISOGENY_DEGREES[1:]:
        if not _reducible_mod_ell(model, ell, N):
            continue
        for h in _kernel_candidates(A, B, ell):
            Ap, Bp = _velu_codomain(Fraction(A), Fraction(B), h)
            cod = _model_from_AB(Ap, Bp, N)
            if cod is not None and _same_ap(model, cod):
                out.append(cod)
    return out


def isogeny_class(model):
    """All minimal models isogenous to the given minimal model, via BFS
    over prime-degree isogenies."""
    N = conductor(model)
    seen = {model.ainvs: model}
    queue = [model]
    while queue:
        cur = queue.pop(0)
        for cod in _prime_isogenous(cur, N):
            if cod.ainvs not in seen:
                if len(seen) >= MAX_CLASS_SIZE:
                    raise IsogenyError("isogeny class exceeds size %d"
                                       % MAX_CLASS_SIZE)
                seen[cod.ainvs] = cod
                queue.append(cod)
    return sorted(seen.values(), key=lambda m: m.ainvs)
