"""Exact arithmetic of integral Weierstrass models y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class SingularCurveError(ValueError):
    """Raised when the Weierstrass coefficients define a singular cubic."""


@dataclass(frozen=True)
class CurveModel:
    """An integral Weierstrass model together with its standard invariants.

    All derived quantities (b2, ..., disc) are exact integers; j is carried
    as a reduced fraction (j_num, j_den).
    """

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int
    b4: int
    b6: int
    b8: int
    c4: int
    c6: int
    disc: int
    j_num: int
    j_den: int

    @property
    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __repr__(self):
        return "CurveModel%r" % (self.ainvs,)

    def rhs(self, x):
        """b-form right hand side: 4x^3 + b2 x^2 + 2 b4 x + b6 (= (2y + a1 x + a3)^2)."""
        return 4 * x**3 + self.b2 * x**2 + 2 * self.b4 * x + self.b6


def compute_invariants(a1, a2, a3, a4, a6):
    """Build a CurveModel from five integral coefficients.

    Raises SingularCurveError when the discriminant vanishes.
    """
    a1, a2, a3, a4, a6 = (int(a) for a in (a1, a2, a3, a4, a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurveError("discriminant is zero for a-invariants %r" % ((a1, a2, a3, a4, a6),))
    assert c4**3 - c6**2 == 1728 * disc
    j = Fraction(c4**3, disc)
    return CurveModel(a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, disc,
                      j.numerator, j.denominator)


def transform(model, u, r, s, t):
    """Apply the substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.

    u, r, s, t rational with u != 0; returns the transformed model, which must
    again be integral (we only use integral transforms and u in {1/n, n}).
    """
    u = Fraction(u)
    r = Fraction(r)
    s = Fraction(s)
    t = Fraction(t)
    a1, a2, a3, a4, a6 = model.ainvs
    A1 = (a1 + 2 * s) / u
    A2 = (a2 - s * a1 + 3 * r - s * s) / u**2
    A3 = (a3 + r * a1 + 2 * t) / u**3
    A4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
    A6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
    for A in (A1, A2, A3, A4, A6):
        if A.denominator != 1:
            raise ValueError("transform (u,r,s,t)=%r does not preserve integrality" % ((u, r, s, t),))
    return compute_invariants(int(A1), int(A2), int(A3), int(A4), int(A6))


def curve_from_c_invariants(c4, c6):
    """Return the integral model [0,0,0,-c4/48,-c6/864] rescaled to standard form.

    Uses the classical reduction: a1, a3 in {0,1}, a2 in {-1,0,1}, determined
    by c4, c6 via Kraus' congruences.  Raises ValueError when (c4, c6) are not
    the invariants of any integral Weierstrass model.
    """
    if (c4**3 - c6**2) % 1728 != 0:
        raise ValueError("c4^3 - c6^2 not divisible by 1728")
    disc = (c4**3 - c6**2) // 1728
    if disc == 0:
        raise SingularCurveError("c-invariants define a singular curve")
    # Kraus: integral model exists iff c6 = -b2^3 mod 216 ... ; we just search
    # the 24 candidate (b2 mod 12) classes, which is equivalent and simple.
    for b2 in range(-5, 7):
        if (b2 * b2 - c4) % 24 != 0:
            continue
        b4, r = divmod(b2 * b2 - c4, 24)
        assert r == 0
        num = -c6 + 36 * b2 * b4 - b2**3
        if num % 216 != 0:
            continue
        b6 = num // 216
        a1 = b2 % 2
        a2 = (b2 - a1) // 4
        a3 = b6 % 2
        a6 = (b6 - a3) // 4
        num4 = b4 - a1 * a3
        if num4 % 2 != 0:
            continue
        a4 = num4 // 2
        model = compute_invariants(a1, a2, a3, a4, a6)
        if model.c4 == c4 and model.c6 == c6:
            return model
    raise ValueError("no integral model with c4=%d, c6=%d" % (c4, c6))


def valuation(n, p):
    """p-adic valuation of a nonzero integer (0 for units, raises on 0)."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def content(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
