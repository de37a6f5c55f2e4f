"""Reduction types, Kodaira symbols, Tamagawa numbers and conductors via Tate's algorithm."""

from dataclasses import dataclass

from sympy import factorint

from .weierstrass import transform, valuation

GOOD = "good"
SPLIT = "split_multiplicative"
NONSPLIT = "nonsplit_multiplicative"
ADDITIVE = "additive"


@dataclass(frozen=True)
class LocalData:
    p: int
    reduction: str
    kodaira: str
    tamagawa_cp: int
    cond_exponent: int
    ord_p_disc: int


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _quad_roots(A, B, C, p):
    """(distinct, rational_roots) for A x^2 + B x + C over F_p, A nonzero mod p."""
    A, B, C = A % p, B % p, C % p
    if p == 2:
        distinct = B == 1
        if not distinct:
            return False, []
        roots = [x for x in (0, 1) if (A * x * x + B * x + C) % 2 == 0]
        return True, roots
    disc = (B * B - 4 * A * C) % p
    if disc == 0:
        return False, []
    if _legendre(disc, p) == -1:
        return True, []
    s = _sqrt_mod(disc, p)
    inv = pow(2 * A, -1, p)
    return True, [((-B + s) * inv) % p, ((-B - s) * inv) % p]


def _sqrt_mod(a, p):
    """Square root of a QR a mod odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _singular_point(model, p):
    """The unique singular point of the reduction mod p (p | disc)."""
    a1, a2, a3, a4, a6 = model.ainvs
    if p == 2:
        for x0 in (0, 1):
            for y0 in (0, 1):
                on = (y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0**3 - a2 * x0 * x0 - a4 * x0 - a6) % 2
                fx = (a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4) % 2
                fy = (2 * y0 + a1 * x0 + a3) % 2
                if on == 0 and fx == 0 and fy == 0:
                    return x0, y0
        raise AssertionError("no singular point mod 2")
    # odd p: multiple root of 4x^3 + b2 x^2 + 2 b4 x + b6 mod p
    g = [4 % p, model.b2 % p, (2 * model.b4) % p, model.b6 % p]
    dg = [12 % p, (2 * model.b2) % p, (2 * model.b4) % p]
    if all(c == 0 for c in dg):
        # p = 3 with 3 | b2, b4: g = x^3 + b6 = (x + b6)^3 over F_3
        x0 = (-model.b6) % p
    else:
        h = _poly_gcd(g, dg, p)
        if len(h) == 2:  # monic T - x0
            x0 = (-h[1]) % p
        elif len(h) == 3:  # monic (T - x0)^2, triple root of g
            x0 = (-h[1]) * pow(2, -1, p) % p
        else:
            raise AssertionError("unexpected gcd degree in singular point search")
    y0 = (-(a1 * x0 + a3) * pow(2, -1, p)) % p
    return x0, y0


def _poly_gcd(f, g, p):
    """Monic gcd of nonzero polynomials over F_p, coefficient lists, leading first."""

    def trim(a):
        i = 0
        while i < len(a) and a[i] % p == 0:
            i += 1
        return [c % p for c in a[i:]]

    f, g = trim(f), trim(g)
    while g:
        r = f[:]
        inv = pow(g[0], -1, p)
        while len(r) >= len(g):
            coef = r[0] * inv % p
            for i in range(len(g)):
                r[i] = (r[i] - coef * g[i]) % p
            r = trim(r)
            if not r:
                break
        f, g = g, r
    inv = pow(f[0], -1, p)
    return [c * inv % p for c in f]


def _cubic_root_structure(A, B, C, p):
    """Root structure of f = T^3 + A T^2 + B T + C over F_p.

    Returns ("separable", rational_roots), ("double", d) or ("triple", t)
    where d/t is the repeated root.  Any repeated root of a cubic over F_p
    lies in F_p, so this classification is complete.
    """
    A, B, C = A % p, B % p, C % p
    if p <= 3:
        # char 2/3: derivative tests degenerate; use exact multiplicities
        best = None
        roots = []
        for r in range(p):
            m, poly = 0, [1, A, B, C]
            while poly and _poly_eval(poly, r, p) == 0:
                poly = _synthetic_divide(poly, r, p)
                m += 1
            if m:
                roots.append(r)
            if m >= 2 and (best is None or m > best[0]):
                best = (m, r)
        if best is None:
            return "separable", roots
        return ("triple" if best[0] == 3 else "double"), best[1]
    f = [1, A, B, C]
    df = [3, (2 * A) % p, B]
    h = _poly_gcd(f, df, p)
    if len(h) == 1:
        return "separable", _frobenius_rational_roots(f, p)
    if len(h) == 2:
        return "double", (-h[1]) % p
    # gcd = (T - t)^2 for p >= 5
    return "triple", (-h[1]) * pow(2, -1, p) % p


def _poly_eval(f, x, p):
    v = 0
    for c in f:
        v = (v * x + c) % p
    return v


def _synthetic_divide(f, r, p):
    """f / (T - r) over F_p, assuming r is a root; leading-first list."""
    out = []
    carry = 0
    for c in f[:-1]:
        carry = (carry * r + c) % p
        out.append(carry)
    return out


def _frobenius_rational_roots(f, p):
    """Rational roots of a separable cubic over F_p (p >= 5)."""
    if p < 3000:
        return [x for x in range(p) if _poly_eval(f, x, p) == 0]
    # gcd(T^p - T, f) is the product of (T - r) over the rational roots r
    xp = _poly_powmod([1, 0], p, f, p)
    g = [0] * (2 - len(xp)) + xp
    g[-2] = (g[-2] - 1) % p
    if all(c == 0 for c in g):
        h = f  # f divides T^p - T: splits completely
    else:
        h = _poly_gcd(f, g, p)
    roots = []
    if len(h) == 4:  # split cubic
        r = _split_cubic_root(h, p)
        roots.append(r)
        h = _synthetic_divide(h, r, p)
    if len(h) == 3:
        roots.extend(_quad_roots(1, h[1], h[2], p)[1])
    elif len(h) == 2:
        roots.append((-h[1]) % p)
    return sorted(set(roots))


def _split_cubic_root(f, p):
    """One root of a monic cubic that splits completely over F_p (p odd)."""
    import random

    rng = random.Random(0xC0FFEE ^ p)
    while True:
        a = rng.randrange(p)
        # gcd(f(T), (T - a)^((p-1)/2) - 1) splits off roots r with r - a a QR
        g = _poly_powmod([1, -a], (p - 1) // 2, f, p)
        g = g[:-1] + [(g[-1] - 1) % p]
        if all(c == 0 for c in g):
            continue
        h = _poly_gcd(f, g, p)
        if len(h) == 2:
            return (-h[1]) % p
        if len(h) == 3:
            roots = _quad_roots(1, h[1], h[2], p)[1]
            if roots:
                return roots[0]


def _poly_powmod(base, e, mod, p):
    """base^e mod (mod) over F_p; leading-first coefficient lists."""
    result = [1]
    b = _poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, b, p), mod, p)
        b = _poly_mod(_poly_mul(b, b, p), mod, p)
        e >>= 1
    return result


def _poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return out


def _poly_mod(f, mod, p):
    r = [c % p for c in f]
    inv = pow(mod[0], -1, p)
    while len(r) >= len(mod) and any(r):
        if r[0]:
            coef = r[0] * inv % p
            for i in range(len(mod)):
                r[i] = (r[i] - coef * mod[i]) % p
        r = r[1:]
    while len(r) > 1 and r[0] == 0:
        r = r[1:]
    return r if r else [0]


def _symmetric_lift(a, p):
    a %= p
    return a - p if a > p // 2 else a


def local_data(model, p):
    """Run Tate's algorithm on a globally minimal model at the prime p."""
    disc = model.disc
    v = valuation(disc, p) if disc % p == 0 else 0
    if v == 0:
        return LocalData(p, GOOD, "I0", 1, 0, 0)

    if model.c4 % p != 0:
        # multiplicative: node; split iff the tangent quadratic factors over F_p
        x0, y0 = _singular_point(model, p)
        a1, a2 = model.a1, model.a2
        c = (3 * x0 + a2) % p
        if p == 2:
            split = c % 2 == 0
        else:
            split = _legendre(a1 * a1 + 4 * c, p) == 1
        if split:
            cp = v
            red = SPLIT
        else:
            cp = 2 if v % 2 == 0 else 1
            red = NONSPLIT
        return LocalData(p, red, "I%d" % v, cp, 1, v)

    # additive reduction
    kod, cp, m = _tate_additive(model, p, v)
    f = v - m + 1
    return LocalData(p, ADDITIVE, kod, cp, f, v)


def _tate_additive(model, p, v):
    """Kodaira symbol, Tamagawa number and component count for additive p."""
    E = model
    # translate the singular point to the origin
    x0, y0 = _singular_point(E, p)
    E = transform(E, 1, _symmetric_lift(x0, p), 0, _symmetric_lift(y0, p))
    assert E.a3 % p == 0 and E.a4 % p == 0 and E.a6 % p == 0

    if E.a6 % p**2 != 0:
        return "II", 1, 1
    if E.b8 % p**3 != 0:
        return "III", 2, 2
    if E.b6 % p**3 != 0:
        distinct, roots = _quad_roots(1, E.a3 // p, -(E.a6 // p**2), p)
        assert distinct
        return "IV", 3 if roots else 1, 3

    # normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6
    if p == 2:
        s = E.a2 % 2
        E = transform(E, 1, 0, s, 0)
        # choose t mod 8 with 4 | a3 + 2t and 8 | a6 - t*a3 - t^2
        t0 = (-(E.a3 // 2)) % 2
        for k in range(4):
            t = t0 + 2 * k
            if (E.a6 - t * E.a3 - t * t) % 8 == 0:
                E = transform(E, 1, 0, 0, t)
                break
        else:
            raise AssertionError("no valid translation in Tate step 6 at p=2")
    else:
        s = _symmetric_lift((-E.a1) * pow(2, -1, p) % p, p)
        E = transform(E, 1, 0, s, 0)
        t = _symmetric_lift((-E.a3) * pow(2, -1, p * p) % (p * p), p * p)
        E = transform(E, 1, 0, 0, t)
    assert E.a1 % p == 0 and E.a2 % p == 0, "Tate normalization failed (a1,a2)"
    assert E.a3 % p**2 == 0 and E.a4 % p**2 == 0 and E.a6 % p**3 == 0, \
        "Tate normalization failed (a3,a4,a6)"

    structure = _cubic_root_structure(E.a2 // p, E.a4 // p**2, E.a6 // p**3, p)
    if structure[0] == "separable":
        return "I0*", 1 + len(structure[1]), 5
    if structure[0] == "double":
        return _tate_in_star(E, p, structure[1])
    return _tate_star_tail(E, p, structure[1])


def _tate_in_star(E, p, double_root):
    """Subprocedure for type I_n*, n >= 1."""
    E = transform(E, 1, p * _symmetric_lift(double_root, p), 0, 0)
    assert valuation(E.a2, p) == 1 and E.a4 % p**3 == 0 and E.a6 % p**4 == 0
    n = 0
    mx, my = p * p, p * p
    while True:
        # quadratic in Y: Y^2 + (a3/my) Y - a6/my^2
        n += 1
        alpha, beta = E.a3 // my, E.a6 // (my * my)
        distinct, roots = _quad_roots(1, alpha, -beta, p)
        if distinct:
            return "I%d*" % n, 4 if roots else 2, n + 5
        y0 = beta % 2 if p == 2 else (-alpha) * pow(2, -1, p) % p
        E = transform(E, 1, 0, 0, my * _symmetric_lift(y0, p))
        my *= p
        assert E.a3 % my == 0 and E.a6 % (mx * my) == 0
        # quadratic in X: (a2/p) X^2 + (a4/(p*mx)) X + a6/(p*mx^2)
        n += 1
        A, B, C = E.a2 // p, E.a4 // (p * mx), E.a6 // (p * mx * mx)
        distinct, roots = _quad_roots(A, B, C, p)
        if distinct:
            return "I%d*" % n, 4 if roots else 2, n + 5
        if p == 2:
            x0 = (C * pow(A, -1, 2)) % 2
        else:
            x0 = (-B) * pow(2 * A, -1, p) % p
        E = transform(E, 1, mx * _symmetric_lift(x0, p), 0, 0)
        mx *= p
        assert E.a4 % (p * mx) == 0 and E.a6 % (mx * my) == 0


def _tate_star_tail(E, p, triple_root):
    """Types IV*, III*, II* after the degree-3 polynomial has a triple root."""
    E = transform(E, 1, p * _symmetric_lift(triple_root, p), 0, 0)
    assert E.a2 % p**2 == 0 and E.a4 % p**3 == 0 and E.a6 % p**4 == 0
    distinct, roots = _quad_roots(1, E.a3 // p**2, -(E.a6 // p**4), p)
    if distinct:
        return "IV*", 3 if roots else 1, 7
    alpha, beta = E.a3 // p**2, E.a6 // p**4
    y0 = beta % 2 if p == 2 else (-alpha) * pow(2, -1, p) % p
    E = transform(E, 1, 0, 0, p * p * _symmetric_lift(y0, p))
    assert E.a3 % p**3 == 0 and E.a6 % p**5 == 0
    if E.a4 % p**4 != 0:
        return "III*", 2, 8
    if E.a6 % p**6 != 0:
        return "II*", 1, 9
    raise AssertionError("model not minimal at %d" % p)


def conductor(model):
    """Conductor of a globally minimal model."""
    N = 1
    for p in factorint(abs(model.disc)):
        N *= p ** local_data(model, p).cond_exponent
    return N


def all_local_data(model):
    return {p: local_data(model, p) for p in sorted(factorint(abs(model.disc)))}
