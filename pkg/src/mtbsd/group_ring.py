"""Groups G_M, subrings of Q, augmentation-ideal filtrations and graded
quotient classes: the algebraic layer underlying the refined congruences.

Q_n(R, G) = I(R,G)^n / I(R,G)^{n+1} decomposes as the direct sum of the
l-Sylow parts of Q_n(Z, G) over the primes l dividing #G that are not
inverted in R; classes are carried in exponent-vector form per Sylow prime.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from sympy import factorint, primitive_root


class SizeCapError(ValueError):
    """Raised when a lattice computation exceeds the configured group-size cap."""


class MembershipError(ValueError):
    """Raised when an element is not in the claimed ideal power or subring."""


# ---------------------------------------------------------------------------
# integer normal forms with transformation matrices

def smith_with_transform(rows):
    """Smith normal form D = U * A * V of an integer matrix given as row
    lists; returns (D, U, V) with U, V unimodular, as row-lists."""
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row i += c * row j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):  # col i += c * col j
        for r in a:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    t = 0
    while t < min(m, n):
        # find a pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0:
                    if piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if a[i][t] % a[t][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
                elif a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, n):
                if a[t][j] % a[t][t]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
                elif a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            if done:
                # divisibility condition: pivot must divide the rest
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % a[t][t]:
                            add_row(t, i, 1)
                            done = False
                            break
                    if not done:
                        break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def hermite_rows(rows):
    """Row-style Hermite normal form basis of the row lattice; nonzero rows."""
    a = [r for r in ([int(x) for x in row] for row in rows) if any(r)]
    out = []
    n = len(a[0]) if a else 0
    col = 0
    while a and col < n:
        nz = [r for r in a if r[col]]
        rest = [r for r in a if not r[col]]
        if nz:
            while len(nz) > 1:
                nz.sort(key=lambda r: abs(r[col]))
                piv, others = nz[0], nz[1:]
                nz = [piv]
                for r in others:
                    q = r[col] // piv[col]
                    rr = [x - q * y for x, y in zip(r, piv)]
                    if rr[col]:
                        nz.append(rr)
                    elif any(rr):
                        rest.append(rr)
            piv = nz[0]
            if piv[col] < 0:
                piv = [-x for x in piv]
            out.append(piv)
        a = rest
        col += 1
    # reduce entries above each pivot
    for i in reversed(range(len(out))):
        pc = next(j for j, x in enumerate(out[i]) if x)
        for k in range(i):
            q = out[k][pc] // out[i][pc]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


# ---------------------------------------------------------------------------
# finite abelian groups

class FiniteAbelianGroup:
    """A finite abelian group with canonical element labels, invariant-factor
    generators and a full discrete-log table."""

    def __init__(self, elements, identity, mult, ds, gens, dlog, modulus=None):
        self.elements = elements
        self.identity = identity
        self._mult = mult
        self.ds = ds  # invariant factors d1 | d2 | ...
        self.gens = gens
        self._dlog = dlog
        self.modulus = modulus
        self.order = len(elements)

    def mult(self, a, b):
        return self._mult(a, b)

    def pow(self, g, e):
        e %= self.order if self.order > 1 else 1
        result = self.identity
        base = g
        while e:
            if e & 1:
                result = self._mult(result, base)
            base = self._mult(base, base)
            e >>= 1
        return result

    def inv(self, g):
        return self.pow(g, self.order - 1)

    def dlog(self, g):
        """Exponent vector of g over the invariant-factor generators."""
        return self._dlog[g]

    def from_exponents(self, vec):
        result = self.identity
        for g, e in zip(self.gens, vec):
            result = self._mult(result, self.pow(g, int(e)))
        return result

    def element_order(self, g):
        n = 1
        h = g
        while h != self.identity:
            h = self._mult(h, g)
            n += 1
        return n

    @property
    def is_cyclic(self):
        return len(self.ds) <= 1

    def __repr__(self):
        name = "G_%s" % self.modulus if self.modulus else "A"
        return "%s(order=%d, ds=%r)" % (name, self.order, list(self.ds))


def _unit_group_data(M):
    """Generators and factor orders of (Z/MZ)^*, with per-factor dlog tables."""
    gens, orders, tables = [], [], []
    for p, k in sorted(factorint(M).items()):
        q = p ** k
        rest = M // q
        inv_rest = pow(rest, -1, q) if q > 1 else 0

        def lift(x, q=q, rest=rest, inv_rest=inv_rest):
            # CRT: x mod q, 1 mod rest
            if rest == 1:
                return x % M
            return (x * rest * inv_rest + q * pow(q, -1, rest) * 1) % M

        if p == 2 and k == 1:
            continue
        if p == 2 and k >= 3:
            # <-1> x <5>
            t = {}
            v = 1
            for e in range(q // 4):
                t[v] = (0, e)
                t[(-v) % q] = (1, e)
                v = v * 5 % q
            gens.extend([lift(q - 1), lift(5)])
            orders.extend([2, q // 4])
            tables.append((q, t, 2))
        else:
            g = primitive_root(q)
            t = {}
            v = 1
            for e in range(q - q // p):
                t[v] = (e,)
                v = v * g % q
            gens.append(lift(g))
            orders.append(q - q // p)
            tables.append((q, t, 1))
    return gens, orders, tables


def build_group(M):
    """G_M = (Z/MZ)^* / <-1> with representatives min(a, M - a)."""
    M = int(M)
    if M <= 2:
        ident = 1 % M if M > 1 else 0
        return FiniteAbelianGroup([ident], ident, lambda a, b: ident, [], [],
                                  {ident: ()}, modulus=M)

    gens_a, orders_a, tables = _unit_group_data(M)

    def dlog_a(a):
        vec = []
        for q, t, _ in tables:
            vec.extend(t[a % q])
        return vec

    k = len(orders_a)
    rel = [[0] * k for _ in range(k)]
    for i, d in enumerate(orders_a):
        rel[i][i] = d
    rel.append(dlog_a(M - 1))  # the class of -1
    D, _, V = smith_with_transform(rel)
    diag = [D[i][i] for i in range(k)]
    keep = [i for i, d in enumerate(diag) if d > 1]
    ds = [diag[i] for i in keep]

    def rep(a):
        a %= M
        return min(a, M - a)

    def mult(a, b):
        return rep(a * b)

    # x' = x V ; generators correspond to x' = e_i, i.e. x = row i of V^{-1}
    vinv = _int_matrix_inverse(V)
    gens = []
    for i in keep:
        a = 1
        for gA, e in zip(gens_a, vinv[i]):
            a = a * pow(gA, e, M) % M  # negative e fine: gA is a unit mod M
        gens.append(rep(a))

    dlog = {}
    elements = []
    ident = 1
    for vec in product(*[range(d) for d in ds]) if ds else [()]:
        a = 1
        for i, e in enumerate(vec):
            a = a * pow(gens[i], e, M) % M
        lab = rep(a)
        assert lab not in dlog, "duplicate element in G_M enumeration"
        dlog[lab] = tuple(vec)
        elements.append(lab)
    assert len(elements) == max(1, _phi(M) // 2)
    return FiniteAbelianGroup(sorted(elements), ident, mult, ds,
                              gens, dlog, modulus=M)


def _phi(M):
    r = 1
    for p, k in factorint(M).items():
        r *= (p - 1) * p ** (k - 1)
    return r


def _int_matrix_inverse(V):
    """Inverse of a unimodular integer matrix (row-list), exact."""
    n = len(V)
    from fractions import Fraction as F
    a = [[F(V[i][j]) for j in range(n)] + [F(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = [a[i][n + j] for j in range(n)]
        assert all(x.denominator == 1 for x in row)
        out.append([int(x) for x in row])
    return out


def product_group(moduli):
    """Abstract abelian group Z/m1 x Z/m2 x ... with tuple labels."""
    moduli = [int(m) for m in moduli if m > 1]
    k = len(moduli)
    rel = [[0] * k for _ in range(k)]
    for i, d in enumerate(moduli):
        rel[i][i] = d
    if k == 0:
        return FiniteAbelianGroup([()], (), lambda a, b: (), [], [], {(): ()})
    D, _, V = smith_with_transform(rel)
    diag = [D[i][i] for i in range(k)]
    keep = [i for i, d in enumerate(diag) if d > 1]
    ds = [diag[i] for i in keep]
    vinv = _int_matrix_inverse(V)
    gens = [tuple(vinv[i][j] % moduli[j] for j in range(k)) for i in keep]

    def mult(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    ident = tuple(0 for _ in moduli)
    dlog = {}
    elements = []
    for vec in product(*[range(d) for d in ds]) if ds else [()]:
        lab = ident
        for g, e in zip(gens, vec):
            lab = tuple((x + e * y) % m for x, y, m in zip(lab, g, moduli))
        assert lab not in dlog
        dlog[lab] = tuple(vec)
        elements.append(lab)
    return FiniteAbelianGroup(sorted(elements), ident, mult, ds, gens, dlog)


# ---------------------------------------------------------------------------
# subrings of Q

@dataclass(frozen=True)
class SubringOfQ:
    """R = Z[T^{-1}] represented by its finite set of inverted primes T."""
    inverted_primes: frozenset

    def contains(self, x):
        x = Fraction(x)
        return all(p in self.inverted_primes for p in factorint(x.denominator))

    def is_unit(self, x):
        x = Fraction(x)
        if x == 0:
            return False
        return all(p in self.inverted_primes
                   for p in set(factorint(x.denominator)) | set(factorint(abs(x.numerator))))

    def __repr__(self):
        if not self.inverted_primes:
            return "Z"
        return "Z[%s]" % ", ".join("1/%d" % p for p in sorted(self.inverted_primes))


def smallest_subring(values):
    """The smallest subring of Q containing the given rationals."""
    T = set()
    for v in values:
        T.update(factorint(Fraction(v).denominator))
    return SubringOfQ(frozenset(T))


def s_primes(group, R):
    """S = primes l with l | #G and 1/l not in R (Prop 1.4)."""
    return {int(p) for p in factorint(group.order)
            if p not in R.inverted_primes} if group.order > 1 else set()


# ---------------------------------------------------------------------------
# element-level operations

def sylow_project(group, g, ell):
    """pi_ell(g): the Sylow projection; identity when ell does not divide #G."""
    n = group.order
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    if k == 0:
        return group.identity
    return group.pow(g, n * pow(n, -1, ell ** k))


def fractional_power(group, g, r):
    """The unique h with h^b = g^a for r = a/b, b coprime to #G (Lemma 1.3)."""
    r = Fraction(r)
    if group.order > 1 and gcd(r.denominator, group.order) != 1:
        raise MembershipError(
            "denominator %d not invertible modulo #G = %d" % (r.denominator, group.order))
    if group.order == 1:
        return group.identity
    return group.pow(g, r.numerator * pow(r.denominator, -1, group.order))


# ---------------------------------------------------------------------------
# group-ring elements

def augmentation(theta):
    return sum(theta.values(), Fraction(0))


def gre_scale(theta, c):
    c = Fraction(c)
    return {g: c * r for g, r in theta.items() if c * r != 0}

def gre_add(a, b):
    out = dict(a)
    for g, r in b.items():
        out[g] = out.get(g, Fraction(0)) + r
        if out[g] == 0:
            del out[g]
    return out


def gre_mul(group, a, b):
    out = {}
    for g, r in a.items():
        for h, s in b.items():
            k = group.mult(g, h)
            out[k] = out.get(k, Fraction(0)) + r * s
    return {g: r for g, r in out.items() if r != 0}


def gre_clear_denominators(theta, R):
    """(u, u*theta) with u the smallest T-unit making the coefficients integral."""
    u = 1
    for r in theta.values():
        den = Fraction(r).denominator
        for p, k in factorint(den).items():
            if p not in R.inverted_primes:
                raise MembershipError("coefficient %s not in %r" % (r, R))
        u = u * den // gcd(u, den)
    return u, {g: int(Fraction(r) * u) for g, r in theta.items()}


# ---------------------------------------------------------------------------
# quotient classes

@dataclass(frozen=True)
class QuotientClass:
    """An element of Q_n(R, G) in Sylow exponent-vector form."""
    level: int
    components: tuple  # sorted tuple of (ell, exponents tuple)
    moduli: tuple      # sorted tuple of (ell, moduli tuple)

    @staticmethod
    def make(level, comp, mod):
        comps = []
        mods = []
        for ell in sorted(mod):
            ms = tuple(int(m) for m in mod[ell])
            es = tuple(int(e) % m for e, m in zip(comp[ell], ms))
            comps.append((ell, es))
            mods.append((ell, ms))
        return QuotientClass(level, tuple(comps), tuple(mods))

    @property
    def is_zero(self):
        return all(all(e == 0 for e in es) for _, es in self.components)

    def component(self, ell):
        for l, es in self.components:
            if l == ell:
                return es
        return None

    def scaled(self, c):
        """The class of c * theta for c a unit at every Sylow prime."""
        c = Fraction(c)
        comp, mod = {}, {}
        for (ell, es), (_, ms) in zip(self.components, self.moduli):
            mod[ell] = ms
            comp[ell] = tuple(
                e * c.numerator * pow(c.denominator, -1, m) % m if m > 1 else 0
                for e, m in zip(es, ms))
        return QuotientClass.make(self.level, comp, mod)


def _sylow_part(d, ell):
    k = 0
    while d % ell == 0:
        d //= ell
        k += 1
    return ell ** k


def phi_image(theta, group, R):
    """Level-1 class of theta in Q_1(R,G) via the explicit isomorphism phi:
    component at ell is prod_g pi_ell(g)^{r_g} in exponent-vector form."""
    if augmentation(theta) != 0:
        raise MembershipError("augmentation is nonzero; element not in I(R,G)")
    S = s_primes(group, R)
    exps = [Fraction(0)] * len(group.ds)
    for g, r in theta.items():
        r = Fraction(r)
        if not R.contains(r):
            raise MembershipError("coefficient %s not in %r" % (r, R))
        for i, e in enumerate(group.dlog(g)):
            exps[i] += r * e
    comp, mod = {}, {}
    for ell in S:
        ms = tuple(_sylow_part(d, ell) for d in group.ds)
        es = []
        for x, m in zip(exps, ms):
            if m == 1:
                es.append(0)
            else:
                es.append(x.numerator * pow(x.denominator, -1, m) % m)
        comp[ell] = tuple(es)
        mod[ell] = ms
    return QuotientClass.make(1, comp, mod)


def _binom(a, j):
    r = 1
    for i in range(j):
        r = r * (a - i) // (i + 1)
    return r


def _cyclic_sigma_coeffs(theta_int, group, n_max):
    """For cyclic G = <g> of order m: write theta = sum_j c_j sigma^j + O(sigma^{n_max+1})
    with sigma = [g] - [e], using [g^a] = (1 + sigma)^a.  Returns c_0..c_n_max
    as exact integers (before relation reduction)."""
    c = [0] * (n_max + 1)
    for h, r in theta_int.items():
        a = group.dlog(h)[0] if group.ds else 0
        for j in range(n_max + 1):
            c[j] += r * _binom(a, j)
    return c


def _cyclic_class(theta_int, group, S, r, n_max=None):
    """Sylow components of the class of an integer element in Q_r(Z-localized, G)
    for cyclic G, via reduction in Z[sigma]/((1+sigma)^m - 1).

    Returns (order_exact_or_None, comp, mod): order_exact is the least j <= r
    with some nonzero ell-component (None if all classes up to level r vanish
    at every ell in S).  comp/mod describe the level-r class when order >= r.
    """
    m = group.order
    c = [Fraction(x) for x in _cyclic_sigma_coeffs(theta_int, group, max(r, 1))]
    binom_m = [_binom(m, t) for t in range(r + 2)]
    comp, mod = {}, {}
    order = None
    for ell in sorted(S):
        q = _sylow_part(m, ell)
        mod[ell] = (q,)
        cl = list(c)
        level_found = None
        for j in range(1, r + 1):
            val = cl[j]
            # ell-adic valuation check against q
            if q > 1 and not _ell_integral_zero(val, q, ell):
                level_found = j
                break
            if j == r:
                break
            # relation: m sigma^j = -sum_{t>=2} C(m,t) sigma^{j+t-1}
            k = val / m
            for t in range(2, r - j + 2):
                if j + t - 1 <= r:
                    cl[j + t - 1] -= k * binom_m[t]
        if level_found is not None and level_found < r:
            order = level_found if order is None else min(order, level_found)
            comp[ell] = (0,)
            continue
        if q == 1:
            comp[ell] = (0,)
            continue
        comp[ell] = (_reduce_mod(cl[r], q, ell),)
        if any(comp[ell]):
            order = r if order is None else min(order, r)
    return order, comp, mod


def _ell_integral_zero(x, q, ell):
    """True if the ell-local reduction of x mod q vanishes (x has ell-free
    denominator by construction)."""
    return _reduce_mod(x, q, ell) == 0


def _reduce_mod(x, q, ell):
    x = Fraction(x)
    assert x.denominator % ell != 0
    return x.numerator * pow(x.denominator, -1, q) % q


# ---------------------------------------------------------------------------
# lattice computations (generic path, small groups)

DEFAULT_GROUP_CAP = 64


def _basis_vectors(group):
    idx = {g: i for i, g in enumerate(group.elements)}
    e = idx[group.identity]
    out = []
    for g in group.elements:
        if g == group.identity:
            continue
        v = [0] * group.order
        v[idx[g]] = 1
        v[e] -= 1
        out.append(v)
    return out, idx


def _vec_mul(group, idx, v, g):
    """v * ([g] - [e]) in the group ring, dense vectors."""
    out = [0] * len(v)
    elements = group.elements
    for i, c in enumerate(v):
        if c:
            out[idx[group.mult(elements[i], g)]] += c
            out[i] -= c
    return out


def aug_power_lattice(group, n, cap=DEFAULT_GROUP_CAP):
    """Hermite-form basis of I(Z,G)^n as vectors over the group elements."""
    if group.order > cap:
        raise SizeCapError("group order %d exceeds cap %d" % (group.order, cap))
    basis, idx = _basis_vectors(group)
    current = hermite_rows(basis)
    nontrivial = [g for g in group.elements if g != group.identity]
    for _ in range(n - 1):
        nxt = []
        for v in current:
            for g in nontrivial:
                nxt.append(_vec_mul(group, idx, v, g))
        current = hermite_rows(nxt)
    return current


def _coords_in_basis(basis, vecs):
    """Rational coordinates of each vec in the row span of basis (HNF rows)."""
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    out = []
    for v in vecs:
        v = [Fraction(x) for x in v]
        coords = []
        for row, pc in zip(basis, pivots):
            c = v[pc] / row[pc]
            coords.append(c)
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        if any(v):
            raise MembershipError("vector not in the lattice span")
        out.append(coords)
    return out


def graded_quotient(group, n, cap=DEFAULT_GROUP_CAP):
    """Invariant factors of Q_n(Z, G) via Smith normal form."""
    bn = aug_power_lattice(group, n, cap)
    bn1 = aug_power_lattice(group, n + 1, cap)
    coords = _coords_in_basis(bn, bn1)
    coords = [[int(x) for x in row] for row in coords]
    D, _, _ = smith_with_transform(coords)
    k = min(len(coords), len(coords[0]) if coords else 0)
    diag = [D[i][i] for i in range(k)]
    facs = [d for d in diag if d > 1]
    # zero columns of the relation matrix would mean infinite factors
    assert len([d for d in diag if d != 0]) == len(bn), "Q_n not finite"
    return sorted(facs)


def _generic_class(theta_int, group, S, r, cap=DEFAULT_GROUP_CAP):
    """Level-r class of an integer group-ring element via lattice normal forms."""
    bn = aug_power_lattice(group, r, cap)
    bn1 = aug_power_lattice(group, r + 1, cap)
    rel = [[int(x) for x in row] for row in _coords_in_basis(bn, bn1)]
    D, _, V = smith_with_transform(rel)
    idx = {g: i for i, g in enumerate(group.elements)}
    vec = [0] * group.order
    for g, c in theta_int.items():
        vec[idx[g]] += c
    t = _coords_in_basis(bn, [vec])[0]
    k = len(bn)
    y = [sum(t[i] * V[i][j] for i in range(k)) for j in range(k)]
    diag = [D[i][i] for i in range(k)]
    comp, mod = {}, {}
    for ell in sorted(S):
        ms, es = [], []
        for val, d in zip(y, diag):
            q = _sylow_part(d, ell)
            ms.append(q)
            es.append(_reduce_mod(val, q, ell) if q > 1 else 0)
        comp[ell] = tuple(es)
        mod[ell] = tuple(ms)
    return comp, mod


# ---------------------------------------------------------------------------
# classes and vanishing order over R

def class_in_Qr(theta, group, R, r, cap=DEFAULT_GROUP_CAP, n_max=8):
    """The class of theta in Q_r(R, G); theta must lie in I(R,G)^r."""
    if augmentation(theta) != 0:
        raise MembershipError("augmentation nonzero")
    if r == 1:
        return phi_image(theta, group, R)
    S = s_primes(group, R)
    u, theta_int = gre_clear_denominators(theta, R)
    if group.is_cyclic:
        order, comp, mod = _cyclic_class(theta_int, group, S, r, n_max)
        if order is not None and order < r:
            raise MembershipError("element has vanishing order %d < %d" % (order, r))
    else:
        comp, mod = _generic_class(theta_int, group, S, r, cap)
    cls = QuotientClass.make(r, comp, mod)
    return cls.scaled(Fraction(1, u)) if u != 1 else cls


def vanishing_order(theta, group, R, n_max=8, cap=DEFAULT_GROUP_CAP):
    """ord_I(theta): 0 if augmentation is nonzero, else the least r with a
    nonzero class in Q_r(R,G); returns (order, at_least) where at_least=True
    means every class up to n_max vanished."""
    if augmentation(theta) != 0:
        return 0, False
    if not theta or all(v == 0 for v in theta.values()):
        return n_max, True
    S = s_primes(group, R)
    if not S:
        return n_max, True  # Q_r(R,G) = 0 for every r
    if group.is_cyclic:
        u, theta_int = gre_clear_denominators(theta, R)
        for r in range(1, n_max + 1):
            order, comp, mod = _cyclic_class(theta_int, group, S, r, n_max)
            if order is not None:
                return order, False
        return n_max, True
    for r in range(1, n_max + 1):
        cls = class_in_Qr(theta, group, R, r, cap)
        if not cls.is_zero:
            return r, False
    return n_max, True
