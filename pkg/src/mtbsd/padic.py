"""Finite-precision p-adic numbers and the Tate parameter q_p.

For split multiplicative p the curve is a Tate curve E(C_p) ~ C_p^*/q_p^Z;
q_p is recovered by inverting the q-expansion of j.  Only the valuation
(= C_p) and the unit part's residue are consumed downstream.
"""

from dataclasses import dataclass
from fractions import Fraction

from .curves.tate import SPLIT, local_data
from .curves.weierstrass import valuation as int_valuation


class ReductionTypeError(ValueError):
    pass


class PrecisionError(ValueError):
    pass


@dataclass(frozen=True)
class PadicNumber:
    """p^valuation * unit to `precision` relative p-adic digits.

    Zero is represented with valuation None and empty digits.
    """
    p: int
    valuation: int | None
    mantissa: int  # unit part, reduced mod p^precision; 0 only for the zero element
    precision: int

    @staticmethod
    def zero(p, precision=0):
        return PadicNumber(p, None, 0, precision)

    @staticmethod
    def from_rational(x, p, precision):
        x = Fraction(x)
        if x == 0:
            return PadicNumber.zero(p, precision)
        v = int_valuation(x.numerator, p) - int_valuation(x.denominator, p)
        num = x.numerator // p ** max(0, int_valuation(x.numerator, p)) \
            if x.numerator % p == 0 else x.numerator
        den = x.denominator // p ** max(0, int_valuation(x.denominator, p)) \
            if x.denominator % p == 0 else x.denominator
        q = p ** precision
        mant = num * pow(den, -1, q) % q
        return PadicNumber(p, v, mant, precision)

    @property
    def is_zero(self):
        return self.valuation is None

    @property
    def digits(self):
        """Digits of the unit part, least significant first."""
        if self.is_zero:
            return ()
        out = []
        m = self.mantissa
        for _ in range(self.precision):
            out.append(m % self.p)
            m //= self.p
        return tuple(out)

    def _check(self, other):
        assert isinstance(other, PadicNumber) and other.p == self.p

    @staticmethod
    def _normalize(p, val, mant, prec):
        """Strip p-powers that cancellation may have introduced."""
        q = p ** prec
        mant %= q
        if mant == 0:
            return PadicNumber.zero(p, prec)
        shift = 0
        while mant % p == 0:
            mant //= p
            shift += 1
        prec -= shift
        if prec <= 0:
            raise PrecisionError("complete cancellation at precision %d" % prec)
        return PadicNumber(p, val + shift, mant % p ** prec, prec)

    def __add__(self, other):
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        v = min(self.valuation, other.valuation)
        absprec = min(self.valuation + self.precision,
                      other.valuation + other.precision)
        prec = absprec - v
        m = (self.mantissa * self.p ** (self.valuation - v)
             + other.mantissa * self.p ** (other.valuation - v))
        return self._normalize(self.p, v, m, prec)

    def __neg__(self):
        if self.is_zero:
            return self
        q = self.p ** self.precision
        return PadicNumber(self.p, self.valuation, (-self.mantissa) % q, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        if self.is_zero or other.is_zero:
            return PadicNumber.zero(self.p, min(self.precision, other.precision))
        prec = min(self.precision, other.precision)
        q = self.p ** prec
        return PadicNumber(self.p, self.valuation + other.valuation,
                           self.mantissa * other.mantissa % q, prec)

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of p-adic zero")
        q = self.p ** self.precision
        return PadicNumber(self.p, -self.valuation,
                           pow(self.mantissa, -1, q), self.precision)

    def __str__(self):
        if self.is_zero:
            return "O(%d^%d)" % (self.p, self.precision)
        terms = []
        for i, d in enumerate(self.digits):
            if d == 0:
                continue
            e = self.valuation + i
            if e == 0:
                terms.append("%d" % d)
            elif d == 1:
                terms.append("%d^%d" % (self.p, e))
            else:
                terms.append("%d*%d^%d" % (d, self.p, e))
        terms.append("O(%d^%d)" % (self.p, self.valuation + self.precision))
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# the q-expansion of 1/j

_SERIES_CACHE = {}


def _inverse_j_series(n_terms):
    """Coefficients s_1..s_{n_terms} of 1/j = Delta/E4^3 = q - 744 q^2 + ...,
    exact integers."""
    if n_terms in _SERIES_CACHE:
        return _SERIES_CACHE[n_terms]
    N = n_terms + 1
    e4 = _eisenstein_series(4, N)
    e6 = _eisenstein_series(6, N)
    e4cube = _series_mul(_series_mul(e4, e4, N), e4, N)
    e6sq = _series_mul(e6, e6, N)
    delta = [(a - b) // 1728 for a, b in zip(e4cube, e6sq)]
    assert delta[0] == 0 and delta[1] == 1
    # 1/j = Delta / E4^3: since Delta = q * (unit series), divide then shift
    inv_e4cube = _series_inverse(e4cube, N)
    s = _series_mul(delta, inv_e4cube, N)
    assert s[0] == 0 and s[1] == 1 and s[2] == -744
    _SERIES_CACHE[n_terms] = s[:n_terms + 1]
    return _SERIES_CACHE[n_terms]


def _eisenstein_series(k, N):
    sig = [0] * N
    for d in range(1, N):
        dk = d ** (k - 1)
        for n in range(d, N, d):
            sig[n] += dk
    coef = 240 if k == 4 else -504
    return [1] + [coef * s for s in sig[1:]]


def _series_mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a):
        if x and i < N:
            for j, y in enumerate(b):
                if i + j >= N:
                    break
                if y:
                    out[i + j] += x * y
    return out


def _series_inverse(a, N):
    assert a[0] in (1, -1)
    inv = [a[0]] + [0] * (N - 1)
    for n in range(1, N):
        s = 0
        for k in range(1, n + 1):
            if k < len(a) and a[k]:
                s += a[k] * inv[n - k]
        inv[n] = -s * a[0]
    return inv


def _eval_series_mod(coeffs, x, modulus):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % modulus
    return acc


# ---------------------------------------------------------------------------
# Tate parameter

def tate_parameter(model, p, precision=None):
    """q_p for a curve with split multiplicative reduction at p.

    Solves 1/j(q_p) = 1/j(E) by Newton iteration on the integral series
    S(q) = Delta/E4^3, starting from q_0 = 1/j.
    """
    ld = local_data(model, p)
    if ld.reduction != SPLIT:
        raise ReductionTypeError(
            "reduction at %d is %s, not split multiplicative" % (p, ld.reduction))
    v = ld.ord_p_disc
    if precision is None:
        precision = v + 16
    K = precision  # absolute precision target for q_p
    n_terms = K // v + 3
    s = _inverse_j_series(n_terms)
    ds = [i * c for i, c in enumerate(s)][1:]  # S'(q), coefficient list from q^0
    modulus = p ** (K + v + 4)
    # t = 1/j = disc / c4^3, a p-adic integer of valuation v
    c4cube = model.c4 ** 3
    assert c4cube % p != 0
    t = model.disc * pow(c4cube, -1, modulus) % modulus
    assert t % p ** v == 0 and (t // p ** v) % p != 0
    q = t
    for _ in range(64):
        fq = (_eval_series_mod(s, q, modulus) - t) % modulus
        if fq % p ** (K + v) == 0:
            break
        dq = _eval_series_mod(ds, q, modulus)
        q = (q - fq * pow(dq, -1, modulus)) % modulus
    else:
        raise PrecisionError("Newton iteration for q_%d did not converge" % p)
    # residual check at the requested precision
    res = (_eval_series_mod(s, q, modulus) - t) % modulus
    if res % p ** (K + v) != 0:
        raise PrecisionError("insufficient series truncation for q_%d" % p)
    assert int_valuation(q, p) == v, "ord_p(q_p) != ord_p(disc)"
    unit = (q // p ** v) % p ** (K - v) if K > v else 0
    if K <= v:
        raise PrecisionError("precision %d does not reach past p^%d" % (K, v))
    return PadicNumber(p, v, unit, K - v)


def unit_part(q):
    """(ord, unit) with q = p^ord * unit and unit of valuation 0."""
    if q.is_zero:
        raise ZeroDivisionError("unit part of p-adic zero")
    return q.valuation, PadicNumber(q.p, 0, q.mantissa, q.precision)


def reduce_to_Gp(unit, p, group=None):
    """The class of the unit's residue in G_p = (Z/pZ)^*/<-1>."""
    if unit.is_zero or unit.valuation != 0:
        raise ValueError("input must be a p-adic unit")
    if unit.precision < 1:
        raise PrecisionError("need at least one digit")
    d = unit.mantissa % p
    return min(d, p - d)


def unit_residue(unit, pe):
    """The residue of a p-adic unit modulo p^e (for general-layer reductions)."""
    if unit.is_zero or unit.valuation != 0:
        raise ValueError("input must be a p-adic unit")
    e = int_valuation(pe, unit.p)
    if unit.precision < e:
        raise PrecisionError("need %d digits, have %d" % (e, unit.precision))
    return unit.mantissa % pe
