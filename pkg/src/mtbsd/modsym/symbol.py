"""Normalized plus modular symbols: evaluation and rational normalization.

The eigen-functional table from `eigen` is defined up to a rational scale.
The scale is pinned by comparing exact character-twisted sums of raw values
against numerically computed twisted L-values,

    sum_{a mod D} chi_D(a) * lambda(a, D) = sqrt(D) * L(E, chi_D, 1) / Omega_E,

rounded to a small rational and certified on an independent second twist.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath as mp

from ..curves import an_coefficients, period_data
from .eigen import isolate_symbol
from .space import build_space
from .twist import fundamental_discs, kronecker, twist_terms, twisted_l_value

SCALE_DENOM_BOUND = 1 << 12
CERT_TOL = 1e-6


class NormalizationError(ValueError):
    pass


@dataclass
class PlusModularSymbol:
    N: int
    curve_label: str
    table: tuple          # exact integer value per P^1 representative
    scale: Fraction       # lambda(a, b) = scale * raw path sum
    space: object
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def denominator_bound(self):
        """All values lie in (1/denominator_bound) * Z."""
        return self.scale.denominator

    def raw(self, a, b):
        """Integer path sum for {oo -> a/b} against the eigen-table."""
        key = self._reduce_key(a, b)
        if key in self._cache:
            return self._cache[key]
        a, b = key
        total = 0
        x, y = a, b
        quotients = []
        while y:
            quotients.append(x // y)
            x, y = y, x - (x // y) * y
        if not quotients:
            quotients = [0]
        sign = -1  # (-1)^(k-1) for k = 0
        p0, q0 = 1, 0
        p1, q1 = quotients[0], 1
        total += self._lookup(q1, sign * q0)
        for c in quotients[1:]:
            sign = -sign
            p0, q0, p1, q1 = p1, q1, c * p1 + p0, c * q1 + q0
            total += self._lookup(q1, sign * q0)
        self._cache[key] = total
        return total

    def _lookup(self, c, d):
        i = self.space.lookup(c, d)
        return 0 if i is None else self.table[i]

    def _reduce_key(self, a, b):
        if b == 0:
            raise ZeroDivisionError("b must be nonzero")
        if b < 0:
            a, b = -a, -b
        g = gcd(a, b)
        a, b = a // g, b // g
        return (a % b, b)

    def evaluate(self, a, b):
        return self.scale * self.raw(a, b)

    def __call__(self, a, b):
        return self.evaluate(a, b)


def evaluate(sym, a, b):
    """lambda^+(a, b) as an exact rational."""
    return sym.evaluate(a, b)


# ---------------------------------------------------------------------------
# normalization against twisted L-values

def normalize(table, record, period=None, space=None):
    """Attach the Definition-2.1 scale to an isolated eigen-table."""
    model = record.model
    N = record.conductor
    if period is None:
        period = period_data(model)
    sym = PlusModularSymbol(N, record.label, tuple(table), Fraction(1), space)
    omega = period.omega_plus
    candidates = []
    terms_cache = {}
    for D in fundamental_discs():
        if gcd(D, N) != 1:
            continue
        raw_sum = sum(kronecker(D, a) * sym.raw(a, D)
                      for a in range(D) if gcd(a, D) == 1) if D > 1 else sym.raw(0, 1)
        if raw_sum == 0:
            continue
        terms = twist_terms(N, D)
        if terms not in terms_cache:
            terms_cache[terms] = an_coefficients(model, terms)
        lchi = twisted_l_value(terms_cache[terms], N, D)
        if lchi is None:
            raise NormalizationError(
                "nonzero twisted symbol sum but odd functional equation "
                "for %s, D=%d" % (record.label, D))
        with mp.workdps(30):
            target = mp.sqrt(D) * lchi / omega
        candidates.append((D, raw_sum, float(target)))
        if len(candidates) == 2:
            break
    if not candidates:
        raise NormalizationError("no nonvanishing twist found for %s" % record.label)
    D, raw_sum, target = candidates[0]
    approx = target / raw_sum
    scale = Fraction(approx).limit_denominator(SCALE_DENOM_BOUND)
    if abs(float(scale) - approx) > CERT_TOL:
        raise NormalizationError(
            "scale for %s does not round to a small rational: %r" %
            (record.label, approx))
    # certification on an independent identity
    if len(candidates) == 2:
        D2, raw2, target2 = candidates[1]
        if abs(float(scale * raw2) - target2) > CERT_TOL * max(1.0, abs(target2)):
            raise NormalizationError(
                "twist certification failed for %s (D=%d vs D=%d)" %
                (record.label, D, D2))
    else:
        raise NormalizationError(
            "only one nonvanishing twist available for %s; cannot certify" %
            record.label)
    sym.scale = scale
    sym._cache.clear()
    return sym


def plus_symbol(record, level_cap=10_000, space=None):
    """Build, isolate and normalize the plus modular symbol of a curve."""
    if space is None:
        space = build_space(record.conductor, plus=True, level_cap=level_cap)
    table, _ = isolate_symbol(space, record)
    return normalize(table, record, space=space)
