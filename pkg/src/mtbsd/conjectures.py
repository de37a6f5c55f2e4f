"""Mazur-Tate elements and the refined-conjecture checkers.

Each checker is a pure, decidable predicate on exact inputs: modular-symbol
values (rationals), the reduced Tate parameter class, Tamagawa numbers,
rank and torsion.  Verdicts carry per-Sylow-prime diagnosis: the set S of
relevant primes, the failing subset, and both quotient classes.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

from sympy import factorint

from .curves import SPLIT, local_data
from .group_ring import (
    MembershipError, SubringOfQ, build_group, class_in_Qr, gre_add, gre_mul,
    gre_scale, phi_image, s_primes, smallest_subring, vanishing_order,
)
from .padic import tate_parameter, unit_part, unit_residue

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
SKIPPED = "skipped"

CONJECTURES = ("C1_1", "C4mul", "C5mul", "C3_1mod", "C4gen", "C6gen")


class SumZeroError(AssertionError):
    """sum_a lambda(a,p) != 0: contradicts a proven theorem, so it signals a
    computation bug rather than a finding."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class MazurTateElement:
    curve_label: str
    M: int
    theta: dict          # group element -> Fraction coefficient
    ring: SubringOfQ


@dataclass(frozen=True)
class Verdict:
    conjecture_id: str
    status: str
    S: frozenset
    failing_primes: frozenset
    lhs: object = None
    rhs: object = None
    notes: tuple = ()

    def __post_init__(self):
        assert self.conjecture_id in CONJECTURES
        assert (self.status == FAIL) == bool(self.failing_primes)
        assert self.failing_primes <= self.S

    def to_dict(self):
        return {
            "conjecture": self.conjecture_id,
            "status": self.status,
            "S": sorted(self.S),
            "failing": sorted(self.failing_primes),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class PairReport:
    curve_label: str
    layer: int
    verdicts: tuple
    inputs_digest: dict

    def to_dict(self):
        return {
            "label": self.curve_label,
            "layer": self.layer,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "inputs": self.inputs_digest,
        }


# ---------------------------------------------------------------------------
# Mazur-Tate elements

def mazur_tate_element(sym, M, curve_label="?", ring=None):
    """theta_{E,M} = sum_{a in G_M} lambda(a, M) [a]."""
    group = build_group(M)
    theta = {}
    for a in group.elements:
        val = sym.evaluate(a, M) if M > 1 else sym.evaluate(0, 1)
        if M > 2:
            # well-definedness on G_M: lambda(a, M) = lambda(-a, M)
            assert sym.evaluate(M - a, M) == val, \
                "lambda(%d, %d) != lambda(%d, %d)" % (a, M, M - a, M)
        theta[a] = val
    if ring is None:
        ring = smallest_subring(theta.values())
    return MazurTateElement(curve_label, M, theta, ring)


def qtilde_in_GM(model, p, M):
    """The class of the reduced Tate parameter q~_p in G_M, via
    Z_p^* ->> (Z/p^e)^* c-> (Z/M)^* ->> G_M."""
    e = 0
    m = M
    while m % p == 0:
        m //= p
        e += 1
    if e == 0:
        raise ValueError("p = %d does not divide the layer M = %d" % (p, M))
    v = local_data(model, p).ord_p_disc
    q = tate_parameter(model, p, precision=v + max(16, e + 2))
    _, unit = unit_part(q)
    u = unit_residue(unit, p ** e)
    rest = M // p ** e
    if rest > 1:
        # CRT: u mod p^e, 1 mod rest
        x = (u * rest * pow(rest, -1, p ** e)
             + p ** e * pow(p ** e, -1, rest)) % M
    else:
        x = u % M
    return min(x, M - x)


def _group_element_minus_one(group, g):
    return gre_add({g: Fraction(1)}, {group.identity: Fraction(-1)})


def _extend_ring(R, extra_primes):
    if not extra_primes:
        return R
    return SubringOfQ(R.inverted_primes | frozenset(int(p) for p in extra_primes))


def _torsion_primes(torsion):
    return frozenset(int(p) for p in factorint(int(torsion)))


def _vacuous(conjecture_id, S, group, notes=()):
    return Verdict(conjecture_id, VACUOUS, frozenset(S), frozenset(),
                   notes=tuple(notes) + ("vacuous: S empty or trivial group",))


def _compare_classes(lhs, rhs, S):
    return frozenset(ell for ell in S
                     if lhs.component(ell) != rhs.component(ell))


# ---------------------------------------------------------------------------
# multiplicative-form checkers (S_m = {p}, M = p)

def _theta_and_group(sym, p):
    group = build_group(p)
    theta = {a: sym.evaluate(a, p) for a in group.elements}
    if sum(theta.values(), Fraction(0)) != 0:
        raise SumZeroError(
            "sum_a lambda(a, %d) != 0 for %s" % (p, sym.curve_label))
    return group, theta


def check_conj_1_1(sym, p, qtilde, C_p, rank, torsion=None, invert_primes=(),
                   conjecture_id="C1_1"):
    """Conjecture 1.1: phi(theta_p) = pi_ell(q~_p)^(lambda(0,1)/(2 C_p))
    componentwise over ell in S."""
    group, theta = _theta_and_group(sym, p)
    lam01 = sym.evaluate(0, 1)
    notes = []
    if rank > 0:
        assert lam01 == 0, "rank > 0 but lambda(0,1) = %s" % lam01
        notes.append("rank > 0: both sides must be the identity")
    exponent = lam01 / (2 * C_p)
    R = _extend_ring(smallest_subring(list(theta.values()) + [exponent]),
                     invert_primes)
    S = s_primes(group, R)
    if not S or group.order == 1:
        return _vacuous(conjecture_id, S, group)
    lhs = phi_image(theta, group, R)
    rhs = phi_image(gre_scale(_group_element_minus_one(group, qtilde),
                              exponent), group, R)
    failing = _compare_classes(lhs, rhs, S)
    status = FAIL if failing else PASS
    return Verdict(conjecture_id, status, frozenset(S), failing,
                   lhs=lhs, rhs=rhs, notes=tuple(notes))


def check_conj_3_1(sym, p, qtilde, C_p, rank, torsion, invert_primes=()):
    """Conjecture 3.1: as 1.1, with the torsion order inverted in R."""
    extra = _torsion_primes(torsion) | frozenset(invert_primes)
    v = check_conj_1_1(sym, p, qtilde, C_p, rank, torsion,
                       invert_primes=extra, conjecture_id="C3_1mod")
    return replace(v, notes=v.notes + ("R inverts torsion %d" % torsion,))


def check_conj4mul(sym, p, rank, invert_primes=()):
    """Conjecture 2.11: for rank > 0, prod_a pi_ell(a)^lambda(a,p) = 1."""
    if rank <= 0:
        raise PreconditionError("C4mul requires rank > 0, got %d" % rank)
    group, theta = _theta_and_group(sym, p)
    R = _extend_ring(smallest_subring(theta.values()), invert_primes)
    S = s_primes(group, R)
    if not S or group.order == 1:
        return _vacuous("C4mul", S, group)
    lhs = phi_image(theta, group, R)
    rhs = phi_image({}, group, R)
    failing = _compare_classes(lhs, rhs, S)
    return Verdict("C4mul", FAIL if failing else PASS, frozenset(S), failing,
                   lhs=lhs, rhs=rhs)


def check_conj5mul(sym, p, qtilde, rank, torsion, tamagawa, sha_order,
                   invert_primes=()):
    """Conjecture 2.10: exponent #Sha * prod_{p' != p} C_{p'} / tau^2 in
    place of lambda(0,1)/(2 C_p); rank 0 (finite tau) required."""
    if rank != 0:
        raise PreconditionError("C5mul requires rank 0, got %d" % rank)
    group, theta = _theta_and_group(sym, p)
    if sha_order is None:
        return Verdict("C5mul", SKIPPED, frozenset(), frozenset(),
                       notes=("skipped: Sha order not ingested",))
    exponent = Fraction(int(sha_order), torsion * torsion)
    for pp, c in tamagawa.items():
        if pp != p:
            exponent *= c
    R = _extend_ring(smallest_subring(list(theta.values())
                                      + [Fraction(1, torsion)]),
                     invert_primes)
    S = s_primes(group, R)
    if not S or group.order == 1:
        return _vacuous("C5mul", S, group)
    lhs = phi_image(theta, group, R)
    rhs = phi_image(gre_scale(_group_element_minus_one(group, qtilde),
                              exponent), group, R)
    failing = _compare_classes(lhs, rhs, S)
    return Verdict("C5mul", FAIL if failing else PASS, frozenset(S), failing,
                   lhs=lhs, rhs=rhs,
                   notes=("Sha and rank ingested from database records",))


# ---------------------------------------------------------------------------
# general-layer checkers

def _layer_primes(M):
    return sorted(int(p) for p in factorint(int(M)))


def _require_split(model, primes):
    for p in primes:
        if local_data(model, p).reduction != SPLIT:
            raise PreconditionError("reduction at %d is not split" % p)


def check_conj4_general(record, sym, M, variant="plain", n_max=None,
                        invert_primes=()):
    """Conjecture 2.4: ord(theta_M) >= r + rank; variant 'torsion_inverted'
    per Conjecture 3.3."""
    S_m = _layer_primes(M)
    _require_split(record.model, S_m)
    mt = mazur_tate_element(sym, M, record.label)
    group = build_group(M)
    extra = frozenset(invert_primes)
    if variant == "torsion_inverted":
        extra |= _torsion_primes(record.torsion_order)
    R = _extend_ring(mt.ring, extra)
    S = s_primes(group, R)
    cid = "C4gen"
    target = len(S_m) + record.rank
    notes = []
    if variant == "torsion_inverted":
        notes.append("R inverts torsion %d" % record.torsion_order)
    if record.rank > 1:
        notes.append("rank %d: beyond paper's numerical scope" % record.rank)
    notes.append("rank ingested from database records")
    if not S or group.order == 1:
        return _vacuous(cid, S, group, notes)
    failing = set()
    for ell in S:
        R_ell = _extend_ring(R, S - {ell})
        order, at_least = vanishing_order(mt.theta, group, R_ell,
                                          n_max=n_max or target)
        if order < target and not at_least:
            failing.add(ell)
            notes.append("ell=%d: ord(theta) = %d < %d" % (ell, order, target))
    failing = frozenset(failing)
    return Verdict(cid, FAIL if failing else PASS, frozenset(S), failing,
                   notes=tuple(notes))


def check_conj6_general(record, sym, M, variant="plain", invert_primes=()):
    """Conjecture 2.6: image of theta_M in Q_r equals
    prod_p([q~_p] - [1]) * lambda(0,1)/(2 prod_p C_p); variant per 3.2."""
    S_m = _layer_primes(M)
    _require_split(record.model, S_m)
    r = len(S_m)
    mt = mazur_tate_element(sym, M, record.label)
    group = build_group(M)
    lam01 = sym.evaluate(0, 1)
    cprod = 1
    for p in S_m:
        cprod *= local_data(record.model, p).tamagawa_cp
    exponent = lam01 / (2 * cprod)
    extra = frozenset(invert_primes)
    notes = []
    if variant == "torsion_inverted":
        extra |= _torsion_primes(record.torsion_order)
        notes.append("R inverts torsion %d" % record.torsion_order)
    R = _extend_ring(smallest_subring(list(mt.theta.values()) + [exponent]),
                     extra)
    S = s_primes(group, R)
    cid = "C6gen"
    if record.rank > 0:
        assert lam01 == 0, "rank > 0 but lambda(0,1) = %s" % lam01
        notes.append("rank > 0: both sides must vanish")
    if not S or group.order == 1:
        return _vacuous(cid, S, group, notes)
    rhs_elt = {group.identity: Fraction(1)}
    for p in S_m:
        rhs_elt = gre_mul(group, rhs_elt, _group_element_minus_one(
            group, qtilde_in_GM(record.model, p, M)))
    rhs_elt = gre_scale(rhs_elt, exponent)
    failing = set()
    lhs = rhs = None
    for ell in S:
        R_ell = _extend_ring(R, S - {ell})
        try:
            lhs = class_in_Qr(mt.theta, group, R_ell, r)
        except MembershipError as exc:
            failing.add(ell)
            notes.append("ell=%d: theta not in I^%d (%s)" % (ell, r, exc))
            continue
        rhs = class_in_Qr(rhs_elt, group, R_ell, r)
        if lhs.component(ell) != rhs.component(ell):
            failing.add(ell)
    failing = frozenset(failing)
    return Verdict(cid, FAIL if failing else PASS, frozenset(S), failing,
                   lhs=lhs, rhs=rhs, notes=tuple(notes))


# ---------------------------------------------------------------------------
# diagnosis

def diagnose(verdict, record):
    """Annotate each failing ell with torsion divisibility; flag anomalies."""
    if not verdict.failing_primes:
        return verdict
    notes = list(verdict.notes)
    for ell in sorted(verdict.failing_primes):
        if record.torsion_order % ell == 0:
            notes.append("failing ell=%d divides torsion %d"
                         % (ell, record.torsion_order))
        else:
            notes.append("anomaly: failing ell=%d does not divide torsion %d;"
                         " manual review required" % (ell, record.torsion_order))
    return replace(verdict, notes=tuple(notes))
