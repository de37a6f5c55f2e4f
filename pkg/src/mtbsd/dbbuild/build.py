"""Per-level database assembly: newforms -> curves -> classes -> labels.

Classes at a level are sorted lexicographically by the newform coefficient
sequence (a_2, a_3, a_5, ...) over all primes, bad ones included, and
lettered in base 26; curves inside a class are sorted lexicographically by
the a-invariants of their reduced minimal models and numbered from 1.
"""

import json
from fractions import Fraction

from sympy import primerange

from ..curves import (
    CurveRecord, all_local_data, an_coefficients, analytic_rank, conductor,
    torsion_order,
)
from ..curves.lfunction import default_terms
from ..modsym.space import build_space
from .isogeny import isogeny_class
from .newforms import (
    SEARCH_ELL_CAP, rational_newforms, table_ap,
)
from .recover import RecoveryError, curve_from_newform

SORT_PRIME_BOUND = 100


class BuildError(ValueError):
    pass


def class_letter(i):
    """0 -> 'a', 25 -> 'z', 26 -> 'ba', matching base-26 letter codes."""
    digits = []
    while True:
        i, r = divmod(i, 26)
        digits.append(chr(ord("a") + r))
        if i == 0:
            break
    return "".join(reversed(digits))


def _match_minus_table(plus_space, plus_table, minus_space, minus_tables):
    """The minus-quotient table with the same Hecke eigensystem."""
    cands = list(range(len(minus_tables)))
    for ell in primerange(2, 400):
        if plus_space.N % ell == 0:
            continue
        a = table_ap(plus_space, plus_table, ell)
        cands = [i for i in cands
                 if table_ap(minus_space, minus_tables[i], ell) == a]
        if len(cands) <= 1:
            break
    if len(cands) != 1:
        raise BuildError("minus-table match not unique at level %d"
                         % plus_space.N)
    return minus_tables[cands[0]]


def _class_sort_key(model, bound=SORT_PRIME_BOUND):
    an = an_coefficients(model, bound, local=all_local_data(model))
    return tuple(an[p] for p in primerange(2, bound + 1))


def _sha_order(record, symbol):
    """Exact analytic Sha order for a rank-0 curve via lambda(0, 1)."""
    lam = symbol.evaluate(0, 1)
    cprod = 1
    for c in record.tamagawa.values():
        cprod *= c
    sha = lam * record.torsion_order ** 2 / Fraction(2 * cprod)
    if sha.denominator != 1 or sha <= 0:
        raise BuildError("analytic Sha %s not a positive integer for %s"
                         % (sha, record.label))
    return int(sha)


def oldform_systems(N, class_reps, ell_cap=SEARCH_ELL_CAP):
    """(ap dict, multiplicity) per rational newform at a proper divisor.

    class_reps maps levels M to one representative model per isogeny
    class; only proper divisors of N contribute.  The multiplicity is the
    number of divisors of N/M, i.e. the dimension the old eigensystem
    spans at level N.
    """
    out = []
    for M in sorted(class_reps):
        if M >= N or N % M:
            continue
        k = N // M
        mult = 0
        d = 1
        while d * d <= k:
            if k % d == 0:
                mult += 1 if d * d == k else 2
            d += 1
        ells = [ell for ell in primerange(2, ell_cap + 1) if N % ell]
        for model in class_reps[M]:
            an = an_coefficients(model, ell_cap, local=all_local_data(model))
            out.append(({ell: an[ell] for ell in ells}, mult))
    return out


def build_level(N, level_cap=10_000, with_sha=True, oldforms=()):
    """All curve records of conductor N, labeled, in label order.

    `oldforms` (see oldform_systems) prunes known lower-level eigensystems
    from the newform search; it is a pure optimization and never changes
    the result.
    """
    from ..modsym.symbol import normalize

    plus = build_space(N, plus=True, level_cap=level_cap)
    plus_tables = rational_newforms(plus, oldforms=oldforms)
    if not plus_tables:
        return []
    minus = build_space(N, sign=-1, level_cap=level_cap)
    minus_tables = rational_newforms(minus, oldforms=oldforms)

    classes = []
    for ptab in plus_tables:
        mtab = _match_minus_table(plus, ptab, minus, minus_tables)
        base = curve_from_newform(plus, ptab, minus, mtab)
        curves = isogeny_class(base)
        classes.append((sorted(curves, key=lambda m: m.ainvs), ptab))
    classes.sort(key=lambda c: _class_sort_key(c[0][0]))

    records = []
    for ci, (curves, ptab) in enumerate(classes):
        letter = class_letter(ci)
        an = an_coefficients(curves[0], default_terms(N),
                             local=all_local_data(curves[0]))
        rank, _ = analytic_rank(curves[0], N, an=an)
        for ki, model in enumerate(curves):
            local = all_local_data(model)
            rec = CurveRecord(
                label="%d.%s%d" % (N, letter, ki + 1),
                model=model,
                conductor=N,
                rank=rank,
                torsion_order=torsion_order(model),
                tamagawa={p: ld.tamagawa_cp for p, ld in local.items()},
            )
            if with_sha and rank == 0:
                # every curve in the class shares the newform's certified
                # eigen-table; only the normalization scale is per-curve
                sym = normalize(list(ptab), rec, space=plus)
                rec.sha_order = _sha_order(rec, sym)
            records.append(rec)
    return records


def build_range(nmin, nmax, level_cap=10_000, with_sha=True, progress=None):
    """Curve records for all conductors in [nmin, nmax]."""
    out = []
    for N in range(nmin, nmax + 1):
        recs = build_level(N, level_cap=level_cap, with_sha=with_sha)
        if recs and progress is not None:
            progress(N, recs)
        out.extend(recs)
    return out


def write_jsonl(records, path):
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), sort_keys=True) + "\n")


def read_jsonl(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(CurveRecord.from_dict(json.loads(line)))
    return out
