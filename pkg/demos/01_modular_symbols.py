"""A first look at normalized modular symbols.

Builds the plus modular symbol of the curve 11.a2, prints the lambda table
at the split prime 11, and demonstrates two exact identities that anchor
the whole pipeline: the Hecke relation on layer sums and the vanishing of
the group sum at a split multiplicative prime.

Equivalent CLI:  mtbsd --dataset data/curves.jsonl modsym --curve 11.a2 --layer 11
"""

from fractions import Fraction

from mtbsd.curves import an_coefficients, compute_invariants
from mtbsd.curves.record import CurveRecord
from mtbsd.modsym.symbol import plus_symbol

record = CurveRecord(label="11.a2", model=compute_invariants(0, -1, 1, -10, -20),
                     conductor=11, rank=0, torsion_order=5,
                     tamagawa={11: 5}, sha_order=1)

print("curve %s, ainvs %s" % (record.label, record.model.ainvs))
sym = plus_symbol(record)
print("normalization scale: %s (all values lie in (1/%d) Z)"
      % (sym.scale, sym.denominator_bound))

print("\nlambda(0,1) = L(E,1)/Omega_E =", sym.evaluate(0, 1))

print("\nlayer p = 11 (split multiplicative):")
for a in range(1, 11):
    print("  lambda(%2d, 11) = %s" % (a, sym.evaluate(a, 11)))
total = sum(sym.evaluate(a, 11) for a in range(1, 11))
print("group sum =", total, "(must vanish at a split prime; build fails otherwise)")

print("\nHecke relation  sum_{a mod p} lambda(a,p) = (a_p - 1) lambda(0,1):")
an = an_coefficients(record.model, 8)
for p in (2, 3, 5, 7):
    lhs = sum(sym.evaluate(a, p) for a in range(p))
    rhs = (an[p] - 1) * sym.evaluate(0, 1)
    print("  p=%d: %s = (%d - 1) * %s  ->  %s" % (p, lhs, an[p],
                                                  sym.evaluate(0, 1),
                                                  "ok" if lhs == rhs else "FAIL"))
