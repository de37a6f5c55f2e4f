"""A genuine counterexample, and how the modified conjecture heals it.

The pair (130.a2, p=5) fails Conjecture 1.1 at ell = 2.  The diagnosis
shows why this is expected to be benign: 2 divides the torsion order 6,
and Conjecture 3.1 -- the variant whose ring inverts the torsion order --
is satisfied (vacuously here, since S becomes empty).

Equivalent CLI:
  mtbsd --dataset data/curves.jsonl verify --curve 130.a2 --prime 5 --conjecture c11
  mtbsd --dataset data/curves.jsonl verify --curve 130.a2 --prime 5 --conjecture c31
"""

import json

from mtbsd.conjectures import (
    check_conj4mul, check_conj_1_1, check_conj_3_1, diagnose, qtilde_in_GM,
)
from mtbsd.curves import compute_invariants, local_data
from mtbsd.curves.record import CurveRecord
from mtbsd.modsym.symbol import plus_symbol

record = CurveRecord(label="130.a2", model=compute_invariants(1, 0, 1, -33, 68),
                     conductor=130, rank=1, torsion_order=6,
                     tamagawa={2: 2, 5: 3, 13: 1}, sha_order=None)
p = 5

sym = plus_symbol(record)
qt = qtilde_in_GM(record.model, p, p)
C_p = local_data(record.model, p).tamagawa_cp

print("pair (%s, %d): rank %d, torsion %d, C_p = %d, q~_p class = %d"
      % (record.label, p, record.rank, record.torsion_order, C_p, qt))
for a in range(1, p):
    print("  lambda(%d, %d) = %s" % (a, p, sym.evaluate(a, p)))

for name, verdict in [
    ("C1_1", check_conj_1_1(sym, p, qt, C_p, record.rank, record.torsion_order)),
    ("C4mul", check_conj4mul(sym, p, record.rank)),
    ("C3_1mod", check_conj_3_1(sym, p, qt, C_p, record.rank, record.torsion_order)),
]:
    verdict = diagnose(verdict, record)
    print("\n%s:" % name, json.dumps(verdict.to_dict(), indent=2))
