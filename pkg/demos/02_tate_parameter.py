"""The p-adic Tate parameter and Lemma 2.9.

For a curve with split multiplicative reduction at p, the Tate
parametrization attaches a p-adic number q_p with 0 < |q_p| < 1; its
valuation equals the Tamagawa number C_p, and its unit part reduces to the
class q~_p that appears on the right-hand side of the refined conjectures.

Shown here on 680.c1 at p = 5 (one of the featured curves) and 11.a2 at 11.

Equivalent CLI:  mtbsd --dataset data/curves.jsonl tate-q --curve 680.c1 --prime 5 --digits 5
"""

from mtbsd.conjectures import qtilde_in_GM
from mtbsd.curves import compute_invariants, local_data
from mtbsd.padic import tate_parameter, unit_part

CURVES = [
    ("680.c1", (0, -1, 0, -3540, -79900), 5),
    ("11.a2", (0, -1, 1, -10, -20), 11),
]

for label, ainvs, p in CURVES:
    model = compute_invariants(*ainvs)
    ld = local_data(model, p)
    q = tate_parameter(model, p)
    print("%s at p=%d:" % (label, p))
    print("  q_p =", q)
    print("  ord_p(q_p) = %d, Tamagawa C_p = %d  (Lemma 2.9: must agree)"
          % (q.valuation, ld.tamagawa_cp))
    _, unit = unit_part(q)
    print("  reduced class q~_p in G_%d: %d" % (p, qtilde_in_GM(model, p, p)))
    print()
