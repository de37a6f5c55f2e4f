"""Global minimal models via the Laska-Kraus-Connell reduction."""

from math import gcd

from sympy import factorint

from .weierstrass import (CurveModel, compute_invariants, curve_from_c_invariants,
                          valuation)


def minimal_model(model):
    """Return the global minimal model of `model`, in reduced standard form.

    Reduced standard form: a1, a3 in {0, 1} and a2 in {-1, 0, 1}.  The result
    is unique, so this function is idempotent on its own output.
    """
    c4, c6 = model.c4, model.c6
    u = 1
    if c4 == 0:
        primes = factorint(abs(c6)).items()
        for p, e in primes:
            u *= p ** (e // 6)
    elif c6 == 0:
        for p, e in factorint(abs(c4)).items():
            u *= p ** (e // 4)
    else:
        for p in factorint(gcd(abs(c4), abs(c6))):
            u *= p ** min(valuation(c4, p) // 4, valuation(c6, p) // 6)
    # Kraus' conditions can fail at 2 and 3 only; back off there if needed.
    for d in (1, 2, 3, 6):
        if u % d:
            continue
        v = u // d
        try:
            return curve_from_c_invariants(c4 // v**4, c6 // v**6)
        except ValueError:
            continue
    raise AssertionError("Laska-Kraus-Connell reduction failed for %r" % (model,))


def is_minimal(model):
    return minimal_model(model).ainvs == reduced_form(model).ainvs


def reduced_form(model):
    """The unique reduced standard model isomorphic to `model` with u = 1."""
    return curve_from_c_invariants(model.c4, model.c6)
