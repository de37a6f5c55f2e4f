"""The projective line P^1(Z/NZ): normalized representatives and lookup."""

from math import gcd


def p1_normalize(N, c, d):
    """Canonical representative of (c:d) in P^1(Z/NZ).

    Representatives have c a divisor of N; among the unit multiples fixing c
    the one with least d is chosen.  Returns None if gcd(c, d, N) > 1.
    """
    if N == 1:
        return (0, 0)
    c %= N
    d %= N
    if gcd(gcd(c, d), N) != 1:
        return None
    if c == 0:
        return (0, 1)
    g = gcd(c, N)
    # find a unit t mod N with t*c = g: c/g is a unit mod N/g; lift it
    cg = (c // g) % (N // g)
    t = pow(cg, -1, N // g)
    # make t a unit mod N (t is only determined mod N/g)
    while gcd(t, N) != 1:
        t += N // g
    d = t * d % N
    # remaining freedom: units u = 1 mod N/g
    best = d
    step = N // g
    for k in range(1, g):
        u = 1 + k * step
        if gcd(u, N) != 1:
            continue
        cand = u * d % N
        if cand < best:
            best = cand
    return (g, best)


def p1_list(N):
    """All normalized representatives of P^1(Z/NZ), sorted."""
    if N == 1:
        return [(0, 0)]
    reps = {(0, 1), (1, 0)}
    divs = [g for g in range(1, N + 1) if N % g == 0]
    for g in divs:
        for d in range(N):
            r = p1_normalize(N, g, d)
            if r is not None:
                reps.add(r)
    out = sorted(reps)
    index = N
    for p in _prime_divisors(N):
        index = index // p * (p + 1)
    assert len(out) == index, (N, len(out), index)
    return out


def _prime_divisors(N):
    out = []
    n = N
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out
