"""Period lattices by AGM iteration and the real-period normalizer Omega_E."""

from dataclasses import dataclass

import mpmath as mp


@dataclass(frozen=True)
class PeriodData:
    omega_plus: float  # Omega_E = (1/2) * integral of |omega| over E(R)
    precision_bits: int
    rectangular: bool  # disc > 0


class Lattice:
    """Period lattice of y^2 = 4x^3 - g2 x - g3 with basis (w1, w2).

    w1 is the least positive real period; Im(w2) > 0, and either w2 is purely
    imaginary (rectangular, disc > 0) or Re(w2) = w1 / 2.
    """

    def __init__(self, w1, w2, rectangular, g2, g3):
        self.w1 = w1
        self.w2 = w2
        self.rectangular = rectangular
        self.g2 = g2
        self.g3 = g3
        # reduced basis for the p-function q-series
        self._b1, self._b2 = _reduce_basis(w1, w2)

    @property
    def tau(self):
        return self._b2 / self._b1

    def weierstrass_p(self, z):
        """p(z) for this lattice, via the u-series on a reduced basis."""
        b1, b2 = self._b1, self._b2
        tau = b2 / b1
        # write z = (a + b*tau) * b1 and reduce a, b to [-1/2, 1/2)
        m = mp.matrix([[mp.re(b1), mp.re(b2)], [mp.im(b1), mp.im(b2)]])
        ab = mp.lu_solve(m, mp.matrix([mp.re(z), mp.im(z)]))
        a = ab[0] - mp.nint(ab[0])
        b = ab[1] - mp.nint(ab[1])
        q = mp.exp(2j * mp.pi * tau)
        u = mp.exp(2j * mp.pi * (a + b * tau))
        if abs(u - 1) < mp.mpf(10) ** (-mp.mp.dps // 2):
            raise ZeroDivisionError("z is a lattice point")
        s = mp.mpf(1) / 12 + u / (1 - u) ** 2
        qn = q
        while abs(qn) > mp.mpf(10) ** (-mp.mp.dps - 10):
            s += qn * u / (1 - qn * u) ** 2 + qn / u / (1 - qn / u) ** 2 \
                - 2 * qn / (1 - qn) ** 2
            qn *= q
        return (2j * mp.pi / b1) ** 2 * s


def _reduce_basis(w1, w2):
    """Gauss-reduce the basis so that tau = b2/b1 is in the fundamental domain."""
    b1, b2 = mp.mpc(w1), mp.mpc(w2)
    for _ in range(200):
        if abs(b2) < abs(b1):
            b1, b2 = b2, b1
        mu = mp.nint(mp.re(b2 * mp.conj(b1)) / abs(b1) ** 2)
        if mu == 0:
            break
        b2 = b2 - mu * b1
    if mp.im(b2 / b1) < 0:
        b2 = -b2
    return b1, b2


def _eisenstein(q, weight):
    """E4 or E6 at the nome q."""
    coef = 240 if weight == 4 else -504
    s = mp.mpf(1)
    n = 1
    qn = q
    while abs(qn) > mp.mpf(10) ** (-mp.mp.dps - 10):
        sigma = sum(d ** (weight - 1) for d in range(1, n + 1) if n % d == 0)
        s += coef * sigma * qn
        n += 1
        qn = q ** n
    return s


def _verify_lattice(lat):
    """Check g2, g3 recovered from the basis via Eisenstein series."""
    tau = lat.tau
    q = mp.exp(2j * mp.pi * tau)
    scale = 2 * mp.pi / lat._b1
    g2 = scale ** 4 * _eisenstein(q, 4) / 12
    g3 = scale ** 6 * _eisenstein(q, 6) / 216
    tol = mp.mpf(10) ** (-mp.mp.dps + 12)
    ref = max(abs(lat.g2), abs(lat.g3), mp.mpf(1))
    assert abs(g2 - lat.g2) / max(abs(lat.g2), 1) < tol and \
        abs(g3 - lat.g3) / max(abs(lat.g3), 1) < tol, \
        "period lattice failed Eisenstein round-trip (g2 err %s, g3 err %s)" % (
            mp.nstr(abs(g2 - lat.g2) / ref), mp.nstr(abs(g3 - lat.g3) / ref))


def curve_lattice(A, B, verify=True):
    """Period lattice Lambda with g2 = -4A, g3 = -4B, i.e. the lattice for
    which x = p(z), y = p'(z)/2 parametrizes y^2 = x^3 + A x + B."""
    A, B = mp.mpf(A), mp.mpf(B)
    roots = mp.polyroots([1, 0, A, B], maxsteps=200, extraprec=mp.mp.prec)
    reals = [r for r in roots if abs(mp.im(r)) < mp.mpf(10) ** (-mp.mp.dps // 2)]
    if len(reals) == 3:
        e3, e2, e1 = sorted(mp.re(r) for r in roots)
        w1 = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
        w2 = 1j * mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
        lat = Lattice(w1, w2, True, -4 * A, -4 * B)
    else:
        e1 = mp.re(reals[0])
        pair = [r for r in roots if abs(mp.im(r)) >= mp.mpf(10) ** (-mp.mp.dps // 2)]
        rho = mp.re(pair[0])
        r = abs(e1 - pair[0])
        c = e1 - rho
        w1 = 2 * mp.pi / mp.agm(2 * mp.sqrt(r), mp.sqrt(2 * r + 2 * c))
        y1 = 2 * mp.pi / mp.agm(2 * mp.sqrt(r), mp.sqrt(2 * r - 2 * c))
        w2 = (w1 + 1j * y1) / 2
        lat = Lattice(w1, w2, False, -4 * A, -4 * B)
    if verify:
        _verify_lattice(lat)
    return lat


def model_lattice(model, verify=True):
    """Period lattice of the Neron differential dx/(2y + a1 x + a3).

    This is 6 times the lattice of the short model Y^2 = X^3 - 27 c4 X - 54 c6
    under X = 36x + 3 b2, Y = 108(2y + a1 x + a3).
    """
    lat = curve_lattice(-27 * model.c4, -54 * model.c6, verify=verify)
    return Lattice(6 * lat.w1, 6 * lat.w2, lat.rectangular,
                   lat.g2 / 6 ** 4, lat.g3 / 6 ** 6)


def period_data(model, precision_bits=128):
    """Omega_E = (1/2) * integral over E(R) of |omega| for the given model.

    For disc > 0 the real locus has two components and Omega_E equals the
    least positive real period; for disc < 0 it is half of it.
    """
    with mp.workprec(precision_bits + 32):
        lat = model_lattice(model)
        omega = lat.w1 if lat.rectangular else lat.w1 / 2
        return PeriodData(float(omega), precision_bits, lat.rectangular)


def omega_plus_mp(model, precision_bits=128):
    """Omega_E as an mpmath value at the requested working precision."""
    with mp.workprec(precision_bits + 32):
        lat = model_lattice(model)
        return +(lat.w1 if lat.rectangular else lat.w1 / 2)
