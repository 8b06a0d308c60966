"""Shared fixtures and independent high-precision oracles."""

import math
from fractions import Fraction

import numpy as np
import pytest

import phasekit as pk


# ---------------------------------------------------------------------------
# oracles (kept deliberately independent of the implementation under test)
# ---------------------------------------------------------------------------

# Bernoulli numbers B_2..B_20 as exact rationals, for the Stirling series
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
]


def gamma_oracle(x: float, shift: int = 40) -> float:
    """Gamma via the Stirling series with exact rational coefficients.

    Evaluated in mpmath extended precision after shifting the argument up by
    ``shift`` to make the asymptotic series accurate, then dividing the
    Pochhammer factors back out.
    """
    import mpmath as mp

    with mp.workdps(50):
        z = mp.mpf(x) + shift
        s = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        for n, b in enumerate(_BERNOULLI, start=1):
            s += mp.mpf(b.numerator) / b.denominator / (2 * n * (2 * n - 1) * z ** (2 * n - 1))
        g = mp.e**s
        for i in range(shift):
            g /= mp.mpf(x) + i
        return float(g)


def bessel_q_oracle(x: float) -> float:
    """J_{1/4}(x) by the power series with exact rational term ratios.

    The sum S = sum (-1)^k (x/2)^{2k} / (k! (5/4)_k) is accumulated in exact
    rational arithmetic (x enters as the exact rational value of the float),
    so cancellation costs no precision; only the final (x/2)^{1/4}/Gamma(5/4)
    prefactor is floating point.
    """
    if x == 0.0:
        return 0.0
    h = Fraction(x) / 2
    h2 = h * h
    term = Fraction(1)
    s = Fraction(1)
    k = 0
    while True:
        k += 1
        term *= -h2 / (k * Fraction(4 * k + 1, 4))
        s += term
        if abs(term) < Fraction(1, 10**40) * abs(s) and k > x:
            break
        if k > 500:
            break
    return float(x / 2.0) ** 0.25 / math.gamma(1.25) * float(s)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)


def random_unit_state(n, basis, rng, kind=None):
    c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    c /= math.sqrt(float(np.sum(np.abs(c) ** 2)))
    return pk.AngularState(n, basis, c, kind=kind)


# ---------------------------------------------------------------------------
# shared heavyweight objects
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def optimal_1600_dist():
    return pk.distribution(pk.make_state(1600, "optimal", "y"))


@pytest.fixture(scope="session")
def j0_4096_dist():
    return pk.distribution(pk.make_state(4096, "j0", "z"))


@pytest.fixture(scope="session")
def j0_25600_dist():
    return pk.distribution(pk.make_state(25600, "j0", "z"))


@pytest.fixture(scope="session")
def optimal_constants():
    return pk.scaling_constants("optimal")


@pytest.fixture(scope="session")
def j0_constants():
    return pk.scaling_constants("j0")
