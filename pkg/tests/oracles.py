"""Independent high-precision reference computations used to freeze test values.

Nothing here imports the package under test.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    # Akiyama-Tanigawa, exact rationals; B_1 = +1/2 convention is irrelevant here
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def gamma_oracle(x, digits: int = 40):
    """Gamma(x) for x > 0 by upward shift plus the Stirling series, at ``digits`` digits."""
    with mp.workdps(digits + 15):
        x = mp.mpf(x)
        shift = 60
        z = x + shift
        # log Gamma(z) ~ (z-1/2) log z - z + log(2 pi)/2 + sum B_2k / (2k(2k-1) z^(2k-1))
        s = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
        for k in range(1, 30):
            b = _bernoulli(2 * k)
            s += mp.mpf(b.numerator) / b.denominator / (2 * k * (2 * k - 1) * z ** (2 * k - 1))
        g = mp.exp(s)
        for j in range(shift):
            g /= x + j
        return +g


def bisect_oracle(func, lo, hi, digits: int = 40, iters: int = 200):
    """Bisection in mpmath arithmetic; ``func`` must change sign on [lo, hi]."""
    with mp.workdps(digits + 10):
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        flo = func(lo)
        assert flo * func(hi) < 0
        for _ in range(iters):
            mid = (lo + hi) / 2
            fm = func(mid)
            if fm == 0:
                return mid
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return (lo + hi) / 2


def mittag_leffler_oracle(alpha, beta, z, digits: int = 40):
    """Two-parameter Mittag-Leffler function by its power series (moderate |z| only)."""
    with mp.workdps(digits + 30):
        alpha, beta, z = mp.mpf(alpha), mp.mpf(beta), mp.mpf(z)
        total = mp.mpf(0)
        k = 0
        while True:
            term = z**k / mp.gamma(alpha * k + beta)
            total += term
            if k > 10 and abs(term) < mp.mpf(10) ** (-(digits + 5)) * max(1, abs(total)):
                break
            k += 1
        return +total
