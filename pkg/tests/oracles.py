"""Independent extended-precision reference values.

Nothing here imports the package under test.
"""
import mpmath as mp

DPS = 50


def bessel_series(order: int, z: float) -> float:
    """I_order(z) from its ascending series in 50-digit arithmetic.

    Summation stops once the remaining terms are bounded by a geometric tail
    below 1e-30 of the sum (term ratios decrease monotonically past k > z/2).
    """
    if z == 0:
        return 1.0 if order == 0 else 0.0
    with mp.workdps(DPS):
        z = mp.mpf(z)
        q = (z / 2) ** 2
        term = (z / 2) ** order / mp.factorial(order)
        total = term
        k = 0
        while True:
            k += 1
            term = term * q / (k * (k + order))
            total += term
            ratio = q / ((k + 1) * (k + 1 + order))
            if ratio < 0.5 and term * ratio / (1 - ratio) < mp.mpf("1e-30") * total:
                return float(total)


def log_cosh(y: float) -> float:
    with mp.workdps(DPS):
        return float(mp.log(mp.cosh(mp.mpf(y))))


def acosh_exp(u: float) -> float:
    with mp.workdps(DPS):
        return float(mp.acosh(mp.exp(mp.mpf(u))))
