"""Real special functions and three closed-form summation identities.

``log_gamma`` and ``digamma`` are evaluated by shifting the argument to
``x >= 8`` with the recurrences and applying the asymptotic Stirling series
with Bernoulli coefficients through ``B_14``.  Near the zeros of the two
functions the shift loses relative accuracy, so there Taylor expansions are
used instead (around ``x = 1, 2`` for log-gamma and around the positive
digamma root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

# 30-digit reference constants.
EULER_GAMMA_STR = "0.577215664901532860606512090082"
LOG2_STR = "0.693147180559945309417232121458"
LOGPI_STR = "1.144729885849400174143427351353"

EULER_GAMMA = float(EULER_GAMMA_STR)
LOG2 = float(LOG2_STR)
LOGPI = float(LOGPI_STR)

# positive zero of digamma, split so that x - root is accurate to ~1e-32
_DIGAMMA_ROOT_STR = "1.461632144968362341262659542325721328"
_DIGAMMA_ROOT_HI = float(_DIGAMMA_ROOT_STR)
_DIGAMMA_ROOT_LO = float(Fraction(_DIGAMMA_ROOT_STR) - Fraction(_DIGAMMA_ROOT_HI))

_SHIFT_TO = 8.0
_STIRLING_ORDER = 7  # B_2 .. B_14
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` (with ``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    # Akiyama-Tanigawa
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if n == 1 else b


_LGAMMA_COEFFS = tuple(
    float(bernoulli(2 * j) / (2 * j * (2 * j - 1))) for j in range(1, _STIRLING_ORDER + 1)
)
_DIGAMMA_COEFFS = tuple(
    float(bernoulli(2 * j) / (2 * j)) for j in range(1, _STIRLING_ORDER + 1)
)


def _check_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be positive and finite, got {x!r}")
    return x


def _hurwitz_zeta(s: int, x: float) -> float:
    """sum_{n>=0} (n + x)**-s for integer s >= 2 and x > 0 (Euler-Maclaurin)."""
    N = 10
    total = math.fsum((n + x) ** -s for n in range(N))
    y = N + x
    tail = y ** (1 - s) / (s - 1) + 0.5 * y**-s
    rising = float(s)  # s (s+1) ... (s+2j-2)
    for j in range(1, 8):
        tail += float(bernoulli(2 * j) / math.factorial(2 * j)) * rising * y ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total + tail


# log Gamma(1 + z) = (1 - gamma) z - log1p(z) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
_ZETA_M1 = tuple(_hurwitz_zeta(k, 2.0) for k in range(2, 40))


def _lgamma_near_one(z: float) -> float:
    acc = 0.0
    zk = z
    for k in range(2, 40):
        zk *= z
        term = _ZETA_M1[k - 2] * zk / k
        acc += term if k % 2 == 0 else -term
        if abs(term) < 1e-18 * abs(z):
            break
    return (1.0 - EULER_GAMMA) * z - math.log1p(z) + acc


# psi(x) = sum_{m>=1} (-1)^(m+1) zeta(m+1, root) (x - root)^m
_PSI_ROOT_COEFFS = tuple(
    (1.0 if m % 2 else -1.0) * _hurwitz_zeta(m + 1, _DIGAMMA_ROOT_HI) for m in range(1, 60)
)


def _digamma_near_root(x: float) -> float:
    t = (x - _DIGAMMA_ROOT_HI) - _DIGAMMA_ROOT_LO
    acc = 0.0
    for c in reversed(_PSI_ROOT_COEFFS):
        acc = acc * t + c
    return acc * t


def _stirling_lgamma(x: float) -> float:
    r = 1.0 / x
    r2 = r * r
    s = 0.0
    for c in reversed(_LGAMMA_COEFFS):
        s = s * r2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + s * r


def _stirling_digamma(x: float) -> float:
    r2 = 1.0 / (x * x)
    s = 0.0
    for c in reversed(_DIGAMMA_COEFFS):
        s = s * r2 + c
    return math.log(x) - 0.5 / x - s * r2


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for real ``x > 0``."""
    x = _check_positive(x)
    if 0.5 <= x <= 1.5:
        return _lgamma_near_one(x - 1.0)
    if 1.5 < x <= 2.5:
        z = x - 2.0
        return math.log1p(z) + _lgamma_near_one(z)
    if x >= _SHIFT_TO:
        return _stirling_lgamma(x)
    prod = 1.0
    while x < _SHIFT_TO:
        prod *= x
        x += 1.0
    return _stirling_lgamma(x) - math.log(prod)


def digamma(x: float) -> float:
    """Logarithmic derivative of the gamma function for real ``x > 0``."""
    x = _check_positive(x)
    if abs(x - _DIGAMMA_ROOT_HI) <= 0.25:
        return _digamma_near_root(x)
    if x >= _SHIFT_TO:
        return _stirling_digamma(x)
    terms = []
    while x < _SHIFT_TO:
        terms.append(1.0 / x)
        x += 1.0
    return _stirling_digamma(x) - math.fsum(terms)


@dataclass(frozen=True)
class GaussTerm:
    kind: str  # "gamma", "log", "cot", "cos-log-sin"
    value: float
    k: int | None = None
    label: str = ""


def gauss_digamma(p: int, q: int) -> tuple[float, list[GaussTerm]]:
    """Digamma at ``p/q`` from Gauss's finite formula.

    psi(p/q) = -gamma - log(2q) - (pi/2) cot(pi p/q)
               + 2 sum_{0<k<q/2} cos(2 pi k p/q) log sin(pi k/q)

    Returns the numeric value together with every summand.
    """
    if int(p) != p or int(q) != q:
        raise TypeError("p and q must be integers")
    p, q = int(p), int(q)
    if p <= 0 or q <= 0 or p >= q:
        raise ValueError(f"need 0 < p < q, got p={p}, q={q}")
    g = math.gcd(p, q)
    p, q = p // g, q // g
    terms = [
        GaussTerm("gamma", -EULER_GAMMA, label="-gamma"),
        GaussTerm("log", -math.log(2 * q), label=f"-log {2 * q}"),
    ]
    if 2 * p != q:
        cot = math.cos(math.pi * p / q) / math.sin(math.pi * p / q)
        terms.append(GaussTerm("cot", -0.5 * math.pi * cot, label=f"-pi/2 cot(pi {p}/{q})"))
    for k in range(1, (q - 1) // 2 + 1):
        c = math.cos(2.0 * math.pi * k * p / q)
        terms.append(
            GaussTerm(
                "cos-log-sin",
                2.0 * c * math.log(math.sin(math.pi * k / q)),
                k=k,
                label=f"2 cos(2 pi {k}*{p}/{q}) log sin(pi {k}/{q})",
            )
        )
    return math.fsum(t.value for t in terms), terms


def reciprocal_diff_sum(a: float, b: float) -> float:
    """sum_{n>=1} (1/(a n) - 1/(a n + b)) for a, b > 0."""
    a = _check_positive(a, "a")
    b = _check_positive(b, "b")
    return 1.0 / b + (EULER_GAMMA + digamma(b / a)) / a


def weierstrass_sum(x: float) -> float:
    """sum_{r>=1} (x/r - log(1 + x/r)) for x > 0."""
    x = _check_positive(x)
    return math.fsum((math.log(x), EULER_GAMMA * x, log_gamma(x)))


def a_tail_sum(a: float, b: float = 0.0) -> float:
    """Sum of ``1/m - log((m+1)/m)`` over ``m = a n + b``.

    For ``b == 0`` the sum runs over ``n >= 1``, otherwise over ``n >= 0``.
    """
    a = _check_positive(a, "a")
    b = float(b)
    if not math.isfinite(b) or b < 0.0:
        raise ValueError(f"b must be nonnegative and finite, got {b!r}")
    if b == 0.0:
        return math.fsum((log_gamma(1.0 / a), EULER_GAMMA / a, -math.log(a)))
    return math.fsum(
        (log_gamma((b + 1.0) / a), -log_gamma(b / a), -digamma(b / a) / a)
    )
