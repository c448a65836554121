import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from blockseries import special
from blockseries.series import a_terms

mpmath.mp.dps = 30

GRID = np.concatenate(
    [np.geomspace(1e-3, 1e3, 120), np.linspace(0.4, 2.6, 90), [1.0, 2.0, 1.4616321449683622]]
)


def test_constants_match_mpmath():
    assert special.EULER_GAMMA == float(mpmath.euler)
    assert special.LOG2 == float(mpmath.log(2))
    assert special.LOGPI == float(mpmath.log(mpmath.pi))


def test_bernoulli_numbers():
    assert special.bernoulli(0) == 1
    assert special.bernoulli(1) == Fraction(-1, 2)
    assert special.bernoulli(2) == Fraction(1, 6)
    assert special.bernoulli(12) == Fraction(-691, 2730)
    assert special.bernoulli(7) == 0


@pytest.mark.parametrize("x", GRID)
def test_log_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    assert abs(special.log_gamma(x) - ref) <= 3e-14 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", GRID)
def test_digamma_against_mpmath(x):
    ref = float(mpmath.digamma(mpmath.mpf(x)))
    assert abs(special.digamma(x) - ref) <= 3e-14 * max(1.0, abs(ref))


def test_zeros_keep_relative_accuracy():
    assert special.log_gamma(1.0) == 0.0
    assert special.log_gamma(2.0) == 0.0
    x = 1.0 + 1e-9
    assert special.log_gamma(x) == pytest.approx(float(mpmath.loggamma(mpmath.mpf(x))), rel=1e-12)
    r = 1.4616321449683622 + 1e-10
    assert special.digamma(r) == pytest.approx(float(mpmath.digamma(mpmath.mpf(r))), rel=1e-8)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_domain_errors(bad):
    with pytest.raises(ValueError):
        special.log_gamma(bad)
    with pytest.raises(ValueError):
        special.digamma(bad)


def test_half_values():
    assert special.log_gamma(0.5) == pytest.approx(0.5 * special.LOGPI, abs=1e-15)
    assert special.digamma(0.5) == pytest.approx(-1.963510026021423, abs=1e-14)


def reduced_fractions(qmax):
    return [(p, q) for q in range(2, qmax + 1) for p in range(1, q) if math.gcd(p, q) == 1]


@pytest.mark.parametrize("p, q", reduced_fractions(12))
def test_gauss_digamma_against_mpmath(p, q):
    value, terms = special.gauss_digamma(p, q)
    ref = float(mpmath.digamma(mpmath.mpf(p) / q))
    assert abs(value - ref) <= 1e-13 * abs(ref)
    assert math.fsum(t.value for t in terms) == value
    # cos-log-sin terms run over 0 < k < q/2
    ks = [t.k for t in terms if t.kind == "cos-log-sin"]
    assert ks == list(range(1, (q - 1) // 2 + 1))


def test_gauss_digamma_reduces_and_validates():
    assert special.gauss_digamma(2, 4)[0] == special.gauss_digamma(1, 2)[0]
    for bad in [(0, 3), (3, 3), (4, 3), (-1, 2)]:
        with pytest.raises(ValueError):
            special.gauss_digamma(*bad)


# the closed-form summation identities against direct summation: 10^6 terms plus the tail
# 1/m - log(1 + 1/m) = sum_{j>=2} (-1)^j m^-j / j, summed with Hurwitz zeta

def brute_a_tail(a, b, N=10**6):
    start = 1 if b == 0 else 0
    n = np.arange(start, N, dtype=np.float64)
    head = math.fsum(a_terms(a * n + b).tolist())
    x = mpmath.mpf(N) + mpmath.mpf(b) / a
    tail = sum((-1) ** j * mpmath.zeta(j, x) / (j * mpmath.mpf(a) ** j) for j in range(2, 8))
    return head + float(tail)


@pytest.mark.parametrize("a, b", [(2, 0), (2, 1), (4, 3), (3, 2), (8, 5), (9, 0)])
def test_a_tail_sum_against_summation(a, b):
    assert special.a_tail_sum(a, b) == pytest.approx(brute_a_tail(a, b), abs=1e-12)


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0), (3.0, 0.5)])
def test_reciprocal_diff_sum(a, b):
    ref = mpmath.nsum(lambda n: 1 / (a * n) - 1 / (a * n + b), [1, mpmath.inf])
    assert special.reciprocal_diff_sum(a, b) == pytest.approx(float(ref), abs=1e-12)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0, 3.0])
def test_weierstrass_sum(x):
    ref = mpmath.nsum(lambda r: x / r - mpmath.log(1 + x / r), [1, mpmath.inf])
    assert special.weierstrass_sum(x) == pytest.approx(float(ref), abs=1e-12)


def test_a_tail_sum_validation():
    with pytest.raises(ValueError):
        special.a_tail_sum(0.0, 1.0)
    with pytest.raises(ValueError):
        special.a_tail_sum(2.0, -1.0)
