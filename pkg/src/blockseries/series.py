"""Term kernels, brute-force partial sums and rigorous tail bounds.

Every closed form elsewhere in the package is checked against the sums
computed here, so this module deliberately does not import ``closedform``
or ``symbolic``.

Partial sums are accumulated with ``math.fsum`` (exactly rounded, error-free
partials).  The result for a given ``N`` is therefore reproducible
bit-for-bit and independent of the chunking or thread layout.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .digits import Word, count_block_array

CHUNK = 1 << 20

# x - log1p(x) = sum_{k>=2} (-1)^k x^k / k, used for x = 1/n <= 1/10
_SERIES_CUTOFF = 10
_SERIES_COEFFS = np.array([(-1.0) ** k / k for k in range(2, 22)])


def _x_minus_log1p(x: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in _SERIES_COEFFS[::-1]:
        acc = acc * x + c
    return acc * x * x


def a_terms(ns) -> np.ndarray:
    """Vectorised ``a_term``: ``1/n - log((n+1)/n)`` for integer ``n >= 1``."""
    n = np.asarray(ns, dtype=np.float64)
    if n.size and n.min() < 1:
        raise ValueError("a_term needs n >= 1")
    x = 1.0 / n
    out = np.empty_like(n)
    small = n < _SERIES_CUTOFF
    out[small] = x[small] - np.log1p(x[small])
    out[~small] = _x_minus_log1p(x[~small])
    return out


def a_term(n: int) -> float:
    """``1/n - log((n+1)/n)``, accurate to a few ulps for every ``n >= 1``."""
    if n < 1:
        raise ValueError(f"a_term needs n >= 1, got {n}")
    return float(a_terms(np.array([n]))[0])


def ak_term(n: int, k: int) -> float:
    """``1/(n+k) - log((n+1)/n)``; equals ``a_term(n) - k/(n(n+k))``."""
    if n < 1:
        raise ValueError(f"ak_term needs n >= 1, got {n}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return a_term(n) - k / (n * (n + k))


def _q_base_terms(n: np.ndarray, base: int) -> np.ndarray:
    bn = base * n
    out = np.zeros_like(n)
    for j in range(1, base):
        out += j / (bn * (bn + j))
    return out


def q_base(n: int, base: int) -> float:
    """sum_{j=1}^{B-1} j / (B n (B n + j))."""
    if n < 1:
        raise ValueError(f"q_base needs n >= 1, got {n}")
    if not 2 <= base <= 16:
        raise ValueError(f"base must be in [2, 16], got {base}")
    return float(_q_base_terms(np.array([float(n)]), base)[0])


# ---------------------------------------------------------------- kernels


@dataclass(frozen=True)
class Kernel:
    """Rational term family ``n -> f(n)`` multiplied by the block count."""

    base = 2
    nonnegative = True
    kind = ""

    def terms(self, n: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def exact(self, n: int) -> Fraction:
        raise NotImplementedError

    def tail(self, m: int) -> float:
        """Upper bound on ``sum_{n > m} |f(n)|``."""
        raise NotImplementedError

    def __call__(self, n: int) -> float:
        return float(self.terms(np.array([float(n)]))[0])

    def to_json(self) -> dict:
        return {"type": self.kind}


@dataclass(frozen=True)
class Deg2(Kernel):
    kind = "deg2"

    def terms(self, n):
        return 1.0 / (2.0 * n * (2.0 * n + 1.0))

    def exact(self, n):
        return Fraction(1, 2 * n * (2 * n + 1))

    def tail(self, m):
        # 1/(2n(2n+1)) < 1/(4n(n-1)), telescoping
        return 1.0 / (4.0 * m)


@dataclass(frozen=True)
class Deg3(Kernel):
    kind = "deg3"

    def terms(self, n):
        return 1.0 / (2.0 * n * (2.0 * n + 1.0) * (2.0 * n + 2.0))

    def exact(self, n):
        return Fraction(1, 2 * n * (2 * n + 1) * (2 * n + 2))

    def tail(self, m):
        # < 1/(8 n^3) and sum_{n>m} n^-3 < 1/(2 m^2)
        return 1.0 / (16.0 * m * m)


@dataclass(frozen=True)
class NN1(Kernel):
    kind = "nn1"

    def terms(self, n):
        return 1.0 / (n * (n + 1.0))

    def exact(self, n):
        return Fraction(1, n * (n + 1))

    def tail(self, m):
        return 1.0 / (m + 1.0)


@dataclass(frozen=True)
class QBase(Kernel):
    base: int = 3
    kind = "qbase"

    def __post_init__(self):
        if not 2 <= self.base <= 16:
            raise ValueError(f"base must be in [2, 16], got {self.base}")

    def terms(self, n):
        return _q_base_terms(np.asarray(n, dtype=np.float64), self.base)

    def exact(self, n):
        B = self.base
        return sum((Fraction(j, B * n * (B * n + j)) for j in range(1, B)), Fraction(0))

    def tail(self, m):
        # Q(n,B) < (B-1)/(2 B n^2); (B-1)^2 keeps the documented, looser form
        return (self.base - 1) ** 2 / (2.0 * self.base * m)

    def to_json(self):
        return {"type": self.kind, "base": self.base}


@dataclass(frozen=True)
class QK(Kernel):
    """``A^(k)_n - A^(k)_{2n} - A^(k)_{2n+1}`` with ``A^(k)_n = 1/(n+k) - log((n+1)/n)``."""

    k: int = 1
    kind = "qk"
    nonnegative = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"k must be nonnegative, got {self.k}")

    def terms(self, n):
        n = np.asarray(n, dtype=np.float64)
        k = float(self.k)
        m = 2.0 * n
        base = 1.0 / (m * (m + 1.0))
        if self.k == 0:
            return base
        corr = -1.0 / (n * (n + k)) + 1.0 / (m * (m + k)) + 1.0 / ((m + 1.0) * (m + 1.0 + k))
        return base + k * corr

    def exact(self, n):
        k = self.k
        return (
            Fraction(1, 2 * n * (2 * n + 1))
            - Fraction(k, n * (n + k))
            + Fraction(k, 2 * n * (2 * n + k))
            + Fraction(k, (2 * n + 1) * (2 * n + 1 + k))
        )

    def tail(self, m):
        # |Q^(k)(n)| <= max(k, 1/4) / n^2
        return (self.k + 1.0) / m

    def to_json(self):
        return {"type": self.kind, "k": self.k}


_KINDS = {"deg2": Deg2, "deg3": Deg3, "nn1": NN1, "qbase": QBase, "qk": QK}


def kernel_from_json(obj: dict) -> Kernel:
    kind = obj["type"]
    if kind not in _KINDS:
        raise ValueError(f"unknown kernel type {kind!r}")
    if kind == "qbase":
        return QBase(int(obj["base"]))
    if kind == "qk":
        return QK(int(obj["k"]))
    return _KINDS[kind]()


# ---------------------------------------------------------------- sums


def tail_bound(kernel: Kernel, base: int, n_terms: int) -> float:
    """Rigorous bound on ``sum_{n > N} N_w(n) |f(n)|`` for any block ``w``.

    Uses ``N_w(n) <= #{j >= 0 : B**j <= n}`` and swaps the order of
    summation:  sum_j T(max(N, B**j - 1)) with T the kernel tail.
    """
    N = int(n_terms)
    digits = 0
    while base**digits <= N:
        digits += 1
    total = digits * kernel.tail(N)
    j = digits
    while True:
        t = kernel.tail(base**j - 1)
        total += t
        if t <= 1e-20 * total:
            # remaining terms decay at least geometrically with ratio 1/B
            total += t / (base - 1)
            return total
        j += 1


@dataclass(frozen=True)
class PartialSumResult:
    value: float
    terms: int
    tail_bound: float
    word: Word
    kernel: Kernel
    mode: str = "sequential"

    def encloses(self, x: float, slack: float = 0.0) -> bool:
        """True when ``x`` is within ``tail_bound`` of ``value``.

        For nonnegative kernels the check is one-sided, ``value <= x``.
        """
        lo = self.value - (0.0 if self.kernel.nonnegative else self.tail_bound)
        return lo - slack <= x <= self.value + self.tail_bound + slack

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "terms": self.terms,
            "tail_bound": self.tail_bound,
            "word": self.word.to_json(),
            "kernel": self.kernel.to_json(),
            "mode": self.mode,
        }


def check_compatible(w: Word, kernel: Kernel) -> None:
    if w.base != kernel.base:
        raise ValueError(
            f"kernel {kernel.kind} works in base {kernel.base}, word {w} is base {w.base}"
        )


def _chunk_terms(w: Word, kernel: Kernel, start: int, stop: int) -> list[float]:
    ns = np.arange(start, stop, dtype=np.int64)
    counts = count_block_array(ns, w)
    hit = counts != 0
    return (counts[hit] * kernel.terms(ns[hit].astype(np.float64))).tolist()


def partial_sum(
    w: Word, kernel: Kernel, n_terms: int, mode: str = "sequential", workers: int = 4
) -> PartialSumResult:
    """``sum_{n=1}^{N} N_w(n) f(n)`` together with a bound on the remainder."""
    check_compatible(w, kernel)
    N = int(n_terms)
    if N < 1:
        raise ValueError(f"need at least one term, got {n_terms}")
    if mode not in ("sequential", "parallel"):
        raise ValueError(f"unknown mode {mode!r}")
    bounds = [(s, min(s + CHUNK, N + 1)) for s in range(1, N + 1, CHUNK)]
    if mode == "parallel" and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _chunk_terms(w, kernel, *b), bounds))
    else:
        parts = [_chunk_terms(w, kernel, *b) for b in bounds]
    value = math.fsum(itertools.chain.from_iterable(parts))
    return PartialSumResult(value, N, tail_bound(kernel, w.base, N), w, kernel, mode)


def a_expansion_levels(n: int, K: int) -> list[float]:
    """Cumulative sums of the dyadic expansion of ``a_term(n)``.

    Entry ``K - 1`` is
    ``sum_{k=1}^{K} sum_{0<=m<2^(k-1)} 1/((2^k n + 2m)(2^k n + 2m + 1))``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= K <= 30:
        raise ValueError(f"K must be in [1, 30], got {K}")
    if (n << K) + (1 << K) >= 2**63:
        raise OverflowError("2^K n exceeds the 64-bit range")
    levels = []
    acc: list[float] = []
    for k in range(1, K + 1):
        size = 1 << (k - 1)
        level = []
        for s in range(0, size, CHUNK):
            m = np.arange(s, min(s + CHUNK, size), dtype=np.float64)
            d = float(n << k) + 2.0 * m
            level.append(math.fsum((1.0 / (d * (d + 1.0))).tolist()))
        acc.append(math.fsum(level))
        levels.append(math.fsum(acc))
    return levels


def a_expansion_check(n: int, K: int) -> tuple[float, float]:
    """Dyadic expansion of ``a_term(n)`` through level ``K`` and its remainder bound.

    The remainder ``sum_{0<=q<2^K} a_term(2^K n + q)`` is below ``2**-K``.
    """
    return a_expansion_levels(n, K)[-1], 2.0**-K
