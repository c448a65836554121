"""The dyadic sequence transform and the weighted sums it connects.

Two sequences ``r`` and ``R`` (indexed from 1, with ``r_0 = R_0 = 0``) are
related by

    R_i = r_i + r_{i//2} + r_{i//4} + ...      (forward)
    r_n = R_n - R_{n//2}                        (inverse)

and then ``sum_n r_n A_n = sum_i R_i / (2i(2i+1))`` where
``A_n = 1/n - log((n+1)/n)``.

Sequences are exact: a ``RationalSequence`` stores integer numerators over
one common denominator, which keeps the transforms vectorised and exact.
Infinite sequences are given as rules (``PeriodicRule``, ``ForwardRule``,
``BlockCountRule``); a finite table is never silently padded.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .digits import Word, count_block_array
from .series import CHUNK, a_terms
from .symbolic import SymbolicConstant, a_tail_symbolic, log_rational, rational

_INT64_SAFE = 2**56


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass Fraction, int or 'p/q' strings")
    return Fraction(x)


class RationalSequence:
    """Finite sequence ``x_1 .. x_M`` of rationals with a common denominator."""

    __slots__ = ("numerators", "denominator")

    def __init__(self, numerators, denominator: int = 1):
        num = np.asarray(numerators)
        if num.dtype.kind not in "iO":
            raise TypeError("numerators must be integers")
        den = int(denominator)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num.size == 0:
            g = den
        elif num.dtype == object:
            g = math.gcd(den, *(int(x) for x in num))
        else:
            g = int(np.gcd.reduce(np.append(np.abs(num), den)))
        if g > 1:
            num = num // g
            den //= g
        self.numerators = _compact(num)
        self.denominator = den

    @classmethod
    def from_values(cls, values: Iterable) -> RationalSequence:
        fr = [_to_fraction(v) for v in values]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        nums = [f.numerator * (den // f.denominator) for f in fr]
        return cls(_compact(np.array(nums, dtype=object)), den)

    @classmethod
    def coerce(cls, seq) -> RationalSequence:
        if isinstance(seq, RationalSequence):
            return seq
        return cls.from_values(seq)

    def __len__(self) -> int:
        return int(self.numerators.size)

    def __getitem__(self, i: int) -> Fraction:
        if not 1 <= i <= len(self):
            raise IndexError(f"index {i} outside 1..{len(self)}")
        return Fraction(int(self.numerators[i - 1]), self.denominator)

    def to_fractions(self) -> list[Fraction]:
        return [Fraction(int(x), self.denominator) for x in self.numerators]

    def floats(self) -> np.ndarray:
        return self.numerators.astype(np.float64) / self.denominator

    def floats_at(self, idx: np.ndarray) -> np.ndarray:
        """Values at 1-based indices ``idx``; index 0 reads as 0."""
        idx = np.asarray(idx)
        if idx.size and idx.max() > len(self):
            raise ValueError(
                f"finite table of length {len(self)} queried at index {int(idx.max())}"
            )
        padded = np.concatenate(([0.0], self.floats()))
        return padded[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSequence):
            return NotImplemented
        return (
            self.denominator == other.denominator
            and len(self) == len(other)
            and bool(np.all(self.numerators == other.numerators))
        )

    def __repr__(self) -> str:
        head = ", ".join(str(f) for f in self.to_fractions()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"RationalSequence([{head}{more}])"

    def to_json(self) -> list[str]:
        return [f"{f.numerator}/{f.denominator}" for f in self.to_fractions()]


def _compact(num: np.ndarray) -> np.ndarray:
    """Store as int64 when small enough, Python ints otherwise."""
    if num.size == 0:
        return np.zeros(0, dtype=np.int64)
    if num.dtype == object:
        lo, hi = min(num), max(num)
        if -_INT64_SAFE < lo and hi < _INT64_SAFE:
            return num.astype(np.int64)
        return num
    if np.abs(num).max() < _INT64_SAFE:
        return num.astype(np.int64)
    return num.astype(object)


def _widen(num: np.ndarray, levels: int) -> np.ndarray:
    # forward sums at most `levels` entries; avoid int64 overflow
    if num.dtype != object and num.size and np.abs(num).max() * (levels + 1) >= 2**62:
        return num.astype(object)
    return num


def forward(r, M: int | None = None) -> RationalSequence:
    """``R_i = sum_{k>=0} r_{floor(i/2^k)}`` for ``i = 1..M``.

    ``r`` may be a finite sequence of rationals or a rule with ``take``.
    Computed level by level through ``R_i = r_i + R_{i//2}``.
    """
    r = _materialise(r, M)
    M = len(r)
    num = _widen(r.numerators, M.bit_length())
    R = np.concatenate((np.zeros(1, dtype=num.dtype), num))
    lo = 2
    while lo <= M:
        hi = min(2 * lo, M + 1)
        idx = np.arange(lo, hi)
        R[idx] += R[idx >> 1]
        lo *= 2
    return RationalSequence(R[1:], r.denominator)


def inverse(R, M: int | None = None) -> RationalSequence:
    """``r_n = R_n - R_{n//2}`` for ``n = 1..M``."""
    R = _materialise(R, M)
    M = len(R)
    num = _widen(R.numerators, 1)
    padded = np.concatenate((np.zeros(1, dtype=num.dtype), num))
    idx = np.arange(1, M + 1)
    return RationalSequence(padded[idx] - padded[idx >> 1], R.denominator)


def _materialise(seq, M: int | None) -> RationalSequence:
    if hasattr(seq, "take"):
        if M is None:
            raise ValueError("a rule needs an explicit length M")
        return seq.take(M)
    seq = RationalSequence.coerce(seq)
    if M is None:
        M = len(seq)
    if M < 1:
        raise ValueError("length must be at least 1")
    if M > len(seq):
        raise ValueError(f"table has {len(seq)} entries, {M} requested")
    if M == len(seq):
        return seq
    return RationalSequence(seq.numerators[:M], seq.denominator)


# ---------------------------------------------------------------- rules


@dataclass(frozen=True)
class PeriodicRule:
    """Ultimately periodic ``r_1, r_2, ...``: a preperiod then a repeating block."""

    preperiod: tuple[Fraction, ...]
    period: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")
        object.__setattr__(self, "preperiod", tuple(_to_fraction(x) for x in self.preperiod))
        object.__setattr__(self, "period", tuple(_to_fraction(x) for x in self.period))

    @classmethod
    def constant(cls, value=1) -> PeriodicRule:
        return cls((), (value,))

    def value(self, n: int) -> Fraction:
        if n < 1:
            return Fraction(0)
        p = len(self.preperiod)
        if n <= p:
            return self.preperiod[n - 1]
        return self.period[(n - 1 - p) % len(self.period)]

    def take(self, M: int) -> RationalSequence:
        table = RationalSequence.from_values(self.preperiod + self.period)
        idx = self._positions(np.arange(1, M + 1))
        return RationalSequence(table.numerators[idx], table.denominator)

    def _positions(self, n: np.ndarray) -> np.ndarray:
        p, q = len(self.preperiod), len(self.period)
        return np.where(n <= p, n - 1, p + (n - 1 - p) % q)

    def floats_at(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        table = np.array([float(x) for x in self.preperiod + self.period])
        out = np.zeros(idx.shape)
        pos = idx >= 1
        out[pos] = table[self._positions(idx[pos])]
        return out

    def to_json(self) -> dict:
        f = lambda x: f"{x.numerator}/{x.denominator}"  # noqa: E731
        return {"preperiod": [f(x) for x in self.preperiod], "period": [f(x) for x in self.period]}

    @classmethod
    def from_json(cls, obj: dict) -> PeriodicRule:
        return cls(tuple(obj.get("preperiod", ())), tuple(obj["period"]))


@dataclass(frozen=True)
class ForwardRule:
    """``R`` defined from a rule for ``r`` through the forward transform."""

    r: PeriodicRule

    def take(self, M: int) -> RationalSequence:
        return forward(self.r, M)

    def floats_at(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64).copy()
        out = np.zeros(idx.shape)
        while idx.size and idx.max() > 0:
            out += self.r.floats_at(idx)
            idx >>= 1
        return out

    def floats_range(self, start: int, stop: int) -> np.ndarray:
        """Values for ``start <= i < stop`` via ``R_i = r_i + R_{i//2}``.

        The parents of a contiguous range form a range half as long, so the
        cost is about twice the length of the range.
        """
        if stop <= start:
            return np.zeros(0)
        idx = np.arange(start, stop, dtype=np.int64)
        out = self.r.floats_at(idx)
        if stop - 1 <= 0:
            return out
        p_lo, p_hi = start >> 1, ((stop - 1) >> 1) + 1
        parents = self.floats_range(p_lo, p_hi)
        return out + parents[(idx >> 1) - p_lo]


@dataclass(frozen=True)
class BlockCountRule:
    """``R_i = N_{w,2}(i)``."""

    word: Word

    def take(self, M: int) -> RationalSequence:
        return RationalSequence(count_block_array(np.arange(1, M + 1), self.word))

    def floats_at(self, idx: np.ndarray) -> np.ndarray:
        return count_block_array(np.asarray(idx), self.word).astype(np.float64)


# ---------------------------------------------------------------- sums


def _values(seq, start: int, stop: int) -> np.ndarray:
    if hasattr(seq, "floats_range"):
        return seq.floats_range(start, stop)
    return seq.floats_at(np.arange(start, stop, dtype=np.int64))


def _prefix_fsums(checkpoints, fn) -> list[float]:
    """``fsum`` of ``fn`` terms over ``1..N`` for every ``N`` in ``checkpoints``."""
    cps = [int(c) for c in checkpoints]
    if any(c < 0 for c in cps):
        raise ValueError("number of terms must be nonnegative")
    top = max(cps, default=0)
    terms: list[float] = []
    for s in range(1, top + 1, CHUNK):
        terms.extend(fn(s, min(s + CHUNK, top + 1)).tolist())
    return [math.fsum(itertools.islice(terms, c)) for c in cps]


def _lhs_terms(r):
    r = r if hasattr(r, "floats_at") else RationalSequence.coerce(r)
    return lambda s, e: _values(r, s, e) * a_terms(np.arange(s, e))


def _rhs_terms(R):
    R = R if hasattr(R, "floats_at") else RationalSequence.coerce(R)

    def terms(s, e):
        x = np.arange(s, e, dtype=np.float64)
        return _values(R, s, e) / (2.0 * x * (2.0 * x + 1.0))

    return terms


def weighted_sum_lhs(r, n_terms: int) -> float:
    """``sum_{n=1}^{N} r_n (1/n - log((n+1)/n))``."""
    return _prefix_fsums([n_terms], _lhs_terms(r))[0]


def weighted_sum_rhs(R, n_terms: int) -> float:
    """``sum_{i=1}^{N} R_i / (2i(2i+1))``."""
    return _prefix_fsums([n_terms], _rhs_terms(R))[0]


def weighted_sums_lhs(r, checkpoints) -> list[float]:
    """``weighted_sum_lhs`` at several truncation points in one pass."""
    return _prefix_fsums(checkpoints, _lhs_terms(r))


def weighted_sums_rhs(R, checkpoints) -> list[float]:
    """``weighted_sum_rhs`` at several truncation points in one pass."""
    return _prefix_fsums(checkpoints, _rhs_terms(R))


def periodic_series_constant(rule: PeriodicRule) -> SymbolicConstant:
    """Exact value of ``sum_{n>=1} r_n A_n`` for an ultimately periodic ``r``.

    The preperiod contributes finitely many ``A_n = 1/n - log(n+1) + log n``;
    each residue class ``n = p + c + q m`` of the periodic part is an
    arithmetic progression summed in closed form.
    """
    p, q = len(rule.preperiod), len(rule.period)
    total = SymbolicConstant()
    for n, x in enumerate(rule.preperiod, start=1):
        if x:
            total += (rational(Fraction(1, n)) - log_rational(Fraction(n + 1, n))) * x
    for c, x in enumerate(rule.period, start=1):
        if not x:
            continue
        total += a_tail_symbolic(q, p + c) * x
    return total


def r_for_word(w: Word, limit: int) -> np.ndarray:
    """``r_n = N_w(n) - N_w(n // 2)`` for ``n = 1..limit`` (int64 array)."""
    if w.base != 2:
        raise ValueError("the dyadic transform needs a base-2 word")
    n = np.arange(0, limit + 1, dtype=np.int64)
    counts = count_block_array(n, w)
    return counts[1:] - counts[n[1:] >> 1]


def periodic_r_for_word(w: Word, limit: int | None = None) -> PeriodicRule | None:
    """Detect ``r`` as an ultimately periodic rule when ``R_i = N_{w,2}(i)``.

    Searches periods ``q <= 2^(|w|+1)`` in increasing order and, for the
    first one that fits, the shortest preperiod.  The periodic part must
    cover at least half of ``1..limit`` and at least two full periods, so a
    long preperiod cannot absorb a mismatch.  Returns ``None`` if nothing fits.
    """
    L = len(w)
    q_max = 2 ** (L + 1)
    if limit is None:
        limit = 4 * 2**L
    if limit < 4 * 2**L:
        raise ValueError(f"limit must be at least {4 * 2**L} for a word of length {L}")
    r = r_for_word(w, limit)
    for q in range(1, q_max + 1):
        bad = np.nonzero(r[:-q] != r[q:])[0]
        p = int(bad[-1]) + 1 if bad.size else 0
        if p <= limit // 2 and p + 2 * q <= limit:
            pre = tuple(int(x) for x in r[:p])
            per = tuple(int(x) for x in r[p : p + q])
            return PeriodicRule(pre, per)
    return None
