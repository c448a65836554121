"""Closed forms of block-counting series as exact symbolic constants.

With ``a = B**|w|`` and ``b = v_B(w)`` every series here reduces to a sum of
``f(a n + b)`` over ``n >= 1`` (zero blocks) or ``n >= 0`` (all others),
for a function ``f`` whose dyadic (or B-adic) difference is the kernel.
"""

from __future__ import annotations

from fractions import Fraction

from . import symbolic as sym
from .digits import Word
from .symbolic import (
    GAMMA,
    SymbolicConstant,
    a_tail_symbolic,
    digamma_rat,
    log_gamma_rat,
    log_rational,
)


def _require_base(w: Word, base: int) -> None:
    if w.base != base:
        raise ValueError(f"word {w} must be in base {base}")


def _progression(w: Word) -> tuple[int, int]:
    return w.base ** len(w), w.value()


def block_series_base(w: Word, base: int | None = None) -> SymbolicConstant:
    """sum_{n>=1} N_{w,B}(n) Q(n,B)."""
    if base is not None:
        _require_base(w, base)
    return a_tail_symbolic(*_progression(w))


def block_series_deg2(w: Word) -> SymbolicConstant:
    """sum_{n>=1} N_{w,2}(n) / (2n(2n+1))."""
    _require_base(w, 2)
    return block_series_base(w, 2)


def block_series_deg3(w: Word) -> SymbolicConstant:
    """sum_{n>=1} N_{w,2}(n) / (2n(2n+1)(2n+2))."""
    _require_base(w, 2)
    a, v = _progression(w)
    inv = Fraction(1, a)
    half_inv = Fraction(1, 2 * a)
    if v == 0:
        return (
            log_gamma_rat(inv)
            + GAMMA * half_inv
            - log_rational(a)
            - digamma_rat(inv) * half_inv
            - sym.rational(Fraction(1, 2))
        )
    lo, hi = Fraction(v, a), Fraction(v + 1, a)
    return (
        log_gamma_rat(hi)
        - log_gamma_rat(lo)
        - (digamma_rat(lo) + digamma_rat(hi)) * half_inv
    )


def block_series_nn1(w: Word) -> SymbolicConstant:
    """sum_{n>=1} N_{w,2}(n) / (n(n+1))."""
    _require_base(w, 2)
    a, v = _progression(w)
    factor = Fraction(2, a)  # 1 / 2^(|w|-1)
    if v == 0:
        return (digamma_rat(Fraction(1, a)) + GAMMA + sym.rational(a)) * factor
    return (digamma_rat(Fraction(v + 1, a)) - digamma_rat(Fraction(v, a))) * factor


def block_series_qk(w: Word, k: int) -> SymbolicConstant:
    """sum_{n>=1} N_{w,2}(n) Q^(k)(n).

    Summing ``A^(k)_m = A_m + 1/(m+k) - 1/m`` over ``m = a n + b`` gives
    the ``k = 0`` value plus a digamma difference:

        b > 0:  (Psi(b/a) - Psi((b+k)/a)) / a
        b = 0:  -(Psi(1 + k/a) + gamma) / a
    """
    _require_base(w, 2)
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    a, b = _progression(w)
    inv = Fraction(1, a)
    if b == 0:
        extra = -(digamma_rat(1 + Fraction(k, a)) + GAMMA) * inv
    else:
        extra = (digamma_rat(Fraction(b, a)) - digamma_rat(Fraction(b + k, a))) * inv
    return a_tail_symbolic(a, b) + extra


_ONE = Word(2, (1,))
_ZERO = Word(2, (0,))


def gamma_pm() -> tuple[SymbolicConstant, SymbolicConstant]:
    """(sum of (N_1 + N_0) / (2n(2n+1)), sum of (N_1 - N_0) / (2n(2n+1)))."""
    one, zero = block_series_deg2(_ONE), block_series_deg2(_ZERO)
    return one + zero, one - zero


def delta_pm() -> tuple[SymbolicConstant, SymbolicConstant]:
    """Same as ``gamma_pm`` with the kernel 1/(2n(2n+1)(2n+2))."""
    one, zero = block_series_deg3(_ONE), block_series_deg3(_ZERO)
    return one + zero, one - zero


def closed_form(w: Word, kernel) -> SymbolicConstant:
    """Dispatch on a ``series`` kernel object."""
    kind = kernel.kind
    if kind == "deg2":
        return block_series_deg2(w)
    if kind == "deg3":
        return block_series_deg3(w)
    if kind == "nn1":
        return block_series_nn1(w)
    if kind == "qbase":
        return block_series_base(w, kernel.base)
    if kind == "qk":
        return block_series_qk(w, kernel.k)
    raise ValueError(f"no closed form for kernel {kind!r}")
