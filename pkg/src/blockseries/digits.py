"""Base-B expansions, digit sums and overlapping block counting.

A block (``Word``) is a finite string of base-B digits.  ``count_block``
follows these conventions:

* ``N(0) = 0`` for every block.
* A block of zeros (value 0) is matched against the plain expansion of n.
* A block with a leading zero but a nonzero digit somewhere is matched
  against the expansion of n padded on the left with zeros.  Padding with
  ``len(w) - 1`` zeros is enough: a window lying entirely inside a longer
  zero prefix would read only zeros and cannot match.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MIN_BASE = 2
MAX_BASE = 16
MAX_N = 2**64 - 1

_DIGIT_CHARS = "0123456789abcdef"


def _check_base(base: int) -> None:
    if not isinstance(base, (int, np.integer)) or isinstance(base, bool):
        raise TypeError(f"base must be an integer, got {base!r}")
    if not MIN_BASE <= base <= MAX_BASE:
        raise ValueError(f"base must be in [{MIN_BASE}, {MAX_BASE}], got {base}")


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"n must be an integer, got {n!r}")
    if n < 0 or n > MAX_N:
        raise ValueError(f"n must be in [0, 2**64), got {n}")


@dataclass(frozen=True)
class Word:
    """A non-empty block of base-``base`` digits, most significant first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_base(self.base)
        digits = tuple(int(d) for d in self.digits)
        if not digits:
            raise ValueError("a word needs at least one digit")
        for d in digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        object.__setattr__(self, "digits", digits)

    @classmethod
    def parse(cls, text: str, base: int | None = None) -> Word:
        """Build a word from a digit string.

        Accepts ``"011"`` together with ``base=2`` or the combined textual
        form ``"011@2"``.  Leading zeros are kept.
        """
        text = text.strip()
        if "@" in text:
            body, _, b = text.partition("@")
            parsed_base = int(b)
            if base is not None and base != parsed_base:
                raise ValueError(f"conflicting bases {base} and {parsed_base}")
            base = parsed_base
            text = body
        if base is None:
            raise ValueError("base not given")
        _check_base(base)
        digits = []
        for ch in text.lower():
            idx = _DIGIT_CHARS.find(ch)
            if idx < 0:
                raise ValueError(f"invalid digit character {ch!r}")
            digits.append(idx)
        return cls(base, tuple(digits))

    @classmethod
    def from_json(cls, obj: dict) -> Word:
        return cls.parse(str(obj["digits"]), int(obj["base"]))

    def to_json(self) -> dict:
        return {"base": self.base, "digits": self.text}

    @property
    def text(self) -> str:
        return "".join(_DIGIT_CHARS[d] for d in self.digits)

    def __str__(self) -> str:
        return f"{self.text}@{self.base}"

    def __len__(self) -> int:
        return len(self.digits)

    def length(self) -> int:
        return len(self.digits)

    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.base + d
        return v

    def is_zero_block(self) -> bool:
        return all(d == 0 for d in self.digits)

    def has_leading_zero(self) -> bool:
        return self.digits[0] == 0


def expand(n: int, base: int) -> list[int]:
    """Digits of ``n`` in ``base``, most significant first; ``[]`` for 0."""
    _check_base(base)
    _check_n(n)
    n = int(n)
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    out.reverse()
    return out


def digit_sum(n: int, base: int) -> int:
    return sum(expand(n, base))


def count_block(n, w: Word):
    """Number of (possibly overlapping) occurrences of ``w`` in ``n``.

    ``n`` may be an int or a numpy array; arrays go through
    ``count_block_array``.

    Works on the integer directly: a window ending at digit position ``k``
    (counted from the least significant end) matches iff
    ``(n // B**k) % B**L == v``.  For a zero block the window must also lie
    inside the unpadded expansion, i.e. ``n >= B**(k + L - 1)``.
    """
    if isinstance(n, np.ndarray):
        return count_block_array(n, w)
    _check_n(n)
    n = int(n)
    if n == 0:
        return 0
    B, L, v = w.base, len(w), w.value()
    modulus = B**L
    zero = v == 0
    count = 0
    shifted = n
    top = B ** (L - 1)
    while shifted:
        if zero and shifted < top:
            break
        if shifted % modulus == v:
            count += 1
        shifted //= B
    return count


def count_block_array(ns: np.ndarray, w: Word) -> np.ndarray:
    """Vectorised ``count_block`` over an array of nonnegative integers.

    Entries of ``ns`` must fit in int64.  Returns an int64 array.
    """
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size == 0:
        return np.zeros(0, dtype=np.int64)
    if ns.min() < 0:
        raise ValueError("negative entries in ns")
    B, L, v = w.base, len(w), w.value()
    nmax = int(ns.max())
    counts = np.zeros(ns.shape, dtype=np.int64)
    if v > nmax:
        return counts
    modulus = B**L
    zero = v == 0
    shifted = ns.copy()
    k = 0
    while B**k <= nmax:
        if zero:
            # a run of L zeros needs a nonzero digit above it: n >= B**(k + L)
            if B ** (k + L) > nmax:
                break
            counts += (shifted >= B ** (L - 1)) & ((shifted % modulus) == 0)
        else:
            if modulus <= nmax:
                counts += (shifted % modulus) == v
            else:
                counts += shifted == v
        shifted //= B
        k += 1
    return counts
