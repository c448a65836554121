"""Exact rational-linear combinations of transcendental constants.

A ``SymbolicConstant`` is a finite map ``Atom -> Fraction``.  Atoms are

    one, gamma (Euler's constant), log pi, log p (p prime),
    log Gamma(r) and Psi(r) for rational 0 < r < 1, r != 1/2.

Everything else is rewritten on construction:

    log Gamma(1/2) = 1/2 log pi,      Psi(1/2) = -gamma - 2 log 2,
    log Gamma(1) = log Gamma(2) = 0,  Psi(1) = -gamma,

and arguments outside (0, 1) are moved into (0, 1] with the recurrences
``Gamma(x+1) = x Gamma(x)`` and ``Psi(x+1) = Psi(x) + 1/x``.  Logarithms of
rationals are split into prime logarithms.  Hence two constants built from
the same closed form compare equal as maps, and identities such as
``deg2("1") + deg2("0") == gamma`` are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from . import special

ONE = "one"
EULER_GAMMA = "euler_gamma"
LOG_PI = "log_pi"
LOG_PRIME = "log_prime"
LOG_GAMMA_RAT = "log_gamma_rat"
DIGAMMA_RAT = "digamma_rat"

# display order: gamma, log p, log pi, log Gamma(.), Psi(.), rational part
_RANK = {EULER_GAMMA: 0, LOG_PRIME: 1, LOG_PI: 2, LOG_GAMMA_RAT: 3, DIGAMMA_RAT: 4, ONE: 5}
_HALF = Fraction(1, 2)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Atom:
    kind: str
    arg: int | Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind in (ONE, EULER_GAMMA, LOG_PI):
            if self.arg is not None:
                raise ValueError(f"{self.kind} takes no argument")
        elif self.kind == LOG_PRIME:
            if not isinstance(self.arg, int) or not _is_prime(self.arg):
                raise ValueError(f"log_prime needs a prime, got {self.arg!r}")
        elif self.kind in (LOG_GAMMA_RAT, DIGAMMA_RAT):
            rho = Fraction(self.arg)
            if not 0 < rho < 1:
                raise ValueError(f"{self.kind} argument must lie in (0, 1), got {rho}")
            if rho == _HALF:
                raise ValueError(f"{self.kind}(1/2) is not canonical; rewrite it")
            object.__setattr__(self, "arg", rho)
        else:
            raise ValueError(f"unknown atom kind {self.kind!r}")

    def sort_key(self) -> tuple:
        return (_RANK[self.kind], self.arg if self.arg is not None else 0)

    def numeric(self) -> float:
        if self.kind == ONE:
            return 1.0
        if self.kind == EULER_GAMMA:
            return special.EULER_GAMMA
        if self.kind == LOG_PI:
            return special.LOGPI
        if self.kind == LOG_PRIME:
            return special.LOG2 if self.arg == 2 else math.log(self.arg)
        if self.kind == LOG_GAMMA_RAT:
            return special.log_gamma(float(self.arg))
        return special.digamma(float(self.arg))

    def name(self) -> str:
        if self.kind == ONE:
            return "1"
        if self.kind == EULER_GAMMA:
            return "gamma"
        if self.kind == LOG_PI:
            return "log pi"
        if self.kind == LOG_PRIME:
            return f"log {self.arg}"
        if self.kind == LOG_GAMMA_RAT:
            return f"log Gamma({self.arg})"
        return f"Psi({self.arg})"

    def to_json(self) -> dict:
        out: dict = {"atom": self.kind}
        if self.kind == LOG_PRIME:
            out["p"] = self.arg
        elif self.kind in (LOG_GAMMA_RAT, DIGAMMA_RAT):
            out["rho"] = _frac_str(self.arg)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> Atom:
        kind = obj["atom"]
        if kind == LOG_PRIME:
            return cls(kind, int(obj["p"]))
        if kind in (LOG_GAMMA_RAT, DIGAMMA_RAT):
            return cls(kind, Fraction(obj["rho"]))
        return cls(kind)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _as_fraction(q) -> Fraction:
    if isinstance(q, (Fraction, int)) and not isinstance(q, bool):
        return Fraction(q)
    if isinstance(q, Rational):
        return Fraction(q.numerator, q.denominator)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"exact rational expected, got {q!r}")


class SymbolicConstant:
    """Immutable, canonical map from atoms to rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Atom, Fraction] | Iterable[tuple[Atom, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Atom, Fraction] = {}
        for atom, coeff in items:
            if not isinstance(atom, Atom):
                raise TypeError(f"Atom expected, got {atom!r}")
            acc[atom] = acc.get(atom, Fraction(0)) + _as_fraction(coeff)
        self._terms = tuple(
            sorted(((a, c) for a, c in acc.items() if c != 0), key=lambda t: t[0].sort_key())
        )
        self._hash = None

    @classmethod
    def atom(cls, atom: Atom, coeff=1) -> SymbolicConstant:
        return cls({atom: _as_fraction(coeff)})

    @property
    def terms(self) -> dict[Atom, Fraction]:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def coefficient(self, atom: Atom) -> Fraction:
        return dict(self._terms).get(atom, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicConstant):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __add__(self, other) -> SymbolicConstant:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = rational(other)
        if not isinstance(other, SymbolicConstant):
            return NotImplemented
        return SymbolicConstant(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> SymbolicConstant:
        return SymbolicConstant((a, -c) for a, c in self._terms)

    def __sub__(self, other) -> SymbolicConstant:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = rational(other)
        if not isinstance(other, SymbolicConstant):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> SymbolicConstant:
        return (-self) + other

    def __mul__(self, q) -> SymbolicConstant:
        try:
            q = _as_fraction(q)
        except TypeError:
            return NotImplemented
        return SymbolicConstant((a, c * q) for a, c in self._terms)

    __rmul__ = __mul__

    def __truediv__(self, q) -> SymbolicConstant:
        return self * (1 / _as_fraction(q))

    def evaluate(self) -> float:
        return math.fsum(float(c) * a.numeric() for a, c in self._terms)

    def __float__(self) -> float:
        return self.evaluate()

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (atom, c) in enumerate(self._terms):
            mag = abs(c)
            if atom.kind == ONE:
                body = str(mag)
            elif mag == 1:
                body = atom.name()
            else:
                body = f"{mag}·{atom.name()}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SymbolicConstant({self.render()!r})"

    def to_json(self) -> dict:
        return {
            "terms": [dict(a.to_json(), coeff=_frac_str(c)) for a, c in self._terms]
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SymbolicConstant:
        return cls((Atom.from_json(t), Fraction(t["coeff"])) for t in obj["terms"])


ZERO = SymbolicConstant()
GAMMA = SymbolicConstant.atom(Atom(EULER_GAMMA))
LOGPI = SymbolicConstant.atom(Atom(LOG_PI))


def rational(q) -> SymbolicConstant:
    return SymbolicConstant.atom(Atom(ONE), _as_fraction(q))


def log_prime(p: int) -> SymbolicConstant:
    return SymbolicConstant.atom(Atom(LOG_PRIME, int(p)))


def log_rational(q) -> SymbolicConstant:
    """log of a positive rational as an integer combination of log p."""
    q = _as_fraction(q)
    if q <= 0:
        raise ValueError(f"log of non-positive rational {q}")
    terms: dict[Atom, Fraction] = {}
    for p, e in _factorize(q.numerator).items():
        terms[Atom(LOG_PRIME, p)] = Fraction(e)
    for p, e in _factorize(q.denominator).items():
        terms[Atom(LOG_PRIME, p)] = terms.get(Atom(LOG_PRIME, p), Fraction(0)) - e
    return SymbolicConstant(terms)


def log_gamma_rat(x) -> SymbolicConstant:
    """log Gamma(x) for a positive rational x, in canonical form."""
    x = _as_fraction(x)
    if x <= 0:
        raise ValueError(f"log Gamma needs a positive argument, got {x}")
    m = math.floor(x)
    rho = x - m
    if rho == 0:
        # Gamma(m) = (m - 1)!
        return log_rational(math.factorial(m - 1))
    prod = Fraction(1)
    for j in range(m):
        prod *= rho + j
    if rho == _HALF:
        base = LOGPI * _HALF
    else:
        base = SymbolicConstant.atom(Atom(LOG_GAMMA_RAT, rho))
    return base + log_rational(prod)


def digamma_rat(x) -> SymbolicConstant:
    """Psi(x) for a positive rational x, in canonical form."""
    x = _as_fraction(x)
    if x <= 0:
        raise ValueError(f"Psi needs a positive argument, got {x}")
    m = math.floor(x)
    rho = x - m
    if rho == 0:
        # Psi(m) = -gamma + H_{m-1}
        return -GAMMA + rational(sum((Fraction(1, j) for j in range(1, m)), Fraction(0)))
    shift = sum((1 / (rho + j) for j in range(m)), Fraction(0))
    if rho == _HALF:
        base = -GAMMA - 2 * log_prime(2)
    else:
        base = SymbolicConstant.atom(Atom(DIGAMMA_RAT, rho))
    return base + rational(shift)


def a_tail_symbolic(a: int, b: int) -> SymbolicConstant:
    """Sum of ``1/m - log((m+1)/m)`` over ``m = a n + b`` (symbolic).

    ``b == 0``: n >= 1, log Gamma(1/a) + gamma/a - log a.
    ``b > 0``:  n >= 0, log Gamma((b+1)/a) - log Gamma(b/a) - Psi(b/a)/a.
    """
    if a < 1 or b < 0:
        raise ValueError(f"need a >= 1 and b >= 0, got a={a}, b={b}")
    if b == 0:
        return log_gamma_rat(Fraction(1, a)) + GAMMA * Fraction(1, a) - log_rational(a)
    x = Fraction(b, a)
    return log_gamma_rat(x + Fraction(1, a)) - log_gamma_rat(x) - digamma_rat(x) * Fraction(1, a)


def add(a: SymbolicConstant, b: SymbolicConstant) -> SymbolicConstant:
    return a + b


def scale(a: SymbolicConstant, q) -> SymbolicConstant:
    return a * q


def canonicalize(c: SymbolicConstant | Mapping[Atom, Fraction]) -> SymbolicConstant:
    if isinstance(c, SymbolicConstant):
        return SymbolicConstant(c.items())
    return SymbolicConstant(c)


def evaluate(c: SymbolicConstant) -> float:
    return c.evaluate()


def render(c: SymbolicConstant) -> str:
    return c.render()
