"""Verification suites: closed forms against brute-force oracles.

Each check produces a ``CheckRecord``; a suite collects them into a
``VerifyReport``.  Reference values are derived from ``GOLDENS`` at run
time, so corrupting one entry makes the dependent records fail.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import closedform as cf
from . import series, special, transform
from .digits import Word, count_block, expand
from .symbolic import GAMMA, LOGPI, log_prime

GOLDENS = {
    "euler_gamma": special.EULER_GAMMA,
    "log2": special.LOG2,
    "logpi": special.LOGPI,
}

SUITES = ("digits", "special", "theorems", "base", "transform")

DEFAULT_TERMS = 10**6


@dataclass
class CheckRecord:
    id: str
    kind: str  # "exact", "symbolic" or "numeric"
    lhs: str
    rhs: str
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = "exact" if self.kind != "numeric" else f"tol={self.tolerance:.3g}"
        return f"{status} {self.id}: {self.lhs} vs {self.rhs} ({tol})"


@dataclass
class VerifyReport:
    suite: str
    records: list[CheckRecord] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "elapsed": self.elapsed,
            "records": [asdict(r) for r in self.records],
        }


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _numeric(cid: str, lhs: float, rhs: float, tol: float) -> CheckRecord:
    ok = math.isfinite(lhs) and math.isfinite(rhs) and abs(lhs - rhs) <= tol
    return CheckRecord(cid, "numeric", _fmt(lhs), _fmt(rhs), tol, ok)


def _exact(cid: str, lhs, rhs, kind: str = "symbolic") -> CheckRecord:
    return CheckRecord(cid, kind, str(lhs), str(rhs), 0.0, lhs == rhs)


def _binary_words(max_len: int) -> list[Word]:
    return [
        Word(2, bits) for L in range(1, max_len + 1) for bits in product((0, 1), repeat=L)
    ]


# ------------------------------------------------------------------ digits


def _digit_strings(n_max: int, B: int) -> list[str]:
    chars = "0123456789abcdef"
    out = [""]
    for n in range(1, n_max):
        out.append(out[n // B] + chars[n % B])
    return out


class NaiveScanner:
    """Sliding-window scan over explicit digit strings for ``0 <= n < n_max``.

    Windows of each length are cut once as fixed-width byte strings, so a
    word is counted by plain string equality.  Words with a leading zero
    and a nonzero digit are scanned in ``"0" * (len(w) - 1) + s``.
    """

    def __init__(self, n_max: int, base: int):
        self.n_max = n_max
        self.base = base
        self.strings = _digit_strings(n_max, base)
        self.width = max(len(t) for t in self.strings)
        self._windows: dict[tuple[int, bool], list[np.ndarray]] = {}

    def windows(self, L: int, padded: bool) -> list[np.ndarray]:
        key = (L, padded)
        if key not in self._windows:
            pad = "0" * (L - 1) if padded else ""
            W = self.width + L - 1
            # '-' fills the space left of each string so rows align
            rows = [(pad + t if t else "").rjust(W, "-") for t in self.strings]
            mat = np.frombuffer("".join(rows).encode(), dtype=np.uint8).reshape(-1, W)
            self._windows[key] = [
                np.ascontiguousarray(mat[:, j : j + L]).view(f"S{L}").ravel()
                for j in range(W - L + 1)
            ]
        return self._windows[key]

    def counts(self, w: Word) -> np.ndarray:
        padded = w.has_leading_zero() and not w.is_zero_block()
        target = w.text.encode()
        out = np.zeros(self.n_max, dtype=np.int64)
        for win in self.windows(len(w), padded):
            out += win == target
        return out


def naive_counts(n_max: int, w: Word) -> np.ndarray:
    """Naive occurrence counts of ``w`` in every ``n < n_max``."""
    return NaiveScanner(n_max, w.base).counts(w)


def check_counting(n_max: int = 2**16, bases=(2, 3, 10), max_len: int = 3) -> list[CheckRecord]:
    out = []
    ns = np.arange(n_max, dtype=np.int64)
    for B in bases:
        scanner = NaiveScanner(n_max, B)
        mismatched = 0
        total = 0
        for L in range(1, max_len + 1):
            for digits in product(range(B), repeat=L):
                w = Word(B, digits)
                got = count_block(ns, w)
                want = scanner.counts(w)
                mismatched += int(np.count_nonzero(got != want))
                total += 1
        out.append(
            CheckRecord(
                f"C01.count-oracle[base={B}]",
                "exact",
                f"{mismatched} mismatches",
                f"0 over {total} words x {n_max} n",
                0.0,
                mismatched == 0,
            )
        )
    return out


def suite_digits(terms: int, scale: float) -> list[CheckRecord]:
    recs = check_counting()
    w11, w011, w0 = Word.parse("11@2"), Word.parse("011@2"), Word.parse("0@2")
    recs.append(_exact("C01.example[N_11(7)=2]", count_block(7, w11), 2, "exact"))
    recs.append(_exact("C01.example[N_011(3)=1]", count_block(3, w011), 1, "exact"))
    recs.append(_exact("C01.example[N_0(2)=1]", count_block(2, w0), 1, "exact"))
    return recs


# ----------------------------------------------------------------- special


def suite_special(terms: int, scale: float) -> list[CheckRecord]:
    g = GOLDENS
    recs = [
        _numeric("S.log_gamma(1/2)", special.log_gamma(0.5), 0.5 * g["logpi"], 1e-13 * scale),
        _numeric(
            "S.digamma(1/2)", special.digamma(0.5), -g["euler_gamma"] - 2 * g["log2"], 1e-13 * scale
        ),
        _numeric("S.digamma(1)", special.digamma(1.0), -g["euler_gamma"], 1e-13 * scale),
    ]
    worst = 0.0
    count = 0
    for q in range(2, 13):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            val, _ = special.gauss_digamma(p, q)
            ref = special.digamma(p / q)
            worst = max(worst, abs(val - ref) / abs(ref))
            count += 1
    recs.append(
        CheckRecord(
            "C07.gauss-digamma[q<=12]",
            "numeric",
            f"max rel err {worst:.3g}",
            f"{count} fractions",
            1e-12 * scale,
            worst <= 1e-12 * scale,
        )
    )
    return recs


# ---------------------------------------------------------------- theorems


def _oracle_check(cid: str, w: Word, kernel, n_terms: int, tol_cap: float, scale: float):
    res = series.partial_sum(w, kernel, n_terms)
    closed = cf.closed_form(w, kernel).evaluate()
    tol = min(res.tail_bound, tol_cap) * scale
    ok = abs(closed - res.value) <= tol and res.tail_bound <= tol_cap
    return CheckRecord(cid, "numeric", _fmt(res.value), _fmt(closed), tol, ok)


def suite_theorems(terms: int, scale: float) -> list[CheckRecord]:
    g = GOLDENS
    recs = []
    one, zero = Word.parse("1@2"), Word.parse("0@2")

    digit_sum_value = 0.5 * g["euler_gamma"] + g["log2"] - 0.5 * g["logpi"]
    res = series.partial_sum(one, series.Deg2(), terms)
    recs.append(_numeric("C02.digit-sum-series", res.value, digit_sum_value, 1e-5 * scale))

    words = [w for w in _binary_words(2)] + [Word.parse("101@2")]
    for w in words:
        recs.append(_oracle_check(f"C03.deg2[{w.text}]", w, series.Deg2(), terms, 1e-4, scale))
    for w in words:
        recs.append(
            _oracle_check(
                f"C04.deg3[{w.text}]", w, series.Deg3(), max(terms // 10, 1), 1e-7, scale
            )
        )
    d_plus, d_minus = cf.delta_pm()
    recs.append(_exact("C04.delta+", d_plus, GAMMA - Fraction(1, 2)))
    recs.append(_exact("C04.delta-", d_minus, Fraction(1, 2) - LOGPI + log_prime(2)))
    recs.append(
        _numeric(
            "C04.delta-[numeric]",
            d_minus.evaluate(),
            0.5 - (g["logpi"] - g["log2"]),
            1e-12 * scale,
        )
    )

    d1, d0 = cf.block_series_deg2(one), cf.block_series_deg2(zero)
    recs.append(_exact("C05.deg2(1)+deg2(0)=gamma", d1 + d0, GAMMA))
    recs.append(_exact("C05.deg2(1)-deg2(0)=log(4/pi)", d1 - d0, 2 * log_prime(2) - LOGPI))
    for w in _binary_words(3):
        lhs = cf.block_series_deg2(w) - cf.block_series_nn1(w) * Fraction(1, 4)
        recs.append(_exact(f"C05.deg2-nn1/4=deg3[{w.text}]", lhs, cf.block_series_deg3(w)))
    recs.append(
        _numeric("C05.gamma+[numeric]", (d1 + d0).evaluate(), g["euler_gamma"], 1e-12 * scale)
    )
    recs.append(
        _numeric(
            "C05.gamma-[numeric]", (d1 - d0).evaluate(), 2 * g["log2"] - g["logpi"], 1e-12 * scale
        )
    )

    res = series.partial_sum(one, series.NN1(), terms)
    recs.append(_numeric("C06.two-log-two[partial]", res.value, 2 * g["log2"], 1e-4 * scale))
    recs.append(
        _numeric(
            "C06.two-log-two[exp]", math.exp(cf.block_series_nn1(one).evaluate()), 4.0, 1e-12 * scale
        )
    )

    for w in (zero, one):
        for k in (1, 2):
            res = series.partial_sum(w, series.QK(k), terms)
            closed = cf.block_series_qk(w, k).evaluate()
            recs.append(_numeric(f"C09.qk[{w.text},k={k}]", res.value, closed, 1e-4 * scale))
    return recs


def suite_base(terms: int, scale: float) -> list[CheckRecord]:
    recs = []
    for text in ("0", "1", "2", "12"):
        w = Word.parse(text, 3)
        recs.append(_oracle_check(f"C08.base3[{text}]", w, series.QBase(3), terms, 1e-4, scale))
    for w in _binary_words(3):
        recs.append(_exact(f"C08.base2=deg2[{w.text}]", cf.block_series_base(w, 2), cf.block_series_deg2(w)))
    return recs


# --------------------------------------------------------------- transform


def random_rational_sequences(count: int, max_len: int, seed: int = 0):
    """Random rational sequences with entries in [-5, 5] and denominators <= 12."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        M = int(rng.integers(1, max_len + 1))
        den = rng.integers(1, 13, M)
        num = rng.integers(-5 * den, 5 * den + 1)
        D = math.lcm(*(int(d) for d in np.unique(den)))
        yield transform.RationalSequence(num * (D // den), D)


def check_round_trips(count: int = 10**4, max_len: int = 1000, seed: int = 0) -> list[CheckRecord]:
    fwd_inv = inv_fwd = 0
    for seq in random_rational_sequences(count, max_len, seed):
        fwd_inv += transform.inverse(transform.forward(seq)) != seq
        inv_fwd += transform.forward(transform.inverse(seq)) != seq
    return [
        CheckRecord("C10.inverse(forward(r))=r", "exact", f"{fwd_inv} failures", f"0 of {count}", 0.0, fwd_inv == 0),
        CheckRecord("C10.forward(inverse(R))=R", "exact", f"{inv_fwd} failures", f"0 of {count}", 0.0, inv_fwd == 0),
    ]


def check_transform_examples(M: int = 2**14) -> list[CheckRecord]:
    ones = transform.PeriodicRule.constant(1)
    alt = transform.PeriodicRule((), (1, -1))
    i = np.arange(1, M + 1)
    w1, w0 = Word(2, (1,)), Word(2, (0,))
    n1, n0 = count_block(i, w1), count_block(i, w0)
    # floor(log2(2i)) as a bit length: exact integers, no floating log
    bits = np.array([int(x).bit_length() for x in i])
    R1 = transform.forward(ones, M)
    R2 = transform.forward(alt, M)
    r2 = transform.inverse(transform.RationalSequence(n1 - n0), M)
    return [
        CheckRecord(
            "C10.constant-r[R_i=floor(log2 2i)=N1+N0]",
            "exact",
            "forward(1,1,1,...)",
            f"bit lengths, i<={M}",
            0.0,
            R1 == transform.RationalSequence(bits) and bool(np.all(bits == n1 + n0)),
        ),
        CheckRecord(
            "C10.alternating-r[R_i=N1-N0]",
            "exact",
            "forward(1,-1,1,...)",
            f"N1-N0, i<={M}",
            0.0,
            R2 == transform.RationalSequence(n1 - n0),
        ),
        CheckRecord(
            "C10.alternating-r[inverse]",
            "exact",
            "inverse(N1-N0)",
            "(-1)^(n-1)",
            0.0,
            r2 == alt.take(M),
        ),
    ]


def _random_periodic_rules(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        q = int(rng.integers(1, 9))
        yield transform.PeriodicRule((), tuple(int(x) for x in rng.integers(-2, 3, q)))


def check_weighted_sums(terms: int, scale: float, n_random: int = 50, seed: int = 0) -> list[CheckRecord]:
    g = GOLDENS
    recs = []
    ones = transform.PeriodicRule.constant(1)
    lhs = transform.weighted_sum_lhs(ones, 10 * terms)
    recs.append(_numeric("C11.constant-r[lhs=gamma]", lhs, g["euler_gamma"], 3e-7 * scale))

    alt = transform.PeriodicRule((), (1, -1))
    target = 2 * g["log2"] - g["logpi"]
    recs.append(_numeric("C11.alternating[lhs]", transform.weighted_sum_lhs(alt, terms), target, 1e-4 * scale))
    recs.append(
        _numeric(
            "C11.alternating[rhs]",
            transform.weighted_sum_rhs(transform.ForwardRule(alt), terms),
            target,
            1e-4 * scale,
        )
    )

    decades = [10**e for e in range(3, int(round(math.log10(terms))) + 1)] or [terms]
    worst = 0.0
    bad_mono = 0
    for rule in _random_periodic_rules(n_random, seed):
        L = transform.weighted_sums_lhs(rule, decades)
        R = transform.weighted_sums_rhs(transform.ForwardRule(rule), decades)
        gaps = [abs(a - b) for a, b in zip(L, R)]
        worst = max(worst, gaps[-1])
        bad_mono += any(gaps[i + 1] > gaps[i] for i in range(len(gaps) - 1))
    recs.append(
        CheckRecord(
            "C11.random-periodic[|lhs-rhs|]",
            "numeric",
            f"max gap {worst:.3g}",
            f"{n_random} rules, N={decades[-1]}",
            1e-4 * scale,
            worst <= 1e-4 * scale,
        )
    )
    recs.append(
        CheckRecord(
            "C11.random-periodic[gap shrinks]",
            "exact",
            f"{bad_mono} non-monotone",
            f"0 over N={decades}",
            0.0,
            bad_mono == 0,
        )
    )
    return recs


def check_expansion(n_max: int = 100, K_max: int = 20) -> list[CheckRecord]:
    violations = 0
    for n in range(1, n_max + 1):
        a = series.a_term(n)
        for K, partial in enumerate(series.a_expansion_levels(n, K_max), start=1):
            if not 0.0 <= a - partial <= 2.0**-K:
                violations += 1
    return [
        CheckRecord(
            "C12.dyadic-expansion[remainder<=2^-K]",
            "exact",
            f"{violations} violations",
            f"0 over n<={n_max}, K<={K_max}",
            0.0,
            violations == 0,
        )
    ]


def check_periodic_route(terms: int, scale: float) -> list[CheckRecord]:
    """Values for short words via periodic r and closed forms of progressions.

    Uses only ``transform`` and ``symbolic``; the reference values come from
    the closed forms of the C03 checks.
    """
    recs = []
    for w in _binary_words(2):
        rule = transform.periodic_r_for_word(w)
        if rule is None:
            recs.append(CheckRecord(f"C13.periodic-route[{w.text}]", "numeric", "no period", "-", 0.0, False))
            continue
        numeric = transform.weighted_sum_lhs(rule, terms)
        symbolic = transform.periodic_series_constant(rule)
        reference = cf.block_series_deg2(w)
        recs.append(_numeric(f"C13.periodic-route[{w.text}]", numeric, reference.evaluate(), 1e-4 * scale))
        recs.append(_exact(f"C13.periodic-route-symbolic[{w.text}]", symbolic, reference))
    return recs


def suite_transform(terms: int, scale: float) -> list[CheckRecord]:
    return (
        check_round_trips()
        + check_transform_examples()
        + check_weighted_sums(terms, scale)
        + check_expansion()
        + check_periodic_route(terms, scale)
    )


_RUNNERS = {
    "digits": suite_digits,
    "special": suite_special,
    "theorems": suite_theorems,
    "base": suite_base,
    "transform": suite_transform,
}


def run(suite: str = "all", terms: int = DEFAULT_TERMS, tolerance_scale: float = 1.0) -> VerifyReport:
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    if terms < 1:
        raise ValueError("terms must be positive")
    start = time.perf_counter()
    names = SUITES if suite == "all" else (suite,)
    records: list[CheckRecord] = []
    for name in names:
        records.extend(_RUNNERS[name](int(terms), float(tolerance_scale)))
    records.sort(key=lambda r: r.id)
    return VerifyReport(suite, records, time.perf_counter() - start)
