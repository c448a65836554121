"""Command line front end: ``blockseries <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Numbers in
text output carry 12 significant digits; ``--json`` prints full floats.
Options may also come from a ``key=value`` file given with ``--config``;
flags on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import closedform, series, special, transform, verify
from .digits import Word, count_block

DEFAULTS = {
    "base": 2,
    "k": 1,
    "mode": "sequential",
    "workers": 4,
    "suite": "all",
    "terms": verify.DEFAULT_TERMS,
    "tolerance_scale": 1.0,
}


class UsageError(ValueError):
    pass


def fmt(x: float) -> str:
    return f"{x:.12g}"


def parse_terms(text) -> int:
    """Positive integer term count; accepts ``1000000``, ``1e6`` or ``2.5E3``."""
    try:
        d = Decimal(str(text).strip())
    except InvalidOperation:
        raise UsageError(f"invalid term count {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise UsageError(f"term count must be an integer, got {text!r}")
    n = int(d)
    if n < 1:
        raise UsageError(f"term count must be at least 1, got {text!r}")
    return n


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


_CONVERTERS = {
    "base": int,
    "k": int,
    "workers": int,
    "terms": parse_terms,
    "tolerance_scale": float,
}


def resolve(args: argparse.Namespace, *keys: str) -> None:
    """Fill unset options from the config file, then from ``DEFAULTS``."""
    cfg = read_config(args.config) if args.config else {}
    for key in keys:
        if getattr(args, key, None) is not None:
            continue
        if key in cfg:
            conv = _CONVERTERS.get(key, str)
            try:
                setattr(args, key, conv(cfg[key]))
            except ValueError as exc:
                raise UsageError(f"config {key}: {exc}") from None
        else:
            setattr(args, key, DEFAULTS[key])


def emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _kernel(name: str, base: int, k: int) -> series.Kernel:
    if name == "qbase":
        return series.QBase(base)
    if name == "qk":
        return series.QK(k)
    return {"deg2": series.Deg2, "deg3": series.Deg3, "nn1": series.NN1}[name]()


def _word_and_kernel(args):
    resolve(args, "base", "k")
    w = Word.parse(args.word, args.base)
    kernel = _kernel(args.kernel, args.base, args.k)
    series.check_compatible(w, kernel)
    return w, kernel


# ---------------------------------------------------------------- commands


def cmd_count(args) -> int:
    resolve(args, "base")
    w = Word.parse(args.word, args.base)
    c = count_block(args.n, w)
    if args.json:
        emit({"word": w.to_json(), "n": args.n, "count": c})
    else:
        print(c)
    return 0


def cmd_closed_form(args) -> int:
    w, kernel = _word_and_kernel(args)
    c = closedform.closed_form(w, kernel)
    value = c.evaluate()
    if args.json:
        emit(
            {
                "word": w.to_json(),
                "kernel": kernel.to_json(),
                "symbolic": c.to_json(),
                "render": c.render(),
                "value": value,
            }
        )
    else:
        print(f"{c.render()} ≈ {fmt(value)}")
    return 0


def cmd_partial_sum(args) -> int:
    resolve(args, "terms", "mode", "workers")
    w, kernel = _word_and_kernel(args)
    res = series.partial_sum(w, kernel, args.terms, mode=args.mode, workers=args.workers)
    # the result is JSON either way
    emit(res.to_json())
    return 0


def cmd_verify(args) -> int:
    resolve(args, "suite", "terms", "tolerance_scale")
    report = verify.run(args.suite, args.terms, args.tolerance_scale)
    if args.json:
        out = report.to_json()
        out.pop("elapsed")  # keep stdout reproducible
        emit(out)
    else:
        for rec in report.records:
            print(rec.line())
        n_fail = len(report.failures())
        total = len(report.records)
        print(f"{total - n_fail}/{total} checks passed" + ("" if n_fail == 0 else f", {n_fail} failed"))
    print(f"elapsed {report.elapsed:.2f} s", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_digamma(args) -> int:
    if args.p <= 0 or args.q <= 0:
        raise UsageError("p and q must be positive")
    x = Fraction(args.p, args.q)
    value = special.digamma(x.numerator / x.denominator)
    out = {"p": x.numerator, "q": x.denominator, "value": value}
    if args.gauss:
        if not 0 < x < 1:
            raise UsageError("Gauss's formula needs 0 < p/q < 1")
        gval, terms = special.gauss_digamma(x.numerator, x.denominator)
        out["gauss"] = {"value": gval, "terms": [{"label": t.label, "value": t.value} for t in terms]}
    if args.json:
        emit(out)
        return 0
    print(f"Psi({x}) ≈ {fmt(value)}")
    if args.gauss:
        for t in out["gauss"]["terms"]:
            print(f"  {t['label']:<40} {fmt(t['value'])}")
        print(f"  {'Gauss sum':<40} {fmt(out['gauss']['value'])}")
    return 0


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _sequence_source(args):
    if args.rule is not None:
        obj = _load_json_arg(args.rule)
        return transform.PeriodicRule.from_json(obj)
    if args.input is not None:
        obj = _load_json_arg("@" + args.input)
        if isinstance(obj, dict):
            return transform.PeriodicRule.from_json(obj)
        return transform.RationalSequence.from_values(str(x) for x in obj)
    raise UsageError("give --rule or --input")


def cmd_transform(args) -> int:
    if args.direction == "detect":
        if args.word is None:
            raise UsageError("detect needs --word")
        w = Word.parse(args.word, 2)
        rule = transform.periodic_r_for_word(w, args.length)
        emit({"word": w.to_json(), "rule": None if rule is None else rule.to_json()})
        return 0 if rule is not None else 1
    src = _sequence_source(args)
    length = args.length
    if length is None:
        if isinstance(src, transform.PeriodicRule):
            raise UsageError("--length is required with a rule")
        length = len(src)
    if length < 1:
        raise UsageError("--length must be positive")
    op = transform.forward if args.direction == "forward" else transform.inverse
    result = op(src, length)
    emit({"direction": args.direction, "length": length, "sequence": result.to_json()})
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--config", help="key=value file with option defaults")

    parser = argparse.ArgumentParser(prog="blockseries", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="occurrences of a block in n")
    p.add_argument("--word", required=True)
    p.add_argument("--base", type=int)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_count)

    def word_kernel(p):
        p.add_argument("--word", required=True)
        p.add_argument("--base", type=int)
        p.add_argument("--kernel", required=True, choices=["deg2", "deg3", "nn1", "qbase", "qk"])
        p.add_argument("--k", type=int, help="shift for the qk kernel (default 1)")

    p = sub.add_parser("closed-form", parents=[common], help="exact value of a block series")
    word_kernel(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("partial-sum", parents=[common], help="brute-force partial sum with tail bound")
    word_kernel(p)
    p.add_argument("--terms", type=parse_terms)
    p.add_argument("--mode", choices=["sequential", "parallel"])
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_partial_sum)

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", choices=["all", *verify.SUITES])
    p.add_argument("--terms", type=parse_terms)
    p.add_argument("--tolerance-scale", dest="tolerance_scale", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("digamma", parents=[common], help="digamma at a positive rational")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gauss", action="store_true", help="also show Gauss's finite formula")
    p.set_defaults(func=cmd_digamma)

    p = sub.add_parser("transform", parents=[common], help="dyadic sequence transform")
    p.add_argument("--direction", required=True, choices=["forward", "inverse", "detect"])
    p.add_argument("--rule", help='periodic rule as JSON, e.g. \'{"period": ["1"]}\', or @file')
    p.add_argument("--input", help="JSON file: list of rationals or a periodic rule")
    p.add_argument("--word", help="base-2 word for --direction detect")
    p.add_argument("--length", type=int)
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError, OverflowError, KeyError, OSError) as exc:
        print(f"blockseries {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
