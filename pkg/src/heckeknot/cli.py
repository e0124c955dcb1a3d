"""Command-line surface: evaluate traces and invariants, verify properties.

Subcommands:

    trace WORD          exact Markov trace of the braid word's image
    invariant WORD      the normalized solid-torus invariant of the closure
    skein WORD --pos P  verify the crossing skein rule at one positive letter
    skein-cyclo WORD --loop I   verify the degree-d loop skein rule
    markov-test         randomized conjugation/stabilization invariance
    selftest            golden values plus quick property suites

Common flags: --mode infinity|cyclo:D, --strands N, --seed S, --trials T,
--format text|json, --jobs J, --subst sym=val,...  Exit codes: 0 ok,
1 property failure, 2 parse error, 3 evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict

from . import braids
from .algebra import Mode, from_braid, mode_key
from .braids import BraidSyntaxError, BraidWord, conjugate, random_word, stabilize
from .invariant import (
    invariant_X,
    skein_triple,
    verify_skein_cyclotomic,
    verify_skein_homfly,
)
from .scalars import (
    EvaluationError,
    ONE,
    Scalar,
    Symbol,
    p_const,
    symbol_from_name,
)
from .trace import markov_trace

FORMAT_VERSION = 1


def _parse_mode(text: str) -> Mode:
    if text == "infinity":
        return None
    if text.startswith("cyclo:"):
        d = int(text.split(":", 1)[1])
        if d < 1:
            raise ValueError("cyclotomic degree must be >= 1")
        return d
    raise ValueError(f"unknown mode {text!r}")


def _parse_subst(text: str) -> Dict[Symbol, Scalar]:
    out: Dict[Symbol, Scalar] = {}
    if not text:
        return out
    for item in text.split(","):
        name, _, value = item.partition("=")
        num, _, den = value.partition("/")
        scalar = Scalar(p_const(int(num)), p_const(int(den)) if den else None)
        out[symbol_from_name(name.strip())] = scalar
    return out


def _emit(args, word: BraidWord | None, result: str):
    if args.format == "json":
        print(json.dumps({
            "mode": mode_key(args.mode),
            "strands": word.strands if word else None,
            "input": braids.to_string(word) if word else None,
            "result": result,
            "format_version": FORMAT_VERSION,
        }))
    else:
        print(result)


def _finish_scalar(value: Scalar, args) -> str:
    subst = getattr(args, "subst_map", None)
    if subst:
        from .scalars import substitute
        value = substitute(value, subst)
    return str(value)


def cmd_trace(args) -> int:
    word = braids.parse(args.word, args.strands)
    value = markov_trace(from_braid(word, args.mode))
    _emit(args, word, _finish_scalar(value, args))
    return 0


def cmd_invariant(args) -> int:
    word = braids.parse(args.word, args.strands)
    value = invariant_X(word, args.mode)
    _emit(args, word, _finish_scalar(value, args))
    return 0


def cmd_skein(args) -> int:
    word = braids.parse(args.word, args.strands)
    triple = skein_triple(word, args.pos)
    ok, witness = verify_skein_homfly(*triple, mode=args.mode)
    _emit(args, word, f"{'holds' if ok else 'FAILS'} witness={witness}")
    return 0 if ok else 1


def cmd_skein_cyclo(args) -> int:
    if args.mode is None:
        print("skein-cyclo needs --mode cyclo:<d>", file=sys.stderr)
        return 2
    word = braids.parse(args.word, args.strands)
    ok, witness = verify_skein_cyclotomic(word, args.loop, args.mode)
    _emit(args, word, f"{'holds' if ok else 'FAILS'} witness={witness}")
    return 0 if ok else 1


def _markov_trial(payload):
    word_text, strands, mode, seed = payload
    word = braids.parse(word_text, strands)
    base = invariant_X(word, mode)
    g = random_word(word.strands, 4, seed=seed ^ 0x9E3779B9)
    ok_conj = invariant_X(conjugate(word, g), mode) == base
    ok_up = invariant_X(stabilize(word, 1), mode) == base
    ok_down = invariant_X(stabilize(word, -1), mode) == base
    return ok_conj, ok_up and ok_down


def cmd_markov_test(args) -> int:
    trials = args.trials
    ok_conj = ok_stab = 0
    payloads = []
    for i in range(trials):
        n = 2 + (i % 3)
        w = random_word(n, args.length, seed=args.seed * 1_000_003 + i)
        payloads.append((braids.to_string(w), n, args.mode, args.seed + i))
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_markov_trial, payloads))
    else:
        results = [_markov_trial(p) for p in payloads]
    for conj, stab in results:
        ok_conj += conj
        ok_stab += stab
    _emit(args, None, f"{ok_conj}/{trials} conjugation, {ok_stab}/{trials} stabilization")
    return 0 if ok_conj == trials and ok_stab == trials else 1


def cmd_selftest(args) -> int:
    from .scalars import Z, qpow, s_param
    failures = []

    def check(name, cond):
        print(f"{'ok  ' if cond else 'FAIL'} {name}")
        if not cond:
            failures.append(name)

    z = Scalar.sym(Z)
    golden = markov_trace(from_braid(braids.parse("s2 s1 t^3 s1^-1 s3 s2 s3", 4)))
    expected = qpow(1) * (qpow(1) - ONE) * z * s_param(3) \
        + (qpow(2) - qpow(1) + ONE) * z * z * s_param(3)
    check("golden trace", golden == expected)
    check("trace of unit", markov_trace(from_braid(braids.parse("", 1))) == ONE)
    check("unknot", invariant_X(braids.parse("", 1)) == ONE)
    check("loop closure", invariant_X(braids.parse("t^2", 1)) == s_param(2))
    check("positive crossing closure", invariant_X(braids.parse("s1", 2)) == ONE)
    ok, _ = verify_skein_homfly(*skein_triple(braids.parse("s1^3", 2), 0))
    check("skein on trefoil word", ok)
    ok, _ = verify_skein_cyclotomic(braids.parse("s1", 2), 1, 2)
    check("cyclotomic skein d=2", ok)
    from .oracle import homfly_A
    check("homfly oracle trefoil",
          invariant_X(braids.parse("s1^3", 2)) == homfly_A(braids.parse("s1^3", 2)))
    for i in range(args.trials):
        w = random_word(2 + i % 2, 6, seed=900 + i)
        g = random_word(w.strands, 3, seed=1900 + i)
        check(f"markov conj #{i}", invariant_X(w, args.mode) ==
              invariant_X(conjugate(w, g), args.mode))
    print(f"{'PASS' if not failures else 'FAIL'}: "
          f"{len(failures)} failures")
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="heckeknot", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, with_word=True):
        if with_word:
            p.add_argument("word", help="braid word, e.g. \"t^3 . s1^-1 . s2\"")
        p.add_argument("--mode", default="infinity",
                       help="infinity or cyclo:<d>")
        p.add_argument("--strands", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--length", type=int, default=8)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--subst", default="",
                       help="comma-separated symbol=rational substitutions")

    p = sub.add_parser("trace", help="Markov trace of a braid word")
    common(p)
    p.set_defaults(func=cmd_trace)
    p = sub.add_parser("invariant", help="solid-torus invariant of the closure")
    common(p)
    p.set_defaults(func=cmd_invariant)
    p = sub.add_parser("skein", help="verify the crossing skein rule")
    common(p)
    p.add_argument("--pos", type=int, required=True)
    p.set_defaults(func=cmd_skein)
    p = sub.add_parser("skein-cyclo", help="verify the degree-d loop skein rule")
    common(p)
    p.add_argument("--loop", type=int, required=True)
    p.set_defaults(func=cmd_skein_cyclo)
    p = sub.add_parser("markov-test", help="randomized Markov-move invariance")
    common(p, with_word=False)
    p.set_defaults(func=cmd_markov_test)
    p = sub.add_parser("selftest", help="golden vectors and quick properties")
    common(p, with_word=False)
    p.set_defaults(func=cmd_selftest)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.mode = _parse_mode(args.mode)
        args.subst_map = _parse_subst(args.subst)
    except (ValueError, KeyError) as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BraidSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (EvaluationError, ZeroDivisionError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
