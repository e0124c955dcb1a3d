#!/usr/bin/env python3
"""Randomized Markov-move invariance experiment.

Samples mixed braid words, applies random conjugations and both
stabilizations, and verifies that the normalized invariant is unchanged,
in the generic algebra and in chosen cyclotomic degrees.  Exact symbolic
comparison throughout; failures print the offending words.

    python3 scripts/markov_suite.py --trials 50 --modes infinity,cyclo:2
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

sys.path.insert(0, "src")

from heckeknot.braids import conjugate, random_word, stabilize, to_string
from heckeknot.invariant import invariant_X


@dataclass
class SuiteConfig:
    trials: int = 50
    max_strands: int = 4
    length: int = 10
    conj_length: int = 5
    max_t_run: int = 3
    seed: int = 0
    modes: tuple = (None, 2, 3)


def parse_modes(text: str) -> tuple:
    out = []
    for item in text.split(","):
        item = item.strip()
        out.append(None if item == "infinity" else int(item.split(":")[1]))
    return tuple(out)


def run(cfg: SuiteConfig) -> int:
    failures = 0
    for mode in cfg.modes:
        label = "infinity" if mode is None else f"cyclo:{mode}"
        t0 = time.time()
        ok_conj = ok_stab = 0
        for i in range(cfg.trials):
            n = 2 + i % (cfg.max_strands - 1)
            w = random_word(n, cfg.length, cfg.max_t_run, seed=cfg.seed + i)
            g = random_word(n, cfg.conj_length, seed=cfg.seed + 10_000 + i)
            x = invariant_X(w, mode)
            if x == invariant_X(conjugate(w, g), mode):
                ok_conj += 1
            else:
                failures += 1
                print(f"  CONJUGATION FAIL [{label}]: {to_string(w)} by {to_string(g)}")
            if x == invariant_X(stabilize(w, 1), mode) \
                    and x == invariant_X(stabilize(w, -1), mode):
                ok_stab += 1
            else:
                failures += 1
                print(f"  STABILIZATION FAIL [{label}]: {to_string(w)}")
        print(f"{label}: {ok_conj}/{cfg.trials} conjugation, "
              f"{ok_stab}/{cfg.trials} stabilization  ({time.time() - t0:.1f}s)")
    return 0 if failures == 0 else 1


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--length", type=int, default=10)
    ap.add_argument("--max-strands", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--modes", default="infinity,cyclo:2,cyclo:3")
    args = ap.parse_args()
    cfg = SuiteConfig(trials=args.trials, length=args.length,
                      max_strands=args.max_strands, seed=args.seed,
                      modes=parse_modes(args.modes))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
