#!/usr/bin/env python3
"""Benchmark the two expansion strategies for top loop powers.

The trace contracts t_n^k either through the memoized slide recursion
(linear in k per level) or through the symmetric-word pipeline (the sum
over (n+1)^(k-1) hat insertions).  Both are exact and agree; this script
times them side by side and reports the sizes involved, which is the
reason the slide recursion is the default engine path.

    python3 scripts/bench_rewriting.py --max-n 3 --max-k 4
"""

from __future__ import annotations

import argparse
import sys
import time

sys.path.insert(0, "src")

from heckeknot.algebra import Element, clear_caches
from heckeknot.identities import fold_form, pipeline_expand
from heckeknot.trace import clear_caches as clear_trace_caches
from heckeknot.trace import recompose, tpower_coset_expand


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--skip-pipeline-above", type=int, default=64,
                    help="skip the symmetric expansion beyond this many summands")
    args = ap.parse_args()
    print(f"{'n':>2} {'k':>3} | {'slide':>8} {'terms':>6} | "
          f"{'pipeline':>9} {'terms':>6} | agree")
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            clear_caches()
            clear_trace_caches()
            t0 = time.time()
            pairs, diag = tpower_coset_expand(n, k)
            slide_dt = time.time() - t0
            slide_terms = len(pairs) + len(diag)
            target = Element.loop(n + 1, None, n, k)
            assert recompose(pairs, diag, n + 1, None).equals(target)
            summands = (n + 1) ** (k - 1)
            if summands > args.skip_pipeline_above:
                print(f"{n:>2} {k:>3} | {slide_dt:8.3f} {slide_terms:>6} | "
                      f"{'skipped':>9} {summands:>6} |   -")
                continue
            t0 = time.time()
            form = pipeline_expand(n, k)
            pipe_dt = time.time() - t0
            agree = fold_form(form, n + 1).equals(target)
            print(f"{n:>2} {k:>3} | {slide_dt:8.3f} {slide_terms:>6} | "
                  f"{pipe_dt:9.3f} {len(form):>6} | {agree}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
