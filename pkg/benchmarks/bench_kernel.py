"""Compare the compiled and pure-Python assignment kernels.

    python3 benchmarks/bench_kernel.py [--sizes 8 12 16] [--repeat 5] [--seed 0]

Each row times ``scan`` and ``max_abs2`` on one random constraint with every
variable free, after checking that both backends return the same answer.
"""
from __future__ import annotations

import argparse
import random
import timeit

from parcross import kernel


def instance(rng: random.Random, nvars: int, nterms: int):
    # a forest: each variable has parent -1 or an earlier variable
    parent = [-1 if v == 0 or rng.random() < 0.4 else rng.randrange(v) for v in range(nvars)]
    masks = [rng.getrandbits(nvars) & rng.getrandbits(nvars) for _ in range(nterms)]
    re = [rng.randint(-3, 3) for _ in range(nterms)]
    im = [rng.randint(-1, 1) for _ in range(nterms)]
    return masks, re, im, parent


def bench(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16])
    ap.add_argument("--terms", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = kernel.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernel.BACKEND})")
    if "compiled" not in backends:
        print("compiled kernel missing; timing the Python kernel only")
    rng = random.Random(args.seed)
    head = f"{'vars':>4} {'op':>8} " + " ".join(f"{b + ' (us)':>14}" for b in backends)
    if len(backends) == 2:
        head += f" {'speedup':>8}"
    print(head)
    for n in args.sizes:
        masks, re, im, parent = instance(rng, n, args.terms)
        free = (1 << n) - 1
        calls = {
            "scan": lambda b: kernel.scan(masks, re, im, parent, 0, free, True, backend=b),
            "max_abs2": lambda b: kernel.max_abs2(masks, re, im, parent, 0, free, backend=b),
        }
        for op, call in calls.items():
            answers = {b: call(b) for b in backends}
            if len(set(map(repr, answers.values()))) != 1:
                raise SystemExit(f"backends disagree on {op} with {n} vars: {answers}")
            times = [bench(lambda b=b: call(b), args.repeat) for b in backends]
            row = f"{n:>4} {op:>8} " + " ".join(f"{t * 1e6:>14.1f}" for t in times)
            if len(times) == 2:
                row += f" {times[0] / times[1]:>7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
