"""Compare the compiled and pure-Python kernels on the same brute-force workloads.

Usage: python3 benchmarks/bench_kernels.py [--seed N] [--repeat R]
"""

import argparse
import random
import time

from groupcontrol import _kernels_py as pure
from groupcontrol import kernels


def random_case(rng, n, kind):
    rows = [rng.getrandbits(n) for _ in range(n)]
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if r >> j & 1:
                cols[j] |= 1 << i
    # individual 0 can never qualify: only itself qualifies it under consent
    # (s >= 2), and no one does under the procedural rules
    cols[0] = 1 if kind == 0 else 0
    rows = [r & ~1 for r in rows]
    if kind == 0:
        rows[0] |= 1
    selfm = sum(1 << i for i in range(n) if rows[i] >> i & 1)
    return kind, rng.randint(2, 4), rng.randint(2, 4), cols, rows, selfm


def workloads(seed):
    rng = random.Random(seed)
    out = []
    for label, n, kind in (("consent", 16, 0), ("csr", 16, 1), ("lsr", 16, 2)):
        args = random_case(rng, n, kind)
        full = (1 << n) - 1
        # individual 0 is an unreachable target, so every search is exhaustive
        S = 1
        out.append((f"partition {label} n={n}", "search_partition", args + (n, S)))
        out.append((f"delete {label} n={n} k=5", "search_delete", args + (n, 1, full & ~1, 5)))
    return out


def timed(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    compiled = kernels.compiled
    if compiled is None:
        print("compiled extension not available; only the pure backend can run")
    print(f"{'workload':34} {'pure_s':>10} {'compiled_s':>11} {'speedup':>8}")
    for label, name, call_args in workloads(args.seed):
        tp, rp = timed(getattr(pure, name), call_args, args.repeat)
        if compiled is None:
            print(f"{label:34} {tp:10.4f} {'-':>11} {'-':>8}")
            continue
        tc, rc = timed(getattr(compiled, name), call_args, args.repeat)
        assert rp == rc, f"backends disagree on {label}"
        print(f"{label:34} {tp:10.4f} {tc:11.4f} {tp / tc:7.0f}x")


if __name__ == "__main__":
    main()
