"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from concordance_lab import kernels
from concordance_lab.graphs import laplacian
from concordance_lab.turks_head import build_gamma


def workloads(rng):
    lap = laplacian(build_gamma(41)).rows
    rows = [[int(v) for v in r[1:]] for r in lap[1:]]
    n = 8
    us, vs, ws = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            us.append(i)
            vs.append(j)
            ws.append(rng.randint(-3, 3) or 1)
    word = [rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(60)]
    return {
        "bareiss_det (Th(3,41) Goeritz, 42x42)": lambda m: m.bareiss_det(rows),
        "tree_weight_sum (K8, 28 edges)": lambda m: m.tree_weight_sum(n, us, vs, ws),
        "magnus_expand_word (60 letters, m=3, d=6)": lambda m: m.magnus_expand_word(word, 3, 6),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jobs = workloads(random.Random(0))
    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled backend not built; timing the pure-Python kernels only")
    print(f"{'kernel':45s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in jobs.items():
        results = {n: fn(kernels.BACKENDS[n]) for n in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = {}
        for n in names:
            mod = kernels.BACKENDS[n]
            number = 1
            while timeit.timeit(lambda: fn(mod), number=number) < 0.2:
                number *= 2
            times[n] = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
        line = f"{label:45s}" + "".join(f"{times[n] * 1e3:10.3f}ms" for n in names)
        if len(names) > 1:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
