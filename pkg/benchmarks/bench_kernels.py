"""Compare the compiled and pure-Python necklace kernels.

    python benchmarks/bench_kernels.py [--words 2000] [--length 12] [--repeat 5]
"""
import argparse
import random
import timeit

from quiverlab import kernels


def random_words(rng, count, length, alphabet=6):
    return [tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, length)))
            for _ in range(count)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    words = random_words(rng, args.words, args.length)
    pairs = list(zip(words, reversed(words)))
    backends = kernels.available_backends()
    if len(backends) < 2:
        print("compiled backend not built; only timing the fallback")

    results = {}
    for name, mod in sorted(backends.items()):
        rot = min(timeit.repeat(lambda: [mod.least_rotation(w) for w in words],
                                number=1, repeat=args.repeat))
        br = min(timeit.repeat(lambda: [mod.bracket_counts(a, b) for a, b in pairs],
                               number=1, repeat=args.repeat))
        results[name] = (rot, br)
        print(f"{name:8s} least_rotation {rot * 1e3:8.2f} ms   bracket_counts {br * 1e3:8.2f} ms")

    if "cython" in results and "python" in results:
        (r0, b0), (r1, b1) = results["python"], results["cython"]
        print(f"speedup  least_rotation {r0 / r1:6.1f}x        bracket_counts {b0 / b1:6.1f}x")


if __name__ == "__main__":
    main()
