"""Time the compiled and numpy kernels on full-register workloads.

    python benchmarks/bench_kernels.py [--n 12 16 20] [--k 16] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from ensum.kernels import available_backends


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[12, 16, 20])
    parser.add_argument("--k", type=int, default=16)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<14}{'n':>4}  " + "".join(f"{name:>12}" for name in backends) + "     speedup")
    for n in args.n:
        N = 1 << n
        values = rng.random(N)
        weights = np.full(N, 1.0 / N)
        codes = backends["python"].encode_values(values, args.k)
        zeros = np.zeros(N, dtype=np.uint64)
        workloads = {
            "encode_values": lambda m: m.encode_values(values, args.k),
            "xor_codes": lambda m: m.xor_codes(zeros, codes),
            "spin_signals": lambda m: m.spin_signals(weights, codes, args.k),
        }
        for label, work in workloads.items():
            times = {
                name: min(timeit.repeat(lambda: work(mod), number=1, repeat=args.repeat))
                for name, mod in backends.items()
            }
            speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
            cells = "".join(f"{t * 1e3:>10.2f}ms" for t in times.values())
            print(f"{label:<14}{n:>4}  {cells}  {speedup:>8.2f}x")


if __name__ == "__main__":
    main()
