"""Benchmark the compiled walk kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--steps 500,2000,10000] [--repeat 3]

Times one full evolution (Fibonacci schedule, sigma recorded every step)
per kernel and step count, and checks that both kernels produce the same
amplitudes.
"""

import argparse
import math
import time

import numpy as np

from aqwalk import SequenceKind, SequenceSpec, evolve
from aqwalk.kernels import available_kernels


def time_run(kernel: str, steps: int, repeat: int) -> tuple[float, object]:
    spec = SequenceSpec(SequenceKind.FIBONACCI, alpha_a=math.pi / 3, alpha_b=math.pi / 6)
    best = math.inf
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = evolve(spec, steps, kernel=kernel)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", default="500,2000,10000")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    step_counts = [int(s) for s in args.steps.split(",")]

    kernels = sorted(available_kernels())
    print(f"kernels available: {', '.join(kernels)}")
    header = f"{'steps':>8} " + "".join(f"{k:>12} " for k in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>9}"
    print(header)
    for steps in step_counts:
        times = {}
        results = {}
        for kernel in kernels:
            times[kernel], results[kernel] = time_run(kernel, steps, args.repeat)
        row = f"{steps:>8} " + "".join(f"{times[k]:>11.3f}s " for k in kernels)
        if len(kernels) == 2:
            row += f"{times['python'] / times['cython']:>8.2f}x"
            same = np.array_equal(results["python"].state.amps, results["cython"].state.amps)
            row += "   (amplitudes match)" if same else "   AMPLITUDES DIFFER"
        print(row)


if __name__ == "__main__":
    main()
