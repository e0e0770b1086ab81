"""Time the in-memory pipeline on synthetic batches.

    python benchmarks/bench_pipeline.py --sizes 1000 10000 --workers 1 4
"""

import argparse
import time

from taglinegen.model import PipelineConfig
from taglinegen.pipeline import run_batch
from taglinegen.synthetic import synthetic_batch


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 50_000])
    parser.add_argument("--pages", type=int, default=1_000)
    parser.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'profiles':>9} {'workers':>7} {'best s':>8} {'profiles/s':>11}")
    for n in args.sizes:
        profiles, pages, lex = synthetic_batch(n, args.pages, seed=1)
        cfg = PipelineConfig(expert_fraction=1.0)
        for workers in args.workers:
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                run_batch(profiles, cfg, lex, pages, workers=workers)
                best = min(best, time.perf_counter() - start)
            print(f"{n:>9} {workers:>7} {best:>8.3f} {n / best:>11.0f}")


if __name__ == "__main__":
    main()
