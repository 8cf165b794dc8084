"""Compare the compiled and pure-Python quantifier sweeps.

Runs the rule-soundness workload (every rule of every calculus on every
algebra of its class) once per backend and reports wall time and speedup.

    python benchmarks/bench_sweep.py --size 5 --repeat 3
"""

import argparse
import time

from roughproof import algebra, sweep
from roughproof.algebra import check_rule_soundness, enumerate_algebras, to_heterogeneous
from roughproof.calculus import CALCULI, CLASS_OF, rule_set


def workload(size):
    jobs = []
    for calc in CALCULI:
        models = [to_heterogeneous(T) for T in enumerate_algebras(size, CLASS_OF[calc])]
        forms = [d for r in rule_set(calc) for d in r.directions()]
        jobs.append((models, forms))
    return jobs


def run(jobs):
    failures = 0
    for models, forms in jobs:
        for H in models:
            for form in forms:
                failures += check_rule_soundness(form, H) is not None
    return failures


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jobs = workload(args.size)
    checks = sum(len(m) * len(f) for m, f in jobs)
    print(f"{checks} rule/algebra checks, carrier <= {args.size}")
    timings = {}
    for name, fn in sorted(sweep.backends().items()):
        algebra.sweep = fn
        best = float("inf")
        for _ in range(args.repeat):
            start = time.perf_counter()
            failures = run(jobs)
            best = min(best, time.perf_counter() - start)
        timings[name] = best
        print(f"{name:>7}: {best:8.3f}s best of {args.repeat}, {failures} failures")
    if len(timings) == 2:
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x")
    else:
        print("compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
