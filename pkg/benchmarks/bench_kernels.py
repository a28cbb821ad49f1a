"""Time the compiled and pure-Python kernels on the hot loops.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--scale 1.0]

Each workload is run once per available backend; results are checked to
agree before timings are reported.
"""
import argparse
import math
import time

import numpy as np

from macroscal._kernels import available_backends


def volume_grid(scale):
    m = max(1, int(20_000 * scale))
    rng = np.random.default_rng(0)
    return list(zip(rng.integers(2, 8, m).tolist(), rng.uniform(-40, 40, m).tolist(),
                    rng.uniform(0.05, 3.0, m).tolist()))


def run_volume(mod, cases):
    f = mod.ball_volume
    return [f(n, s, R) for n, s, R in cases]


def run_invert(mod, cases):
    f, g = mod.ball_volume, mod.invert_scal
    return [g(n, R, f(n, s, R), 1e-10)[0] for n, s, R in cases]


def divider_instances(scale):
    rng = np.random.default_rng(1)
    out = []
    for _ in range(max(1, int(200 * scale))):
        N = int(rng.integers(20, 60))
        d = rng.uniform(0, 10, N - 1)
        s = rng.uniform(0, 2, N)
        dhat = [0.0] + d.tolist() + [0.0]
        prefix = [0.0] + np.cumsum(s).tolist()
        out.append((dhat, prefix))
    return out


def run_dividers(mod, instances):
    return [mod.replace_dividers(dh, P)[0] for dh, P in instances]


def best_time(fn, arg, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(arg)
        times.append(time.perf_counter() - t0)
    return min(times), result


def agree(a, b):
    if isinstance(a[0], list):
        return a == b
    return all(math.isclose(x, y, rel_tol=1e-12, abs_tol=1e-12) or x == y for x, y in zip(a, b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scale", type=float, default=1.0, help="multiply workload sizes")
    args = ap.parse_args()

    backends = available_backends()
    grid = volume_grid(args.scale)
    workloads = [
        ("ball_volume", run_volume, grid),
        ("invert_scal", run_invert, grid[: len(grid) // 4]),
        ("replace_dividers", run_dividers, divider_instances(args.scale)),
    ]
    names = sorted(backends)
    print(f"{'workload':<18}{'size':>8}" + "".join(f"{n + ' [s]':>14}" for n in names)
          + ("    speedup" if len(names) > 1 else ""))
    for label, fn, data in workloads:
        timings, results = {}, {}
        for name in names:
            timings[name], results[name] = best_time(lambda x: fn(backends[name], x), data, args.repeat)
        if len(names) > 1 and not agree(results["python"], results["cython"]):
            raise SystemExit(f"{label}: backends disagree")
        line = f"{label:<18}{len(data):>8}" + "".join(f"{timings[n]:>14.4f}" for n in names)
        if len(names) > 1:
            line += f"{timings['python'] / timings['cython']:>10.1f}x"
        print(line)
    if len(names) == 1:
        print("compiled backend not built; only the pure-Python kernels were timed")


if __name__ == "__main__":
    main()
