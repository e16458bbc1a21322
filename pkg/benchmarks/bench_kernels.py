"""Compare the compiled and pure-Python tracking kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times full monodromy computations (every generator loop) and a batch of
Newton polishes on each backend, and checks both give the same permutations.
"""

import argparse
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from semigalois import kernels
from semigalois.domain import Disc, build_domain
from semigalois.numerics import PolyX
from semigalois.tracking import WeierstrassSpec, monodromy

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from _util import reducible_example, s3_example, z_power_minus_x  # noqa: E402


def workloads():
    d = build_domain(Disc(0, 2.5), [Disc(c, 0.3) for c in (1, 1j, -1, -1j)], 0j)
    # z^5 - 5z + 4x: branch points at the fourth roots of unity
    quintic = WeierstrassSpec((PolyX.exact([0, 4]), PolyX.exact([-5]), PolyX.exact([]),
                               PolyX.exact([]), PolyX.exact([])), d)
    return {
        "z^6 - x": z_power_minus_x(6),
        "(z^2-x)(z^2-2x)": reducible_example(),
        "z^3 - 3z + 2x": s3_example(),
        "z^5 - 5z + 4x": quintic,
    }


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), statistics.median(times), out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    names = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(names) == 1:
        print("compiled extension not available; timing the Python kernels only")
    print(f"{'workload':<20} {'backend':<8} {'best [ms]':>10} {'median [ms]':>12} {'steps':>7}")
    for label, f in workloads().items():
        gens = {}
        best = {}
        for name in names:
            kb = kernels.get_backend(name)
            b, med, m = best_of(lambda: monodromy(f, backend=kb), args.repeat)
            gens[name] = m.gens
            best[name] = b
            print(f"{label:<20} {name:<8} {1e3 * b:>10.2f} {1e3 * med:>12.2f} "
                  f"{sum(m.report['accepted_steps']):>7}")
        if len(names) == 2:
            same = "same permutations" if gens["python"] == gens["cython"] else "PERMUTATIONS DIFFER"
            print(f"{'':<20} speedup {best['python'] / best['cython']:.1f}x, {same}")

    # Newton polish on z^4 + z^3 - x from perturbed roots at 200 points x
    rng = np.random.default_rng(0)
    C = np.array([[0, -1], [0, 0], [0, 0], [1, 0]], dtype=complex)
    xs = rng.normal(size=200) + 1j * rng.normal(size=200) + 3
    starts = [np.roots([1, 1, 0, 0, -x]) + 1e-3 * rng.normal(size=4) for x in xs]
    print()
    for name in names:
        kb = kernels.get_backend(name)

        def batch():
            for x, z0 in zip(xs, starts):
                kb.polish(C, complex(x), z0.astype(complex), 1e-12, 20)

        b, med, _ = best_of(batch, args.repeat)
        print(f"{'polish x200':<20} {name:<8} {1e3 * b:>10.2f} {1e3 * med:>12.2f}")

if __name__ == "__main__":
    main()
