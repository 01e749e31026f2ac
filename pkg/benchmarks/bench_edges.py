"""Time the compiled edge scan against the pure-Python twin.

    python3 benchmarks/bench_edges.py --profiles 64 256 1024 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from seqdyn import _edges_py, kernel
from seqdyn.game import enumerate_profiles
from seqdyn.harness import GenParams, gen_game

SPECS = (("I", "L"), ("SI",), ("SI", "A"))


def _game_with_profiles(target: int, seed: int):
    # Draw seeds until the game is within a factor two of the target size.
    for k in range(10_000):
        g = gen_game(GenParams(seed=seed + k, max_depth=6, max_branching=3, num_players=3,
                               num_outcomes=5, pref_kind="swo", max_profiles=target))
        if g.profile_count() * 2 > target:
            return g
    raise RuntimeError(f"no game near {target} profiles")


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--profiles", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if kernel.BACKEND != "cython":
        raise SystemExit("compiled backend not built; run `pip install -e . --no-build-isolation` first")
    compiled = kernel._backend
    print(f"{'profiles':>8} {'spec':>8} {'cython s':>10} {'python s':>10} {'speedup':>8} {'edges':>7}")
    for target in args.profiles:
        g = _game_with_profiles(target, args.seed)
        tables = kernel.tabulate(g, enumerate_profiles(g))
        for props in SPECS:
            run_c = lambda: kernel.edge_arrays(tables, props, backend=compiled)  # noqa: E731
            run_p = lambda: kernel.edge_arrays(tables, props, backend=_edges_py)  # noqa: E731
            c_src, c_dst = run_c()
            p_src, p_dst = run_p()
            assert np.array_equal(c_src, p_src) and np.array_equal(c_dst, p_dst), "backends disagree"
            tc, tp = _best(run_c, args.repeat), _best(run_p, args.repeat)
            print(f"{g.profile_count():>8} {','.join(props):>8} {tc:>10.5f} {tp:>10.5f} "
                  f"{tp / max(tc, 1e-9):>7.1f}x {len(c_src):>7}")


if __name__ == "__main__":
    main()
