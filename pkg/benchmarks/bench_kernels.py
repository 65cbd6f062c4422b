"""Compare the numba and numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Times the sparse merge on the exterior-power DP of a few varieties and the
batched dominant-chamber reflection on random weights, checking that both
backends return identical arrays.
"""

import argparse
import time

import numpy as np

from grasshkr import _accel, levirep
from grasshkr.parabolic import build_parabolic
from grasshkr.rootsys import build_root_system


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def full_dp(par, merge):
    saved = _accel.merge_shifted
    levirep._accel.merge_shifted = merge
    try:
        levirep._LAYERS.pop(par, None)
        return levirep._wedge_layers(par, par.dimension)["layers"]
    finally:
        levirep._accel.merge_shifted = saved


def merge_numba(a, ca, b, cb, s):
    return _accel.merge_shifted_numba(a, ca, b, cb, np.int64(s))


def same(x, y):
    return all(np.array_equal(u, v) for xs, ys in zip(x, y) for u, v in zip(xs, ys))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=200_000)
    args = ap.parse_args()
    if _accel.merge_shifted_numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':<34} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, nodes in [("C4", (3,)), ("B4", (3,)), ("F4", (4,)), ("E6", (2,)), ("E7", (1,))]:
        par = build_parabolic(name, nodes)
        full_dp(par, merge_numba)  # compile
        tn, rn = best_of(lambda: full_dp(par, _accel.merge_shifted_numpy), args.repeat)
        tj, rj = best_of(lambda: full_dp(par, merge_numba), args.repeat)
        assert same(rn, rj)
        print(f"{'wedge DP ' + par.name():<34} {tn:10.4f} {tj:10.4f} {tn / tj:8.1f}")

    rng = np.random.default_rng(0)
    for name in ["B4", "F4", "E6", "E8"]:
        rs = build_root_system(name)
        A = np.ascontiguousarray(rs.cartan_matrix, dtype=np.int64)
        V = rng.integers(-6, 7, size=(args.batch, rs.rank), dtype=np.int64)
        _accel.dominant_chamber_numba(V[:10], A)
        tn, rn = best_of(lambda: _accel.dominant_chamber_numpy(V, A), args.repeat)
        tj, rj = best_of(lambda: _accel.dominant_chamber_numba(V, A), args.repeat)
        assert np.array_equal(rn[0], rj[0]) and np.array_equal(rn[1], rj[1])
        print(f"{'dominant chamber ' + name + f' x{args.batch}':<34} {tn:10.4f} {tj:10.4f} {tn / tj:8.1f}")


if __name__ == "__main__":
    main()
