"""Compiled kernels against their plain-Python bodies.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Every kernel in simplecryst.kernels keeps its uncompiled body as
``.py_func``; this script times both on realistic inputs and checks that
they return the same thing. With SIMPLECRYST_DISABLE_JIT set both columns
run the Python body.
"""

import argparse
import time

import numpy as np

from simplecryst import kernels
from simplecryst._jit import HAVE_NUMBA
from simplecryst.anneal import inflate
from simplecryst.catalog import catalog
from simplecryst.census import all_matchings, cycle_type_matching, standard_matching
from simplecryst.complex import realize
from simplecryst.graph import all_permutations
from simplecryst.moves import _first_incidences


def best_of(fn, args, repeat):
    out = fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    G = catalog("s2xs2")
    C, _ = inflate(realize(catalog("cp2")), 30, seed=7)
    fs, ms = _first_incidences(C, 3)
    n = 8
    yield "canonical_trace s2xs2", kernels.canonical_trace, (G.matchings, all_permutations(5))
    yield "face_roots cp2+30", kernels.face_roots, (C.adj, C.perm)
    yield "bistellar_legal cp2+30", kernels.bistellar_legal, (
        C.adj, C.perm, C._vertex_roots, 2, fs, ms)
    yield "census3_pairs n=8", kernels.census3_pairs, (
        standard_matching(n), cycle_type_matching((2, 2)), all_matchings(n), 2 + n // 2, 0)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"numba enabled: {HAVE_NUMBA}")
    print(f"{'kernel':28s} {'jit ms':>10s} {'python ms':>10s} {'speedup':>8s}")
    for name, fn, fargs in cases():
        t_jit, a = best_of(fn, fargs, args.repeat)
        t_py, b = best_of(fn.py_func, fargs, 1)
        flag = "" if same(a, b) else "  MISMATCH"
        print(f"{name:28s} {1e3 * t_jit:10.3f} {1e3 * t_py:10.3f} {t_py / t_jit:8.1f}{flag}")


if __name__ == "__main__":
    main()
