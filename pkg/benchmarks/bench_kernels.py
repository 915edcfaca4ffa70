"""Time the numba and numpy column-reduction kernels on the same boundary matrices.

    python benchmarks/bench_kernels.py [--repeat 3]

Inputs are the boundary matrices of twice-subdivided spheres and of the
torus link of S^rho over C3.  Both kernels must report identical invariants.
"""
import argparse
import itertools
import time

from isovariant import _kernels
from isovariant.complexes import SimplicialComplex, rep_compactification
from isovariant.groups import cyclic
from isovariant.homology import chain_complex, matrix_invariants
from isovariant.strata import chain_link_model


def sphere_sd2(n):
    K = SimplicialComplex.from_facets(itertools.combinations(range(n + 2), n + 1))
    return K.barycentric_subdivision().barycentric_subdivision()


def inputs():
    yield "Sd^2 S^2", sphere_sd2(2)
    yield "Sd^2 S^3", sphere_sd2(3)
    G = cyclic(3)
    X = rep_compactification(G, ["trivial", "rotation"])
    yield "torus link (C3)", chain_link_model(X, G.parse_chain("e<C3")).complex


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    t0 = time.perf_counter()
    warm = chain_complex(sphere_sd2(1))
    matrix_invariants(warm.diffs[1], warm.dims[0], use_numba=True)
    print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f} s\n")

    print(f"{'input':<18}{'k':>3}{'shape':>14}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name, K in inputs():
        C = chain_complex(K)
        for k in range(1, C.top + 1):
            cols, rows = C.diffs[k], C.dims[k - 1]
            tn, a = best_of(lambda: matrix_invariants(cols, rows, use_numba=True), args.repeat)
            tp, b = best_of(lambda: matrix_invariants(cols, rows, use_numba=False), args.repeat)
            assert a == b, (name, k)
            shape = f"{rows}x{len(cols)}"
            print(f"{name:<18}{k:>3}{shape:>14}{tn:>10.4f}{tp:>10.4f}{tp / tn:>8.1f}x")


if __name__ == "__main__":
    main()
