"""Benchmark the oracle's hot kernels: numba JIT vs pure-numpy fallback.

Builds a mid-size census instance, then times the two backends on the same
arrays and checks they produce identical answers.  Run:

    python benchmarks/bench_kernels.py

The package-level switch is the environment flag RAYSPACE_DISABLE_NUMBA=1,
which makes every oracle call take the numpy path; this script calls both
implementations directly so a single run compares them.
"""

from __future__ import annotations

import time
from fractions import Fraction as F

import numpy as np

from rayspace import enumerate_sets, parse_graph
from rayspace._kernels import HAVE_NUMBA, NUMBA_IMPLS, NUMPY_IMPLS
from rayspace.oracle import _grid, _sample_set, _scaled_graph, _scaled_points


def build_instance():
    g = parse_graph("vertex v; ray R1 v; ray R2 v; ray R3 v")
    h, T, n, mp = F(1, 2), F(2), 2, 1
    sets = enumerate_sets(g, h, T, n, mp)
    universe = [(r.id, c) for r in g.rays for c in _grid(h, T)]
    pos = {pt: i for i, pt in enumerate(universe)}
    sg = _scaled_graph(g, [h.denominator, T.denominator])
    pe, pc = _scaled_points(sg, universe)
    masks = np.zeros((len(sets), len(universe)), dtype=bool)
    caps = {r.id: T for r in g.rays}
    for i, A in enumerate(sets):
        for pt in _sample_set(g, A, h, caps):
            masks[i, pos[pt]] = True
    thr = np.int64(int(F(3, 5) * sg.scale))
    args = (sg.end_vertex, sg.elem_len, sg.dvert)
    return g, sets, masks, pe, pc, thr, args


def timed(fn, *a, repeat=3):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*a)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def main():
    g, sets, masks, pe, pc, thr, args = build_instance()
    print(f"instance: 3-ray star, {len(sets)} sets, universe {pe.shape[0]} points")
    rows = []

    dm_np, t_np = timed(NUMPY_IMPLS["distance_matrix"], pe, pc, *args)
    if HAVE_NUMBA:
        NUMBA_IMPLS["distance_matrix"](pe, pc, *args)  # warm the JIT
        dm_nb, t_nb = timed(NUMBA_IMPLS["distance_matrix"], pe, pc, *args)
        assert np.array_equal(dm_np, dm_nb)
    else:
        dm_nb, t_nb = dm_np, None
    rows.append(("distance_matrix", t_np, t_nb))

    labels_np, t_np = timed(NUMPY_IMPLS["component_labels"], masks, dm_np, thr)
    if HAVE_NUMBA:
        NUMBA_IMPLS["component_labels"](masks, dm_nb, thr)
        labels_nb, t_nb = timed(NUMBA_IMPLS["component_labels"], masks, dm_nb, thr)
        norm = lambda ls: [sorted(np.nonzero(ls == l)[0].tolist())[0] for l in ls]
        assert norm(np.asarray(labels_np)) == norm(np.asarray(labels_nb))
    else:
        t_nb = None
    rows.append(("component_labels", t_np, t_nb))

    # directed max-min over a batch of random set pairs
    rng = np.random.default_rng(0)
    pairs = rng.integers(0, len(sets), size=(400, 2))
    pts = [np.nonzero(masks[i])[0] for i in range(len(sets))]

    def batch(impl):
        acc = 0
        for i, j in pairs:
            ia, ib = pts[i], pts[j]
            acc ^= int(impl(pe[ia], pc[ia], pe[ib], pc[ib], *args))
        return acc

    acc_np, t_np = timed(batch, NUMPY_IMPLS["directed"])
    if HAVE_NUMBA:
        batch(NUMBA_IMPLS["directed"])
        acc_nb, t_nb = timed(batch, NUMBA_IMPLS["directed"])
        assert acc_np == acc_nb
    else:
        t_nb = None
    rows.append(("directed x400", t_np, t_nb))

    print(f"{'kernel':<20} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, np_t, nb_t in rows:
        if nb_t is None:
            print(f"{name:<20} {np_t * 1e3:>8.2f}ms {'n/a':>10} {'-':>8}")
        else:
            print(f"{name:<20} {np_t * 1e3:>8.2f}ms {nb_t * 1e3:>8.2f}ms {np_t / nb_t:>7.1f}x")
    if not HAVE_NUMBA:
        print("numba unavailable or disabled; numpy fallback only")


if __name__ == "__main__":
    main()
