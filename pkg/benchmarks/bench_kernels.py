#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallbacks.

Runs each kernel on a representative verification workload and prints a
timing table.  Use --quick for smaller instances (useful without the
compiled extension, where the list below takes a few minutes).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from trichar import tower_for_q
from trichar._kernels import _fallback
from trichar.geometry import _normalized_tuples
from trichar.quadric import _index_arrays, reduce_section
from trichar.varieties import Params, twisted_hermitian_set

try:
    from trichar._kernels import _speedups
except ImportError:
    _speedups = None


def _workloads(quick: bool):
    q, r = (3, 3) if quick else (3, 4)
    tower = tower_for_q(q)
    params = Params(tower, r, 1, 3)
    S = twisted_hermitian_set(params)
    pts, mult = S.affine_arrays()
    Q = tower.order
    ppts = np.hstack([np.ones((len(pts), 1), dtype=np.int16), pts])
    forms = np.array(list(_normalized_tuples(Q, r + 1)), dtype=np.int16)
    Qd = reduce_section(params, (0,) * (r - 1), 0)
    quad, lin, const_term = _index_arrays(Qd)

    # the brute-force enumerator workload uses the q=3 r=3 code either way;
    # the full q=5 instance is left to the test suite
    t2 = tower_for_q(3)
    S2 = twisted_hermitian_set(Params(t2, 3, 1, 3))
    cols = [pt for pt, m in S2.sorted_items() for _ in range(m)]
    gmat = np.array(cols, dtype=np.int16).T.copy()

    return [
        (
            f"affine_view_hist  (q={q}, r={r}, {len(pts)} pts, {Q ** (r - 1)} slopes)",
            "affine_view_hist",
            (pts, mult, Q, tower.mul_table, tower.add_table, tower.neg_table),
        ),
        (
            f"form_counts       ({len(forms)} forms x {len(pts)} pts)",
            "form_counts",
            (ppts, mult, forms, tower.mul_table, tower.add_table),
        ),
        (
            f"weight_hist       (q=3, r=3: 9^4 messages x 243 cols)",
            "weight_hist",
            (gmat, t2.order, t2.mul_table, t2.add_table),
        ),
        (
            f"quadric_counts    (x200, {Qd.nvars} vars over GF({tower.q}))",
            "quadric_counts_x200",
            (quad, lin, const_term, tower.q, tower.smul_table, tower.sadd_table),
        ),
    ]


def _run(module, name: str, args) -> tuple[float, object]:
    t0 = time.perf_counter()
    if name == "quadric_counts_x200":
        out = None
        for _ in range(200):
            out = module.quadric_counts(*args)
    else:
        out = getattr(module, name)(*args)
    return time.perf_counter() - t0, out


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    opts = ap.parse_args()

    backends = [("python", _fallback)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("compiled extension not built; timing the fallback only\n")

    print(f"{'kernel':<58} " + " ".join(f"{n:>10}" for n, _ in backends) + "   speedup")
    for label, name, args in _workloads(opts.quick):
        times = []
        results = []
        for _, module in backends:
            dt, out = _run(module, name, args)
            times.append(dt)
            results.append(out)
        if len(results) == 2:
            a, b = results
            same = (
                np.array_equal(a, b)
                if isinstance(a, np.ndarray)
                else a == b
            )
            if not same:
                raise AssertionError(f"backend mismatch on {name}")
        cells = " ".join(f"{t * 1000:>8.1f}ms" for t in times)
        speed = f"{times[0] / times[-1]:>8.1f}x" if len(times) == 2 else ""
        print(f"{label:<58} {cells}   {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
