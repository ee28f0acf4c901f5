"""Compare the compiled row-reduction kernel against the pure-Python one.

Run:  python3 benchmarks/bench_kernel.py

Both kernels implement the same canonical reduced-row-echelon contract,
so outputs are asserted identical; only wall time differs.
"""

import time

from liebider import _kernel_py
from liebider.algebra import AlgebraSpec, Window
from liebider.rationals import rat
from liebider.solver import (
    BilinearCoords,
    DeltaParam,
    _WindowContext,
    assemble_biderivation_rows,
)

try:
    from liebider import _kernel
except ImportError:
    _kernel = None


def gather_rows():
    """Constraint rows of a representative large solve."""
    spec = AlgebraSpec("wtilde", rat(0), rat(1))
    ctx = _WindowContext(spec, Window(10, 4))
    coords = BilinearCoords(ctx, 0)
    collected = assemble_biderivation_rows(ctx, coords, rat(1))
    return collected.rows


def run(kernel, rows, repeats=3):
    best = None
    result = None
    for _ in range(repeats):
        data = [dict(r) for r in rows]
        t0 = time.perf_counter()
        result = kernel.reduce_rows(data)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    print("assembling constraint rows ...")
    rows = gather_rows()
    print(f"{len(rows)} rows")
    t_py, r_py = run(_kernel_py, rows)
    print(f"pure python : {t_py:8.3f} s")
    if _kernel is None:
        print("compiled kernel not available (install built the pure fallback)")
        return
    t_cy, r_cy = run(_kernel, rows)
    print(f"compiled    : {t_cy:8.3f} s")
    assert r_py == r_cy, "kernels disagree"
    print(f"speedup     : {t_py / t_cy:8.2f}x  (outputs identical)")


if __name__ == "__main__":
    main()
