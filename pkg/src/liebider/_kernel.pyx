# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row reduction kernel; same contract as _kernel_py.reduce_rows.

The arithmetic stays exact (gmpy2.mpq / Fraction objects); Cython removes
the interpreter overhead of the elimination loops, which dominates on the
large biderivation systems.
"""

from liebider.rationals import Rat

IMPLEMENTATION = "cython"

cdef object _ONE = Rat(1)


def reduce_rows(rows):
    """Canonical RREF of the span of `rows` (list of {col: Rat} dicts)."""
    cdef dict pivots = {}
    cdef dict row, piv
    cdef object c, c2, col, val, scale, cur, inv
    cdef list hits
    for src in rows:
        row = dict(src)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                break
            scale = row.pop(c)
            for col, val in piv.items():
                if col == c:
                    continue
                cur = row.get(col, 0) - scale * val
                if cur:
                    row[col] = cur
                else:
                    row.pop(col, None)
        if row:
            c = min(row)
            inv = _ONE / row[c]
            pivots[c] = {col: val * inv for col, val in row.items()}
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        hits = [col for col in row if col != c and col in pivots]
        for c2 in hits:
            scale = row.pop(c2)
            piv = pivots[c2]
            for col, val in piv.items():
                if col == c2:
                    continue
                cur = row.get(col, 0) - scale * val
                if cur:
                    row[col] = cur
                else:
                    row.pop(col, None)
    return [pivots[c] for c in sorted(pivots)]
