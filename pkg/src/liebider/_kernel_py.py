"""Pure-Python row reduction kernel.

Rows are sparse dicts {column index: rational}.  reduce_rows returns the
canonical reduced row echelon form, which is unique for a given row span,
so the result does not depend on the input row order.
"""

from __future__ import annotations

from .rationals import Rat

IMPLEMENTATION = "python"

_ONE = Rat(1)


def reduce_rows(rows):
    """Canonical RREF of the span of `rows` (list of {col: Rat} dicts)."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
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
    # Back-substitution, highest pivot first, makes each pivot column the
    # only nonzero entry of its column.
    for c in sorted(pivots, reverse=True):
        row = pivots[c]
        hits = [col for col in row if col != c and col in pivots]
        for c2 in hits:
            scale = row.pop(c2)
            for col, val in pivots[c2].items():
                if col == c2:
                    continue
                cur = row.get(col, 0) - scale * val
                if cur:
                    row[col] = cur
                else:
                    row.pop(col, None)
    return [pivots[c] for c in sorted(pivots)]
