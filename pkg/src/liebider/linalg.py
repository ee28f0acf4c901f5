"""Exact sparse linear algebra: RREF, nullspace, span comparison.

The row reduction kernel has a compiled (Cython) and a pure-Python
implementation with identical output; the compiled one is preferred unless
LIEBIDER_PURE=1 is set or the extension is missing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .rationals import Rat, rat, rat_str

if os.environ.get("LIEBIDER_PURE"):
    from . import _kernel_py as _kernel
else:
    try:
        from . import _kernel  # type: ignore
    except ImportError:
        from . import _kernel_py as _kernel

KERNEL_IMPLEMENTATION = _kernel.IMPLEMENTATION
reduce_rows = _kernel.reduce_rows


def _default_labels(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(count))


@dataclass
class SparseMatrix:
    """Sparse rational matrix with labeled rows and columns."""

    n_rows: int
    n_cols: int
    entries: dict[tuple[int, int], Rat]
    row_labels: tuple[str, ...] = ()
    col_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.row_labels:
            self.row_labels = _default_labels("r", self.n_rows)
        if not self.col_labels:
            self.col_labels = _default_labels("c", self.n_cols)
        if len(set(self.row_labels)) != self.n_rows or len(set(self.col_labels)) != self.n_cols:
            raise ValueError("labels must be unique within their axis")
        self.entries = {
            pos: rat(v) for pos, v in self.entries.items() if v
        }

    @classmethod
    def from_dense(cls, rows, col_labels: tuple[str, ...] = ()) -> "SparseMatrix":
        entries = {}
        n_cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v:
                    entries[(i, j)] = rat(v)
        return cls(len(rows), n_cols, entries, col_labels=col_labels)

    def row_dicts(self) -> list[dict[int, Rat]]:
        rows: list[dict[int, Rat]] = [dict() for _ in range(self.n_rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def apply(self, vec: dict[int, Rat]) -> dict[int, Rat]:
        out: dict[int, Rat] = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j)
            if c:
                cur = out.get(i, 0) + v * c
                if cur:
                    out[i] = cur
                else:
                    out.pop(i, None)
        return out


@dataclass
class SubspaceBasis:
    """Canonical RREF basis of a subspace of a labeled coordinate space."""

    col_labels: tuple[str, ...]
    rows: list[dict[int, Rat]] = field(default_factory=list)

    @property
    def ambient_dimension(self) -> int:
        return len(self.col_labels)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def canonicalized(self) -> "SubspaceBasis":
        return SubspaceBasis(self.col_labels, reduce_rows(self.rows))

    def contains(self, vec: dict[int, Rat]) -> bool:
        residue = reduce_vector(vec, self.rows)
        return not residue

    def to_jsonable(self) -> dict:
        return {
            "ambient_dimension": self.ambient_dimension,
            "dimension": self.dimension,
            "vectors": [
                {self.col_labels[j]: rat_str(v) for j, v in sorted(r.items())}
                for r in self.rows
            ],
        }


def reduce_vector(vec: dict[int, Rat], pivot_rows: list[dict[int, Rat]]) -> dict[int, Rat]:
    """Residue of vec after elimination against canonical RREF rows."""
    pivots = {min(r): r for r in pivot_rows if r}
    residue = dict(vec)
    changed = True
    while changed:
        changed = False
        for c in sorted(residue):
            piv = pivots.get(c)
            if piv is None:
                continue
            scale = residue.pop(c)
            for col, val in piv.items():
                if col == c:
                    continue
                cur = residue.get(col, 0) - scale * val
                if cur:
                    residue[col] = cur
                else:
                    residue.pop(col, None)
            changed = True
            break
    return residue


def rref(m: SparseMatrix) -> SparseMatrix:
    rows = reduce_rows(m.row_dicts())
    entries = {(i, j): v for i, r in enumerate(rows) for j, v in r.items()}
    return SparseMatrix(
        len(rows),
        m.n_cols,
        entries,
        row_labels=_default_labels("p", len(rows)),
        col_labels=m.col_labels,
    )


def rank(m: SparseMatrix) -> int:
    return len(reduce_rows(m.row_dicts()))


def nullspace_rows(rows: list[dict[int, Rat]], n_cols: int) -> list[dict[int, Rat]]:
    """Canonical basis of {v : row · v = 0 for all rows}."""
    reduced = reduce_rows(rows)
    pivot_cols = [min(r) for r in reduced]
    pivot_set = set(pivot_cols)
    basis = []
    for j in range(n_cols):
        if j in pivot_set:
            continue
        vec = {j: rat(1)}
        for r, pc in zip(reduced, pivot_cols):
            c = r.get(j)
            if c:
                vec[pc] = -c
        basis.append(vec)
    return reduce_rows(basis)


def nullspace(m: SparseMatrix) -> SubspaceBasis:
    return SubspaceBasis(m.col_labels, nullspace_rows(m.row_dicts(), m.n_cols))


def span_equal(u: SubspaceBasis, v: SubspaceBasis) -> bool:
    if u.col_labels != v.col_labels:
        raise ValueError("subspaces live in differently labeled spaces")
    return reduce_rows(u.rows) == reduce_rows(v.rows)


def project(u: SubspaceBasis, kept_labels) -> SubspaceBasis:
    kept = list(kept_labels)
    index = {lab: i for i, lab in enumerate(u.col_labels)}
    for lab in kept:
        if lab not in index:
            raise ValueError(f"unknown column label {lab!r}")
    new_col = {index[lab]: k for k, lab in enumerate(kept)}
    rows = []
    for r in u.rows:
        pr = {new_col[j]: v for j, v in r.items() if j in new_col}
        if pr:
            rows.append(pr)
    return SubspaceBasis(tuple(kept), reduce_rows(rows))
