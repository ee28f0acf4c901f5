"""Window-truncated linear solves for delta-derivations and
delta-biderivations.

The defining functional equations are assembled as exact sparse linear
systems over homogeneous unknowns.  An equation is emitted for a basis
triple only when every quantity it references is fully representable
inside the window: all bracket supports land in the window and every
unknown slot's degree component fits.  Dropping the other equations can
only enlarge the solution space, never exclude a genuine global solution;
boundary artifacts are filtered afterwards by projecting onto the core
sub-window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebra import AlgebraSpec, Window
from .basis import BasisVector, Element
from .linalg import SubspaceBasis, nullspace_rows, reduce_rows, reduce_vector
from .rationals import Rat, rat, rat_str


@dataclass(frozen=True)
class DeltaParam:
    delta: Rat

    def __post_init__(self):
        object.__setattr__(self, "delta", rat(self.delta))


@dataclass
class HomLinearMap:
    """Degree-shifting linear map given by its images on window basis vectors."""

    spec: AlgebraSpec
    degree: int
    images: dict[BasisVector, Element] = field(default_factory=dict)

    def image(self, u: BasisVector) -> Element:
        return self.images.get(u, Element())


@dataclass
class HomBilinearMap:
    """Degree-shifting bilinear map given by its values on window basis pairs."""

    spec: AlgebraSpec
    degree: int
    table: dict[tuple[BasisVector, BasisVector], Element] = field(default_factory=dict)

    def value(self, u: BasisVector, v: BasisVector) -> Element:
        return self.table.get((u, v), Element())


class _WindowContext:
    """Shared precomputation: sorted basis, degrees, bracket table."""

    def __init__(self, spec: AlgebraSpec, window: Window):
        self.spec = spec
        self.window = window
        self.basis = sorted(spec.basis_vectors(window.N), key=BasisVector.sort_key)
        self.bindex = {v: i for i, v in enumerate(self.basis)}
        self.deg = [v.degree for v in self.basis]
        n = len(self.basis)
        N = window.N
        # bracket[(i, j)] -> tuple of (basis index of target, coeff); None when
        # some target falls outside the window (the triple is then skipped).
        self.bk: list[list] = [[None] * n for _ in range(n)]
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                terms = spec.bracket_basis(u, v)
                ok = all(w.is_central_tag or abs(w.n) <= N for w, _ in terms)
                self.bk[i][j] = (
                    tuple((self.bindex[w], c) for w, c in terms) if ok else None
                )
        self._targets: dict[int, list[int]] = {}

    def targets(self, d: int) -> list[int]:
        """Window basis indices spanning the full degree-d component, or []
        when that component sticks out of the window."""
        got = self._targets.get(d)
        if got is None:
            if abs(d) > self.window.N:
                got = []
            else:
                got = [self.bindex[w] for w in self.spec.degree_component(d)]
            self._targets[d] = got
        return got


class BilinearCoords:
    """Unknown coordinates (u, v, target) for one homogeneous bilinear solve."""

    def __init__(self, ctx: _WindowContext, degree: int):
        self.ctx = ctx
        self.degree = degree
        basis, deg = ctx.basis, ctx.deg
        n = len(basis)
        self.slot_cols: list[list] = [[None] * n for _ in range(n)]
        self.keys: list[tuple[int, int, int]] = []
        for i in range(n):
            for j in range(n):
                tg = ctx.targets(deg[i] + deg[j] + degree)
                if not tg:
                    continue
                cols = []
                for w in tg:
                    cols.append((w, len(self.keys)))
                    self.keys.append((i, j, w))
                self.slot_cols[i][j] = cols
        self.n_cols = len(self.keys)

    def label(self, col: int) -> str:
        i, j, w = self.keys[col]
        b = self.ctx.basis
        return f"f({b[i].text()},{b[j].text()})->{b[w].text()}"

    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(c) for c in range(self.n_cols))

    def core_cols(self) -> list[int]:
        win, b = self.ctx.window, self.ctx.basis
        return [
            c
            for c, (i, j, w) in enumerate(self.keys)
            if win.in_core(b[i]) and win.in_core(b[j]) and win.in_core(b[w])
        ]

    def flip(self, col: int) -> int | None:
        i, j, w = self.keys[col]
        cols = self.slot_cols[j][i]
        if cols is None:
            return None
        for ww, c in cols:
            if ww == w:
                return c
        return None

    def vector_of(self, value_fn: Callable[[BasisVector, BasisVector], Element]) -> dict[int, Rat]:
        """Window restriction of a globally defined bilinear map."""
        b = self.ctx.basis
        vec: dict[int, Rat] = {}
        for col, (i, j, w) in enumerate(self.keys):
            c = value_fn(b[i], b[j]).coeff(b[w])
            if c:
                vec[col] = c
        return vec

    def reconstitute(self, vec: dict[int, Rat]) -> HomBilinearMap:
        b = self.ctx.basis
        f = HomBilinearMap(self.ctx.spec, self.degree)
        for col, c in vec.items():
            i, j, w = self.keys[col]
            f.table.setdefault((b[i], b[j]), Element()).add_term(b[w], c)
        # register empty values for every representable pair
        for i in range(len(b)):
            for j in range(len(b)):
                if self.slot_cols[i][j] is not None:
                    f.table.setdefault((b[i], b[j]), Element())
        return f


def _add(row: dict, col: int, val) -> None:
    cur = row.get(col, 0) + val
    if cur:
        row[col] = cur
    else:
        row.pop(col, None)


def _normalized(row: dict) -> tuple | None:
    if not row:
        return None
    lead = row[min(row)]
    if lead == 1:
        return tuple(sorted(row.items()))
    inv = rat(1) / lead
    return tuple(sorted((c, v * inv) for c, v in row.items()))


class _RowCollector:
    def __init__(self):
        self.seen: set = set()
        self.rows: list[dict] = []
        self.emitted = 0

    def add(self, row: dict) -> None:
        self.emitted += 1
        key = _normalized(row)
        if key is None or key in self.seen:
            return
        self.seen.add(key)
        self.rows.append(dict(key))


def assemble_biderivation_rows(
    ctx: _WindowContext,
    coords: BilinearCoords,
    delta: Rat,
    known: Callable[[int, int], dict[int, Rat]] | None = None,
    const_col: int | None = None,
) -> _RowCollector:
    """Rows of the linear system for both defining equations.

    `known` optionally supplies a fixed inhomogeneous part per pair slot
    (used by lift_check); its contributions are accumulated in the column
    `const_col`.
    """
    basis, deg, bk = ctx.basis, ctx.deg, ctx.bk
    n = len(basis)
    N = ctx.window.N
    nn = coords.degree
    slot_cols = coords.slot_cols
    out = _RowCollector()

    def known_terms(i: int, j: int) -> dict[int, Rat]:
        return known(i, j) if known is not None else {}

    # Equation (1): d[x,f(y,z)] + d[f(x,z),y] = f([x,y],z).
    # Swapping x and y negates the whole equation, so x < y suffices.
    for xi in range(n):
        for yi in range(xi + 1, n):
            bxy = bk[xi][yi]
            if bxy is None:
                continue
            for zi in range(n):
                cols_yz = slot_cols[yi][zi]
                cols_xz = slot_cols[xi][zi]
                D = deg[xi] + deg[yi] + deg[zi] + nn
                if cols_yz is None or cols_xz is None or abs(D) > N:
                    continue
                tg = ctx.targets(D)
                if not tg:
                    continue
                rows: dict[int, dict] = {}
                for s, col in cols_yz:
                    br = bk[xi][s]
                    for w, c in br:
                        _add(rows.setdefault(w, {}), col, delta * c)
                for s, col in cols_xz:
                    br = bk[s][yi]
                    for w, c in br:
                        _add(rows.setdefault(w, {}), col, delta * c)
                for t, c in bxy:
                    cols_tz = slot_cols[t][zi]
                    if cols_tz is None:
                        rows = None
                        break
                    for w, col in cols_tz:
                        _add(rows.setdefault(w, {}), col, -c)
                if rows is None:
                    continue
                if known is not None:
                    for s, cs in known_terms(yi, zi).items():
                        for w, c in bk[xi][s]:
                            _add(rows.setdefault(w, {}), const_col, delta * c * cs)
                    for s, cs in known_terms(xi, zi).items():
                        for w, c in bk[s][yi]:
                            _add(rows.setdefault(w, {}), const_col, delta * c * cs)
                    for t, c in bxy:
                        for w, cs in known_terms(t, zi).items():
                            _add(rows.setdefault(w, {}), const_col, -c * cs)
                for row in rows.values():
                    if row:
                        out.add(row)

    # Equation (2): d[f(x,y),z] + d[y,f(x,z)] = f(x,[y,z]).
    # Swapping y and z negates the whole equation, so y < z suffices.
    for yi in range(n):
        for zi in range(yi + 1, n):
            byz = bk[yi][zi]
            if byz is None:
                continue
            for xi in range(n):
                cols_xy = slot_cols[xi][yi]
                cols_xz = slot_cols[xi][zi]
                D = deg[xi] + deg[yi] + deg[zi] + nn
                if cols_xy is None or cols_xz is None or abs(D) > N:
                    continue
                if not ctx.targets(D):
                    continue
                rows: dict[int, dict] = {}
                for s, col in cols_xy:
                    for w, c in bk[s][zi]:
                        _add(rows.setdefault(w, {}), col, delta * c)
                for s, col in cols_xz:
                    for w, c in bk[yi][s]:
                        _add(rows.setdefault(w, {}), col, delta * c)
                for t, c in byz:
                    cols_xt = slot_cols[xi][t]
                    if cols_xt is None:
                        rows = None
                        break
                    for w, col in cols_xt:
                        _add(rows.setdefault(w, {}), col, -c)
                if rows is None:
                    continue
                if known is not None:
                    for s, cs in known_terms(xi, yi).items():
                        for w, c in bk[s][zi]:
                            _add(rows.setdefault(w, {}), const_col, delta * c * cs)
                    for s, cs in known_terms(xi, zi).items():
                        for w, c in bk[yi][s]:
                            _add(rows.setdefault(w, {}), const_col, delta * c * cs)
                    for t, c in byz:
                        for w, cs in known_terms(xi, t).items():
                            _add(rows.setdefault(w, {}), const_col, -c * cs)
                for row in rows.values():
                    if row:
                        out.add(row)
    return out


@dataclass
class SolveReport:
    spec: AlgebraSpec
    delta: Rat
    degree: int
    window: Window
    kind: str
    raw_basis: SubspaceBasis
    core_basis: SubspaceBasis
    constraint_count: int
    unknown_count: int

    @property
    def raw_dimension(self) -> int:
        return self.raw_basis.dimension

    @property
    def core_dimension(self) -> int:
        return self.core_basis.dimension

    def to_jsonable(self) -> dict:
        return {
            "kind": self.kind,
            "family": self.spec.family,
            "a": rat_str(self.spec.a),
            "b": rat_str(self.spec.b),
            "delta": rat_str(self.delta),
            "degree": self.degree,
            "window": {"N": self.window.N, "M": self.window.M},
            "constraint_count": self.constraint_count,
            "unknown_count": self.unknown_count,
            "raw_dimension": self.raw_dimension,
            "core_dimension": self.core_dimension,
            "core_basis": self.core_basis.to_jsonable(),
        }


def _check_certified(window: Window, degree: int) -> None:
    if abs(degree) > window.core_bound:
        raise ValueError(
            f"degree {degree} exceeds the certified range |n| <= {window.core_bound}"
        )


def _core_project(coords, raw_rows: list[dict[int, Rat]]) -> SubspaceBasis:
    core = coords.core_cols()
    remap = {c: k for k, c in enumerate(core)}
    labels = tuple(coords.label(c) for c in core)
    rows = []
    for r in raw_rows:
        pr = {remap[c]: v for c, v in r.items() if c in remap}
        if pr:
            rows.append(pr)
    return SubspaceBasis(labels, reduce_rows(rows))


def biderivation_space(
    spec: AlgebraSpec,
    delta: DeltaParam,
    degree: int,
    window: Window,
    certified: bool = True,
) -> tuple[SolveReport, BilinearCoords]:
    """Certified solve for homogeneous degree-`degree` delta-biderivations.

    With certified=False the degree may exceed the core bound; the raw
    space is still sound but the core projection is not guaranteed to
    match the global answer.
    """
    if certified:
        _check_certified(window, degree)
    ctx = _WindowContext(spec, window)
    coords = BilinearCoords(ctx, degree)
    collected = assemble_biderivation_rows(ctx, coords, delta.delta)
    raw = nullspace_rows(collected.rows, coords.n_cols)
    report = SolveReport(
        spec,
        delta.delta,
        degree,
        window,
        "biderivation",
        SubspaceBasis(coords.labels(), raw),
        _core_project(coords, raw),
        collected.emitted,
        coords.n_cols,
    )
    return report, coords


class LinearCoords:
    """Unknown coordinates (u, target) for one homogeneous linear solve."""

    def __init__(self, ctx: _WindowContext, degree: int):
        self.ctx = ctx
        self.degree = degree
        self.slot_cols: list = [None] * len(ctx.basis)
        self.keys: list[tuple[int, int]] = []
        for i, d in enumerate(ctx.deg):
            tg = ctx.targets(d + degree)
            if not tg:
                continue
            cols = []
            for w in tg:
                cols.append((w, len(self.keys)))
                self.keys.append((i, w))
            self.slot_cols[i] = cols
        self.n_cols = len(self.keys)

    def label(self, col: int) -> str:
        i, w = self.keys[col]
        b = self.ctx.basis
        return f"f({b[i].text()})->{b[w].text()}"

    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(c) for c in range(self.n_cols))

    def core_cols(self) -> list[int]:
        win, b = self.ctx.window, self.ctx.basis
        return [
            c for c, (i, w) in enumerate(self.keys) if win.in_core(b[i]) and win.in_core(b[w])
        ]

    def vector_of(self, image_fn: Callable[[BasisVector], Element]) -> dict[int, Rat]:
        vec: dict[int, Rat] = {}
        b = self.ctx.basis
        for col, (i, w) in enumerate(self.keys):
            c = image_fn(b[i]).coeff(b[w])
            if c:
                vec[col] = c
        return vec

    def reconstitute(self, vec: dict[int, Rat]) -> HomLinearMap:
        b = self.ctx.basis
        f = HomLinearMap(self.ctx.spec, self.degree)
        for col, c in vec.items():
            i, w = self.keys[col]
            f.images.setdefault(b[i], Element()).add_term(b[w], c)
        return f


def derivation_space(
    spec: AlgebraSpec,
    delta: DeltaParam,
    degree: int,
    window: Window,
    certified: bool = True,
) -> tuple[SolveReport, LinearCoords]:
    """Certified solve for homogeneous degree-`degree` delta-derivations:
    f([u,v]) = d[f(u),v] + d[u,f(v)]."""
    if certified:
        _check_certified(window, degree)
    ctx = _WindowContext(spec, window)
    coords = LinearCoords(ctx, degree)
    basis, deg, bk = ctx.basis, ctx.deg, ctx.bk
    n = len(basis)
    N = window.N
    d = delta.delta
    out = _RowCollector()
    for ui in range(n):
        for vi in range(ui + 1, n):
            buv = bk[ui][vi]
            cols_u = coords.slot_cols[ui]
            cols_v = coords.slot_cols[vi]
            D = deg[ui] + deg[vi] + degree
            if buv is None or cols_u is None or cols_v is None or abs(D) > N:
                continue
            if not ctx.targets(D):
                continue
            rows: dict[int, dict] = {}
            for s, col in cols_u:
                for w, c in bk[s][vi]:
                    _add(rows.setdefault(w, {}), col, d * c)
            for s, col in cols_v:
                for w, c in bk[ui][s]:
                    _add(rows.setdefault(w, {}), col, d * c)
            for t, c in buv:
                cols_t = coords.slot_cols[t]
                if cols_t is None:
                    rows = None
                    break
                for w, col in cols_t:
                    _add(rows.setdefault(w, {}), col, -c)
            if rows is None:
                continue
            for row in rows.values():
                if row:
                    out.add(row)
    raw = nullspace_rows(out.rows, coords.n_cols)
    report = SolveReport(
        spec,
        d,
        degree,
        window,
        "derivation",
        SubspaceBasis(coords.labels(), raw),
        _core_project(coords, raw),
        out.emitted,
        coords.n_cols,
    )
    return report, coords


class FullBilinearCoords:
    """Unknowns f(u, v) -> w without the homogeneity restriction."""

    def __init__(self, ctx: _WindowContext):
        self.ctx = ctx
        basis = ctx.basis
        n = len(basis)
        self.keys: list[tuple[int, int, int]] = [
            (i, j, w) for i in range(n) for j in range(n) for w in range(n)
        ]
        self.col_of = {k: c for c, k in enumerate(self.keys)}
        self.n_cols = len(self.keys)

    def label(self, col: int) -> str:
        i, j, w = self.keys[col]
        b = self.ctx.basis
        return f"f({b[i].text()},{b[j].text()})->{b[w].text()}"

    def core_cols(self) -> list[int]:
        win, b = self.ctx.window, self.ctx.basis
        return [
            c
            for c, (i, j, w) in enumerate(self.keys)
            if win.in_core(b[i]) and win.in_core(b[j]) and win.in_core(b[w])
        ]


def full_window_biderivations(
    spec: AlgebraSpec, delta: DeltaParam, window: Window
) -> tuple[SolveReport, FullBilinearCoords]:
    """Solve without the homogeneity restriction (small windows only).

    Per-target emission: a coefficient equation at target w is emitted only
    when no out-of-window component of any unknown slot could contribute.
    """
    ctx = _WindowContext(spec, window)
    coords = FullBilinearCoords(ctx)
    basis, deg, bk = ctx.basis, ctx.deg, ctx.bk
    n = len(basis)
    N = window.N
    d = delta.delta
    col_of = coords.col_of
    out = _RowCollector()

    def flush(rows: dict[int, dict], bounds: Callable[[int], bool]) -> None:
        for w, row in rows.items():
            if row and bounds(w):
                out.add(row)

    for xi in range(n):
        for yi in range(xi + 1, n):
            bxy = bk[xi][yi]
            if bxy is None:
                continue
            for zi in range(n):
                rows: dict[int, dict] = {}
                for s in range(n):
                    # a None bracket has all targets out of the window; those
                    # rows would be discarded by the per-target filter anyway
                    for w, c in bk[xi][s] or ():
                        _add(rows.setdefault(w, {}), col_of[(yi, zi, s)], d * c)
                    for w, c in bk[s][yi] or ():
                        _add(rows.setdefault(w, {}), col_of[(xi, zi, s)], d * c)
                for t, c in bxy:
                    for w in range(n):
                        _add(rows.setdefault(w, {}), col_of[(t, zi, w)], -c)
                dx, dy = deg[xi], deg[yi]
                flush(
                    rows,
                    lambda w, dx=dx, dy=dy: abs(deg[w] - dx) <= N and abs(deg[w] - dy) <= N,
                )
    for yi in range(n):
        for zi in range(yi + 1, n):
            byz = bk[yi][zi]
            if byz is None:
                continue
            for xi in range(n):
                rows = {}
                for s in range(n):
                    for w, c in bk[s][zi] or ():
                        _add(rows.setdefault(w, {}), col_of[(xi, yi, s)], d * c)
                    for w, c in bk[yi][s] or ():
                        _add(rows.setdefault(w, {}), col_of[(xi, zi, s)], d * c)
                for t, c in byz:
                    for w in range(n):
                        _add(rows.setdefault(w, {}), col_of[(xi, t, w)], -c)
                dy, dz = deg[yi], deg[zi]
                flush(
                    rows,
                    lambda w, dy=dy, dz=dz: abs(deg[w] - dy) <= N and abs(deg[w] - dz) <= N,
                )
    raw = nullspace_rows(out.rows, coords.n_cols)
    report = SolveReport(
        spec,
        d,
        0,
        window,
        "full-biderivation",
        SubspaceBasis(tuple(coords.label(c) for c in range(coords.n_cols)), raw),
        _core_project(coords, raw),
        out.emitted,
        coords.n_cols,
    )
    return report, coords


def quotient_induce(spec: AlgebraSpec, f: HomBilinearMap) -> HomBilinearMap:
    """Induced map on the quotient by the central tags (Virasoro -> Witt,
    wtilde -> w): drop central-tag value components and central arguments."""
    qspec = spec.quotient()
    out = HomBilinearMap(qspec, f.degree)
    for (u, v), val in f.table.items():
        if u.is_central_tag or v.is_central_tag:
            continue
        out.table[(u, v)] = Element(
            {w: c for w, c in val.terms.items() if not w.is_central_tag}
        )
    return out


@dataclass
class LiftResult:
    feasible: bool
    labels: tuple[str, ...] = ()
    particular: dict[int, Rat] | None = None
    kernel: SubspaceBasis | None = None

    def lift_matches(self, candidate: dict[int, Rat]) -> bool:
        """Does `candidate` differ from the particular lift by a kernel element?"""
        if not self.feasible:
            return False
        diff = dict(self.particular)
        for c, v in candidate.items():
            cur = diff.get(c, 0) - v
            if cur:
                diff[c] = cur
            else:
                diff.pop(c, None)
        return not reduce_vector(diff, self.kernel.rows)


class LiftCoords:
    """Unknowns of the lift problem: central-tag corrections on L/I pairs
    plus full components on pairs with a central argument."""

    def __init__(self, ctx: _WindowContext, degree: int):
        self.ctx = ctx
        self.degree = degree
        basis, deg = ctx.basis, ctx.deg
        n = len(basis)
        self.slot_cols: list[list] = [[None] * n for _ in range(n)]
        self.keys: list[tuple[int, int, int]] = []
        for i in range(n):
            for j in range(n):
                tg = ctx.targets(deg[i] + deg[j] + degree)
                if not tg:
                    continue
                central_arg = basis[i].is_central_tag or basis[j].is_central_tag
                cols = []
                for w in tg:
                    if central_arg or basis[w].is_central_tag:
                        cols.append((w, len(self.keys)))
                        self.keys.append((i, j, w))
                self.slot_cols[i][j] = cols
        self.n_cols = len(self.keys)

    def label(self, col: int) -> str:
        i, j, w = self.keys[col]
        b = self.ctx.basis
        return f"f({b[i].text()},{b[j].text()})->{b[w].text()}"

    def vector_of(self, value_fn) -> dict[int, Rat]:
        b = self.ctx.basis
        vec: dict[int, Rat] = {}
        for col, (i, j, w) in enumerate(self.keys):
            c = value_fn(b[i], b[j]).coeff(b[w])
            if c:
                vec[col] = c
        return vec


def lift_check(
    f: HomBilinearMap, ext: AlgebraSpec, delta: DeltaParam, window: Window
) -> LiftResult:
    """Can f (a biderivation of the quotient family) be lifted to ext?

    Solves the inhomogeneous system for f~ = (fixed preimage of f) +
    correction, where the correction is central-valued on L/I pairs and
    unrestricted on pairs with a central argument.
    """
    if ext.quotient() != f.spec:
        raise ValueError(
            f"{ext.label()} is not the central extension of {f.spec.label()}"
        )
    ctx = _WindowContext(ext, window)
    coords = LiftCoords(ctx, f.degree)
    basis = ctx.basis
    const_col = coords.n_cols

    known_cache: dict[tuple[int, int], dict[int, Rat]] = {}

    def known(i: int, j: int) -> dict[int, Rat]:
        got = known_cache.get((i, j))
        if got is None:
            u, v = basis[i], basis[j]
            got = {}
            if not (u.is_central_tag or v.is_central_tag):
                for w, c in f.value(u, v).terms.items():
                    got[ctx.bindex[w]] = c
            known_cache[(i, j)] = got
        return got

    full_coords = BilinearCoords(ctx, f.degree)
    # reuse the full assembler, but with lift unknowns: remap its slot_cols
    full_coords.slot_cols = coords.slot_cols
    full_coords.keys = coords.keys
    full_coords.n_cols = coords.n_cols
    collected = assemble_biderivation_rows(
        ctx, full_coords, delta.delta, known=known, const_col=const_col
    )
    reduced = reduce_rows(collected.rows)
    for r in reduced:
        if min(r) == const_col:
            return LiftResult(False)
    particular: dict[int, Rat] = {}
    for r in reduced:
        c = r.get(const_col)
        if c:
            particular[min(r)] = -c
    hom_rows = []
    for r in collected.rows:
        hr = {c: v for c, v in r.items() if c != const_col}
        if hr:
            hom_rows.append(hr)
    kernel = SubspaceBasis(
        tuple(coords.label(c) for c in range(coords.n_cols)),
        nullspace_rows(hom_rows, coords.n_cols),
    )
    return LiftResult(True, kernel.col_labels, particular, kernel)


def biderivation_violation(
    spec: AlgebraSpec,
    delta: DeltaParam,
    f: HomBilinearMap,
    window: Window,
):
    """First emitted triple where f fails one of the defining equations.

    Returns None when f satisfies every emitted constraint exactly.
    """
    from .algebra import bracket

    ctx = _WindowContext(spec, window)
    basis, deg, bk = ctx.basis, ctx.deg, ctx.bk
    n = len(basis)
    N = window.N
    d = delta.delta
    nn = f.degree

    def slot_ok(i, j):
        return bool(ctx.targets(deg[i] + deg[j] + nn))

    def el(terms) -> Element:
        return Element.from_pairs((basis[w], c) for w, c in terms)

    for xi in range(n):
        for yi in range(n):
            bxy = bk[xi][yi]
            if bxy is None:
                continue
            for zi in range(n):
                D = deg[xi] + deg[yi] + deg[zi] + nn
                if not (slot_ok(yi, zi) and slot_ok(xi, zi) and abs(D) <= N and ctx.targets(D)):
                    continue
                if any(not slot_ok(t, zi) for t, _ in bxy):
                    continue
                x, y, z = basis[xi], basis[yi], basis[zi]
                lhs = bracket(spec, Element.basis(x), f.value(y, z)).scaled(d)
                lhs = lhs.add(bracket(spec, f.value(x, z), Element.basis(y)).scaled(d))
                rhs = Element()
                for t, c in bxy:
                    rhs = rhs.add(f.value(basis[t], z), c)
                if lhs != rhs:
                    return ("eq1", (x, y, z), lhs, rhs)
                # equation (2) for the same triple
                if not slot_ok(xi, yi):
                    continue
                byz = bk[yi][zi]
                if byz is None or any(not slot_ok(xi, t) for t, _ in byz):
                    continue
                lhs2 = bracket(spec, f.value(x, y), Element.basis(z)).scaled(d)
                lhs2 = lhs2.add(bracket(spec, Element.basis(y), f.value(x, z)).scaled(d))
                rhs2 = Element()
                for t, c in byz:
                    rhs2 = rhs2.add(f.value(x, basis[t]), c)
                if lhs2 != rhs2:
                    return ("eq2", (x, y, z), lhs2, rhs2)
    return None


def center_interaction_violations(
    report: SolveReport, coords: BilinearCoords
) -> list[str]:
    """Structural checks on every raw solution basis vector, for nonzero
    delta: values on a central argument are central-valued, and vanish
    entirely when the algebra is perfect.  Returns offending coordinate
    labels (empty = all checks pass).  Checked for core arguments only;
    outside the core the window does not certify the solve.
    """
    from .algebra import is_central_vector

    ctx = coords.ctx
    spec, win, basis = ctx.spec, ctx.window, ctx.basis
    bad = []
    if report.delta == 0:
        return bad
    for row in report.raw_basis.rows:
        for c in row:
            i, j, w = coords.keys[c]
            u, v, t = basis[i], basis[j], basis[w]
            ui_central = is_central_vector(spec, u)
            vj_central = is_central_vector(spec, v)
            if ui_central and win.in_core(v) or vj_central and win.in_core(u):
                if spec.is_perfect or not is_central_vector(spec, t):
                    bad.append(coords.label(c))
    return sorted(set(bad))


def central_valued_core_dimension(
    report: SolveReport, coords: BilinearCoords
) -> int:
    """Dimension of the subspace of the core-certified span consisting of
    center-valued maps.  Zero for perfect algebras."""
    from .algebra import is_central_vector

    ctx = coords.ctx
    spec, basis = ctx.spec, ctx.basis
    core = coords.core_cols()
    core_keys = [coords.keys[c] for c in core]
    rows = report.core_basis.rows
    if not rows:
        return 0
    k = len(rows)
    # combos a with sum_i a_i rows_i vanishing on all non-central targets
    constraint: dict[int, dict[int, Rat]] = {}
    for i, r in enumerate(rows):
        for c, val in r.items():
            _, _, w = core_keys[c]
            if not is_central_vector(spec, basis[w]):
                constraint.setdefault(c, {})[i] = val
    return len(nullspace_rows(list(constraint.values()), k))


def quotient_induction_violation(
    report: SolveReport, coords: BilinearCoords, check_window: Window
):
    """For families with central tags: the map induced on the quotient by
    each raw solution must itself satisfy both defining equations.  Returns
    the first violation, or None."""
    spec = coords.ctx.spec
    if not spec.central_kinds():
        return None
    for row in report.raw_basis.rows:
        f = coords.reconstitute(row)
        induced = quotient_induce(spec, f)
        bad = biderivation_violation(
            induced.spec, DeltaParam(report.delta), induced, check_window
        )
        if bad is not None:
            return bad
    return None


def invariant_subspace_part(
    basis_rows: list[dict[int, Rat]],
    flip: Callable[[int], int | None],
    sign: int,
) -> list[dict[int, Rat]]:
    """Part of a flip-invariant solution space fixed by (sign * flip).

    sign=+1 gives the symmetric part, sign=-1 the skew part.  The input
    rows must be canonical RREF.
    """
    if not basis_rows:
        return []
    pivot_cols = [min(r) for r in basis_rows]
    k = len(basis_rows)
    # coordinates of flip(s_i) in the pivot-column coordinate system
    small_rows = []
    for i, r in enumerate(basis_rows):
        flipped: dict[int, Rat] = {}
        for c, v in r.items():
            fc = flip(c)
            if fc is None:
                raise ValueError("solution space is not flip-invariant")
            _add(flipped, fc, v)
        row = {}
        for j, pc in enumerate(pivot_cols):
            coeff = flipped.get(pc, 0) * sign
            if j == i:
                coeff = coeff - 1
            if coeff:
                row[j] = coeff
        small_rows.append(row)
    # solve (sign*F - I) a = 0 where columns index the combination coeffs
    transposed: dict[int, dict[int, Rat]] = {}
    for i, row in enumerate(small_rows):
        for j, v in row.items():
            transposed.setdefault(j, {})[i] = v
    coeff_rows = [transposed.get(j, {}) for j in range(k)]
    combos = nullspace_rows(coeff_rows, k)
    out = []
    for combo in combos:
        vec: dict[int, Rat] = {}
        for i, a in combo.items():
            for c, v in basis_rows[i].items():
                _add(vec, c, a * v)
        if vec:
            out.append(vec)
    return reduce_rows(out)
