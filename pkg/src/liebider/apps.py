"""Applications of the biderivation engine: commuting linear maps,
commutative post-Lie products, and transposed delta-Poisson products.

Product structures are given in closed form with finite parameter
support, so the algebraic axioms are evaluated exactly on window triples
with no truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .algebra import AlgebraSpec, Window, bracket, is_central_vector as _is_central_vector
from .basis import BasisVector, Element, In, Ln, central, C0, C1_1, C2_1
from .linalg import SubspaceBasis, reduce_rows, span_equal
from .rationals import Rat, rat, rat_str
from .solver import (
    BilinearCoords,
    DeltaParam,
    SolveReport,
    _RowCollector,
    _WindowContext,
    _add,
    _core_project,
    biderivation_space,
    invariant_subspace_part,
)
from .linalg import nullspace_rows

_ZERO = Element()


# ---------------------------------------------------------------------------
# commuting linear maps


class CommutingCoords:
    """Unknowns phi(u) -> w, where w runs over non-central basis vectors.

    Center-valued maps are trivially commuting and span an
    infinite-dimensional space, so the solve is performed modulo them by
    excluding central targets.
    """

    def __init__(self, ctx: _WindowContext):
        self.ctx = ctx
        spec = ctx.spec
        self.targets = [
            i for i, w in enumerate(ctx.basis) if not _is_central_vector(spec, w)
        ]
        self.keys: list[tuple[int, int]] = [
            (i, w) for i in range(len(ctx.basis)) for w in self.targets
        ]
        self.col_of = {k: c for c, k in enumerate(self.keys)}
        self.n_cols = len(self.keys)

    def label(self, col: int) -> str:
        i, w = self.keys[col]
        b = self.ctx.basis
        return f"phi({b[i].text()})->{b[w].text()}"

    def core_cols(self) -> list[int]:
        win, b = self.ctx.window, self.ctx.basis
        return [
            c for c, (i, w) in enumerate(self.keys) if win.in_core(b[i]) and win.in_core(b[w])
        ]

    def vector_of(self, image_fn: Callable[[BasisVector], Element]) -> dict[int, Rat]:
        b = self.ctx.basis
        vec: dict[int, Rat] = {}
        for col, (i, w) in enumerate(self.keys):
            c = image_fn(b[i]).coeff(b[w])
            if c:
                vec[col] = c
        return vec


@dataclass
class CommutingMapReport:
    spec: AlgebraSpec
    window: Window
    raw_basis: SubspaceBasis
    core_basis: SubspaceBasis
    constraint_count: int
    unknown_count: int

    @property
    def core_dimension(self) -> int:
        return self.core_basis.dimension

    def to_jsonable(self) -> dict:
        return {
            "kind": "commuting-linear-maps",
            "family": self.spec.family,
            "a": rat_str(self.spec.a),
            "b": rat_str(self.spec.b),
            "window": {"N": self.window.N, "M": self.window.M},
            "constraint_count": self.constraint_count,
            "unknown_count": self.unknown_count,
            "raw_dimension": self.raw_basis.dimension,
            "core_dimension": self.core_basis.dimension,
            "core_basis": self.core_basis.to_jsonable(),
        }


def commuting_maps(spec: AlgebraSpec, window: Window) -> tuple[CommutingMapReport, CommutingCoords]:
    """Space of linear maps with [phi(x), y] = [x, phi(y)], solved modulo
    center-valued maps.

    An equation row at target t is emitted only when every basis vector
    that can produce t through either side's bracket lies in the window.
    """
    ctx = _WindowContext(spec, window)
    coords = CommutingCoords(ctx)
    basis, deg, bk = ctx.basis, ctx.deg, ctx.bk
    n = len(basis)
    N = window.N
    col_of = coords.col_of
    out = _RowCollector()
    for xi in range(n):
        for yi in range(xi + 1, n):
            rows: dict[int, dict] = {}
            for w in coords.targets:
                for t, c in bk[w][yi] or ():
                    _add(rows.setdefault(t, {}), col_of[(xi, w)], c)
                for t, c in bk[xi][w] or ():
                    _add(rows.setdefault(t, {}), col_of[(yi, w)], -c)
            dx, dy = deg[xi], deg[yi]
            for t, row in rows.items():
                if row and abs(deg[t] - dx) <= N and abs(deg[t] - dy) <= N:
                    out.add(row)
    raw = nullspace_rows(out.rows, coords.n_cols)
    report = CommutingMapReport(
        spec,
        window,
        SubspaceBasis(tuple(coords.label(c) for c in range(coords.n_cols)), raw),
        _core_project(coords, raw),
        out.emitted,
        coords.n_cols,
    )
    return report, coords


def commuting_map_generators(spec: AlgebraSpec) -> list[tuple[str, Callable]]:
    """The classified commuting maps, modulo center-valued maps."""

    def ident(u: BasisVector) -> Element:
        if _is_central_vector(spec, u):
            return _ZERO
        return Element.basis(u)

    def l_to_i(u: BasisVector) -> Element:
        return Element.basis(In(u.n)) if u.kind == "L" else _ZERO

    out = [("id", ident)]
    if spec.family in ("w", "wtilde") and spec.a == 0 and spec.b == -1:
        name = "Theta~_1^(0,-1)" if spec.family == "wtilde" else "Theta_1^(0,-1)"
        out.append((name, l_to_i))
    return out


def verify_commuting_case(spec: AlgebraSpec, window: Window):
    """Compare the solved core space with the classified generators."""
    from .catalog import CaseResult, _core_span

    report, coords = commuting_maps(spec, window)
    gens = commuting_map_generators(spec)
    vectors = [coords.vector_of(fn) for _, fn in gens]
    expected = _core_span(coords, [v for v in vectors if v])
    status = "confirmed" if span_equal(expected, report.core_basis) else "mismatch"
    return CaseResult(
        spec, rat(1), 0, window, "commuting-linear-maps", status,
        tuple(name for name, _ in gens), expected.dimension,
        report.core_basis.dimension,
    )


# ---------------------------------------------------------------------------
# bilinear products given in closed form


@dataclass
class BilinearProduct:
    """A commutative product on the window span, given by a closed-form
    value function valid for arbitrary basis indices."""

    name: str
    spec: AlgebraSpec
    value_fn: Callable[[BasisVector, BasisVector], Element]

    def value(self, u: BasisVector, v: BasisVector) -> Element:
        return self.value_fn(u, v)

    def apply(self, x: Element, y: Element) -> Element:
        out = Element()
        for u, cu in x.terms.items():
            for v, cv in y.terms.items():
                out = out.add(self.value_fn(u, v), cu * cv)
        return out


def _coeffs(params: dict[int, object]) -> dict[int, Rat]:
    return {int(n): rat(c) for n, c in params.items()}


def product_witt_scaling(spec: AlgebraSpec, lam: dict[int, object]) -> BilinearProduct:
    """L_i . L_j = sum_n lam_n L_{n+i+j} (Witt)."""
    lam = _coeffs(lam)

    def val(u, v):
        if u.kind == "L" and v.kind == "L":
            return Element.from_pairs((Ln(n + u.n + v.n), c) for n, c in lam.items())
        return _ZERO

    return BilinearProduct("witt-scaling", spec, val)


def product_ll_to_i(spec: AlgebraSpec, lam: dict[int, object]) -> BilinearProduct:
    """L_i . L_j = sum_n lam_n I_{n+i+j}; everything else 0."""
    lam = _coeffs(lam)

    def val(u, v):
        if u.kind == "L" and v.kind == "L":
            return Element.from_pairs((In(n + u.n + v.n), c) for n, c in lam.items())
        return _ZERO

    return BilinearProduct("ll-to-i", spec, val)


def product_ll_to_i_weighted(spec: AlgebraSpec, lam: dict[int, object]) -> BilinearProduct:
    """L_i . L_j = sum_n (a+n+i+j) lam_n I_{n+i+j}; everything else 0."""
    lam = _coeffs(lam)
    a = spec.a

    def val(u, v):
        if u.kind == "L" and v.kind == "L":
            return Element.from_pairs(
                (In(n + u.n + v.n), c * (a + n + u.n + v.n)) for n, c in lam.items()
            )
        return _ZERO

    return BilinearProduct("ll-to-i-weighted", spec, val)


def product_w_minus1(
    spec: AlgebraSpec, lam: dict[int, object], mu: dict[int, object]
) -> BilinearProduct:
    """L_i . L_j = sum lam_n L_{n+i+j} + sum mu_n I_{n+i+j};
    L_i . I_j = I_i . L_j = sum lam_n I_{n+i+j}; I . I = 0."""
    lam, mu = _coeffs(lam), _coeffs(mu)

    def val(u, v):
        if u.kind == "L" and v.kind == "L":
            out = Element.from_pairs((Ln(n + u.n + v.n), c) for n, c in lam.items())
            for n, c in mu.items():
                out.add_term(In(n + u.n + v.n), c)
            return out
        if {u.kind, v.kind} == {"L", "I"}:
            return Element.from_pairs((In(n + u.n + v.n), c) for n, c in lam.items())
        return _ZERO

    return BilinearProduct("w-minus1", spec, val)


def product_central_square(
    spec: AlgebraSpec, alpha, beta, gamma
) -> BilinearProduct:
    """(I_0, I_0) -> alpha C0 + beta C1^1 + gamma C2^1; everything else 0."""
    alpha, beta, gamma = rat(alpha), rat(beta), rat(gamma)

    def val(u, v):
        if u.kind == "I" and v.kind == "I" and u.n == 0 and v.n == 0:
            out = Element()
            out.add_term(central(C0), alpha)
            out.add_term(central(C1_1), beta)
            out.add_term(central(C2_1), gamma)
            return out
        return _ZERO

    return BilinearProduct("central-square", spec, val)


# ---------------------------------------------------------------------------
# exact axiom checks


@dataclass
class AxiomReport:
    name: str
    passed: bool
    checks: int
    first_violation: tuple | None = None

    def to_jsonable(self) -> dict:
        out = {"axiom": self.name, "passed": self.passed, "checks": self.checks}
        if self.first_violation is not None:
            args, lhs, rhs = self.first_violation
            out["first_violation"] = {
                "arguments": [v.text() for v in args],
                "lhs": lhs.text(),
                "rhs": rhs.text(),
            }
        return out


def _sorted_basis(spec: AlgebraSpec, window: Window) -> list[BasisVector]:
    return sorted(spec.basis_vectors(window.N), key=BasisVector.sort_key)


def _check_commutative(prod: BilinearProduct, basis) -> AxiomReport:
    checks = 0
    for k, u in enumerate(basis):
        for v in basis[k:]:
            checks += 1
            lhs, rhs = prod.value(u, v), prod.value(v, u)
            if lhs != rhs:
                return AxiomReport("commutativity", False, checks, ((u, v), lhs, rhs))
    return AxiomReport("commutativity", True, checks)


def _check_associative(prod: BilinearProduct, basis) -> AxiomReport:
    checks = 0
    for x in basis:
        ex = Element.basis(x)
        for y in basis:
            xy = prod.apply(ex, Element.basis(y))
            for z in basis:
                checks += 1
                lhs = prod.apply(xy, Element.basis(z))
                rhs = prod.apply(ex, prod.apply(Element.basis(y), Element.basis(z)))
                if lhs != rhs:
                    return AxiomReport("associativity", False, checks, ((x, y, z), lhs, rhs))
    return AxiomReport("associativity", True, checks)


def post_lie_check(
    spec: AlgebraSpec, prod: BilinearProduct, window: Window
) -> list[AxiomReport]:
    """Exact check of the commutative post-Lie axioms on window triples:
    x.y = y.x;  [x,y].z = x.(y.z) - y.(x.z);  x.[y,z] = [x.y,z] + [y,x.z]."""
    basis = _sorted_basis(spec, window)
    reports = [_check_commutative(prod, basis)]

    checks = 0
    first = None
    for x in basis:
        ex = Element.basis(x)
        for y in basis:
            ey = Element.basis(y)
            bxy = bracket(spec, ex, ey)
            for z in basis:
                checks += 1
                ez = Element.basis(z)
                lhs = prod.apply(bxy, ez)
                rhs = prod.apply(ex, prod.apply(ey, ez)).add(
                    prod.apply(ey, prod.apply(ex, ez)), -1
                )
                if lhs != rhs:
                    first = ((x, y, z), lhs, rhs)
                    break
            if first:
                break
        if first:
            break
    reports.append(AxiomReport("left-multiplication", first is None, checks, first))

    checks = 0
    first = None
    for x in basis:
        ex = Element.basis(x)
        for y in basis:
            ey = Element.basis(y)
            pxy = prod.apply(ex, ey)
            for z in basis:
                checks += 1
                ez = Element.basis(z)
                lhs = prod.apply(ex, bracket(spec, ey, ez))
                rhs = bracket(spec, pxy, ez).add(bracket(spec, ey, prod.apply(ex, ez)))
                if lhs != rhs:
                    first = ((x, y, z), lhs, rhs)
                    break
            if first:
                break
        if first:
            break
    reports.append(AxiomReport("derivation-compatibility", first is None, checks, first))
    return reports


def transposed_poisson_check(
    spec: AlgebraSpec, prod: BilinearProduct, delta: DeltaParam, window: Window
) -> list[AxiomReport]:
    """Exact check of the transposed delta-Poisson axioms on window triples:
    commutativity, associativity, and
    delta z.[x,y] = [z.x, y] + [x, z.y]."""
    d = delta.delta
    if d == 0:
        raise ValueError("delta must be nonzero for a transposed Poisson structure")
    basis = _sorted_basis(spec, window)
    reports = [_check_commutative(prod, basis), _check_associative(prod, basis)]
    checks = 0
    first = None
    for x in basis:
        ex = Element.basis(x)
        for y in basis:
            bxy = bracket(spec, ex, Element.basis(y))
            for z in basis:
                checks += 1
                ez = Element.basis(z)
                lhs = prod.apply(ez, bxy).scaled(d)
                rhs = bracket(spec, prod.apply(ez, ex), Element.basis(y)).add(
                    bracket(spec, ex, prod.apply(ez, Element.basis(y))))
                if lhs != rhs:
                    first = ((x, y, z), lhs, rhs)
                    break
            if first:
                break
        if first:
            break
    reports.append(AxiomReport("delta-compatibility", first is None, checks, first))
    return reports


def all_passed(reports: list[AxiomReport]) -> bool:
    return all(r.passed for r in reports)


# ---------------------------------------------------------------------------
# the biderivation space underlying transposed Poisson structures


@dataclass
class SymmetricSpaceReport:
    spec: AlgebraSpec
    delta: Rat
    window: Window
    per_degree: dict[int, int]
    total: int

    def to_jsonable(self) -> dict:
        return {
            "kind": "transposed-poisson-space",
            "family": self.spec.family,
            "a": rat_str(self.spec.a),
            "b": rat_str(self.spec.b),
            "delta": rat_str(self.delta),
            "window": {"N": self.window.N, "M": self.window.M},
            "per_degree_core_dimension": {
                str(n): d for n, d in sorted(self.per_degree.items())
            },
            "total_core_dimension": self.total,
        }


def symmetric_biderivation_core(
    spec: AlgebraSpec, delta: DeltaParam, degree: int, window: Window
) -> SubspaceBasis:
    """Core projection of the symmetric part of the biderivation space."""
    report, coords = biderivation_space(spec, delta, degree, window)
    sym = invariant_subspace_part(report.raw_basis.rows, coords.flip, 1)
    return _core_project(coords, sym)


def transposed_poisson_space(
    spec: AlgebraSpec, delta: DeltaParam, window: Window, degrees=None
) -> SymmetricSpaceReport:
    """Per-degree core dimensions of the symmetric (1/delta)-biderivation
    space, which parameterizes transposed delta-Poisson products."""
    d = delta.delta
    if d == 0:
        raise ValueError("delta must be nonzero for a transposed Poisson structure")
    inv = rat(1) / d
    if degrees is None:
        degrees = range(-window.core_bound, window.core_bound + 1)
    per = {}
    for n in degrees:
        per[n] = symmetric_biderivation_core(spec, DeltaParam(inv), n, window).dimension
    return SymmetricSpaceReport(spec, d, window, per, sum(per.values()))
