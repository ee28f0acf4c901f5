"""The four algebra families: bases, bracket tables, and window checks.

Bracket values of two basis vectors are computed exactly in the full
(infinite-dimensional) algebra; windows only come in when assembling linear
systems or sweeping basis triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .basis import (
    C0,
    C1_0,
    C1_1,
    C2_0,
    C2_1,
    C1_NEG1,
    C2_HALF0,
    BasisVector,
    Element,
    In,
    Ln,
    central,
)
from .rationals import Rat, rat, rat_floor

FAMILIES = ("witt", "virasoro", "w", "wtilde")

BracketTerms = tuple[tuple[BasisVector, Rat], ...]


@dataclass(frozen=True)
class Window:
    """Basis index truncation [-N, N] with a core margin M."""

    N: int
    M: int = 4

    def __post_init__(self):
        if self.N <= self.M or self.M < 0:
            raise ValueError(f"window needs N > M >= 0, got N={self.N}, M={self.M}")

    @property
    def core_bound(self) -> int:
        return self.N - self.M

    def contains(self, v: BasisVector) -> bool:
        return v.is_central_tag or abs(v.n) <= self.N

    def in_core(self, v: BasisVector) -> bool:
        return v.is_central_tag or abs(v.n) <= self.core_bound


@dataclass(frozen=True)
class AlgebraSpec:
    """Family tag plus the parameters a, b (ignored for Witt/Virasoro)."""

    family: str
    a: Rat = field(default_factory=lambda: rat(0))
    b: Rat = field(default_factory=lambda: rat(0))

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))

    @property
    def has_i(self) -> bool:
        return self.family in ("w", "wtilde")

    def central_kinds(self) -> tuple[str, ...]:
        """Central generators actually produced by the bracket table."""
        if self.family == "virasoro":
            return (C0,)
        if self.family != "wtilde":
            return ()
        kinds = [C0]
        if self.a == 0:
            if self.b == 0:
                kinds += [C1_0, C2_0]
            elif self.b == 1:
                kinds += [C1_1, C2_1]
            elif self.b == -1:
                kinds += [C1_NEG1]
        elif self.a == rat("1/2") and self.b == 0:
            kinds.append(C2_HALF0)
        return tuple(kinds)

    def admissible(self, v: BasisVector) -> bool:
        if v.kind == "L":
            return True
        if v.kind == "I":
            return self.has_i
        return v.kind in self.central_kinds()

    def basis_vectors(self, N: int) -> list[BasisVector]:
        out = [Ln(n) for n in range(-N, N + 1)]
        if self.has_i:
            out += [In(n) for n in range(-N, N + 1)]
        out += [central(k) for k in self.central_kinds()]
        return out

    def degree_component(self, d: int) -> list[BasisVector]:
        """Admissible basis vectors of degree d (independent of any window)."""
        out = [Ln(d)]
        if self.has_i:
            out.append(In(d))
        for k in self.central_kinds():
            if central(k).degree == d:
                out.append(central(k))
        return out

    @property
    def is_perfect(self) -> bool:
        if self.family in ("witt", "virasoro"):
            return True
        return not (self.a == 0 and self.b == 1)

    def quotient(self) -> "AlgebraSpec":
        """The family obtained by killing the central tags."""
        if self.family == "virasoro":
            return AlgebraSpec("witt")
        if self.family == "wtilde":
            return AlgebraSpec("w", self.a, self.b)
        raise ValueError(f"{self.family} has no central-extension quotient")

    def extension(self) -> "AlgebraSpec":
        if self.family == "witt":
            return AlgebraSpec("virasoro")
        if self.family == "w":
            return AlgebraSpec("wtilde", self.a, self.b)
        raise ValueError(f"{self.family} is already centrally extended")

    def bracket_basis(self, u: BasisVector, v: BasisVector) -> BracketTerms:
        if not (self.admissible(u) and self.admissible(v)):
            raise ValueError(
                f"{u.text()} or {v.text()} is not admissible in {self.family}"
            )
        return _bracket_cached(self, u, v)

    def label(self) -> str:
        if self.family in ("witt", "virasoro"):
            return self.family
        return f"{self.family}({self.a},{self.b})"


@lru_cache(maxsize=None)
def _bracket_cached(spec: AlgebraSpec, u: BasisVector, v: BasisVector) -> BracketTerms:
    if u.is_central_tag or v.is_central_tag:
        return ()
    terms: list[tuple[BasisVector, Rat]] = []
    a, b = spec.a, spec.b
    central_on = spec.family in ("virasoro", "wtilde")
    m, n = u.n, v.n
    if u.kind == "L" and v.kind == "L":
        if m != n:
            terms.append((Ln(m + n), rat(m - n)))
        if central_on and m + n == 0 and m * m != 1 and m != 0:
            terms.append((central(C0), Rat(m**3 - m, 12)))
    elif u.kind == "L" and v.kind == "I":
        c = -(a + n + b * m)
        if c:
            terms.append((In(m + n), c))
        if spec.family == "wtilde" and m + n == 0 and a == 0:
            if b == 0 and m * m + m != 0:
                terms.append((central(C1_0), rat(m * m + m)))
            elif b == 1:
                if m:
                    terms.append((central(C1_1), rat(m)))
                terms.append((central(C2_1), rat(1)))
            elif b == -1 and m**3 - m != 0:
                terms.append((central(C1_NEG1), Rat(m**3 - m, 12)))
    elif u.kind == "I" and v.kind == "L":
        return tuple((w, -c) for w, c in _bracket_cached(spec, v, u))
    else:  # I with I
        if spec.family == "wtilde":
            if m + n == 0 and a == 0 and b == 0 and m != 0:
                terms.append((central(C2_0), rat(m)))
            if m + n + 1 == 0 and a == rat("1/2") and b == 0:
                terms.append((central(C2_HALF0), rat(2 * m + 1)))
    return tuple(terms)


def bracket(spec: AlgebraSpec, x: Element, y: Element) -> Element:
    """Bilinear extension of the basis bracket table; exact."""
    out = Element()
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            c = cu * cv
            for w, s in spec.bracket_basis(u, v):
                out.add_term(w, s * c)
    return out


@dataclass
class JacobiReport:
    passed: bool
    triples_checked: int
    first_violation: tuple[BasisVector, BasisVector, BasisVector] | None = None
    residual: Element | None = None


def jacobi_check(
    spec: AlgebraSpec,
    window: Window,
    bracket_fn: Callable[[BasisVector, BasisVector], BracketTerms] | None = None,
) -> JacobiReport:
    """Exact Jacobi + antisymmetry sweep over window basis triples.

    bracket_fn lets tests inject a corrupted table; the default is the
    family's own table.
    """
    bk = bracket_fn or spec.bracket_basis

    def bk_el(x: Element, u: BasisVector) -> Element:
        out = Element()
        for v, cv in x.terms.items():
            for w, s in bk(v, u):
                out.add_term(w, s * cv)
        return out

    basis = spec.basis_vectors(window.N)
    checked = 0
    for i, x in enumerate(basis):
        for v in basis[i:]:
            fwd = dict(bk(x, v))
            back = dict(bk(v, x))
            if {w: -c for w, c in back.items() if c} != {w: c for w, c in fwd.items() if c}:
                return JacobiReport(False, checked, (x, v, v))
    for i, x in enumerate(basis):
        ex = Element.basis(x)
        for j in range(i, len(basis)):
            y = basis[j]
            xy = Element.from_pairs(bk(x, y))
            for k in range(j, len(basis)):
                z = basis[k]
                checked += 1
                res = bk_el(xy, z)
                res = res.add(bk_el(Element.from_pairs(bk(y, z)), x))
                res = res.add(bk_el(Element.from_pairs(bk(z, x)), y))
                if not res.is_zero:
                    return JacobiReport(False, checked, (x, y, z), res)
    return JacobiReport(True, checked)


def center_basis(spec: AlgebraSpec, window: Window) -> list[BasisVector]:
    """Window basis vectors annihilated by every window basis vector."""
    basis = spec.basis_vectors(window.N)
    out = []
    for v in basis:
        if all(not spec.bracket_basis(v, u) for u in basis):
            out.append(v)
    return out


@lru_cache(maxsize=None)
def _derived_span(spec: AlgebraSpec, N: int):
    """RREF pivot rows of span{[u,v] : u,v window basis}, as label dicts."""
    from .linalg import reduce_rows

    basis = spec.basis_vectors(N)
    labels: dict[BasisVector, int] = {}

    def col(w: BasisVector) -> int:
        if w not in labels:
            labels[w] = len(labels)
        return labels[w]

    rows = []
    for i, u in enumerate(basis):
        for v in basis[i:]:
            terms = spec.bracket_basis(u, v)
            if terms:
                rows.append({col(w): c for w, c in terms})
    return labels, reduce_rows(rows)


def derived_membership(spec: AlgebraSpec, window: Window, x: Element) -> bool:
    """Is x in the span of all brackets of window basis pairs?"""
    for v in x.terms:
        if not window.in_core(v):
            raise ValueError(f"{v.text()} lies outside the core sub-window")
    labels, pivot_rows = _derived_span(spec, window.N)
    pivots = {min(r): r for r in pivot_rows}
    residue = {}
    for v, c in x.terms.items():
        if v not in labels:
            return False
        residue[labels[v]] = c
    while residue:
        c = min(residue)
        if c not in pivots:
            return False
        scale = residue[c]
        for col, val in pivots[c].items():
            cur = residue.get(col, 0) - scale * val
            if cur:
                residue[col] = cur
            else:
                residue.pop(col, None)
    return True


def normalize_a(a: Rat) -> Rat:
    """Shift a by an integer into [0, 1)."""
    return rat(a) - rat_floor(rat(a))


def is_central_vector(spec: AlgebraSpec, v: BasisVector) -> bool:
    """Is the basis vector a central element of the algebra?

    Besides the central tags, I_m is central exactly when [L_j, I_m] =
    -(a + m + b j) I_{m+j} vanishes for every j, i.e. b = 0 and a + m = 0.
    """
    if v.is_central_tag:
        return True
    if v.kind == "I" and spec.b == 0 and spec.a + v.n == 0:
        return True
    return False
