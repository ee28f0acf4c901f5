"""Basis vectors and sparse elements of the algebra families.

A basis vector is either L(n), I(n) or one of the central generators.  The
text forms ("L[3]", "I[-2]", "C0", "C2^{1/2,0}", ...) are the stable
serialization used by the CLI and by golden reports.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .rationals import Rat, rat, rat_str

L = "L"
I = "I"
C0 = "C0"
C1_0 = "C1^0"
C1_1 = "C1^1"
C2_1 = "C2^1"
C1_NEG1 = "C1^-1"
C2_0 = "C2^0"
C2_HALF0 = "C2^{1/2,0}"

CENTRAL_KINDS = (C0, C1_0, C1_1, C2_1, C1_NEG1, C2_0, C2_HALF0)
KIND_ORDER = {k: i for i, k in enumerate((L, I) + CENTRAL_KINDS)}


class BasisVector(NamedTuple):
    kind: str
    n: int = 0

    @property
    def degree(self) -> int:
        if self.kind in (L, I):
            return self.n
        return -1 if self.kind == C2_HALF0 else 0

    @property
    def is_central_tag(self) -> bool:
        return self.kind not in (L, I)

    def sort_key(self) -> tuple:
        return (KIND_ORDER[self.kind], self.n)

    def text(self) -> str:
        if self.kind in (L, I):
            return f"{self.kind}[{self.n}]"
        return self.kind


def Ln(n: int) -> BasisVector:
    return BasisVector(L, n)


def In(n: int) -> BasisVector:
    return BasisVector(I, n)


def central(kind: str) -> BasisVector:
    if kind not in CENTRAL_KINDS:
        raise ValueError(f"unknown central tag {kind!r}")
    return BasisVector(kind, 0)


def parse_basis_vector(text: str) -> BasisVector:
    text = text.strip()
    if text.startswith("L[") and text.endswith("]"):
        return Ln(int(text[2:-1]))
    if text.startswith("I[") and text.endswith("]"):
        return In(int(text[2:-1]))
    if text in CENTRAL_KINDS:
        return central(text)
    raise ValueError(f"cannot parse basis vector {text!r}")


class Element:
    """Finite linear combination of basis vectors; zero terms never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BasisVector, Rat] | None = None):
        self.terms: dict[BasisVector, Rat] = {}
        if terms:
            for v, c in terms.items():
                if c:
                    self.terms[v] = rat(c)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[BasisVector, Rat]]) -> "Element":
        el = cls()
        for v, c in pairs:
            el.add_term(v, c)
        return el

    @classmethod
    def basis(cls, v: BasisVector) -> "Element":
        el = cls()
        el.terms[v] = rat(1)
        return el

    def add_term(self, v: BasisVector, c) -> None:
        cur = self.terms.get(v)
        if cur is None:
            if c:
                self.terms[v] = c
        else:
            cur = cur + c
            if cur:
                self.terms[v] = cur
            else:
                del self.terms[v]

    def add(self, other: "Element", scale=1) -> "Element":
        out = Element(dict(self.terms))
        for v, c in other.terms.items():
            out.add_term(v, c * scale)
        return out

    def scaled(self, c) -> "Element":
        if not c:
            return Element()
        return Element({v: coef * c for v, coef in self.terms.items()})

    def coeff(self, v: BasisVector) -> Rat:
        return self.terms.get(v, rat(0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_degree(self):
        """The common degree of all terms, None for 0, or "mixed"."""
        degs = {v.degree for v in self.terms}
        if not degs:
            return None
        if len(degs) == 1:
            return degs.pop()
        return "mixed"

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for v in sorted(self.terms, key=BasisVector.sort_key):
            c = self.terms[v]
            parts.append(v.text() if c == 1 else f"{rat_str(c)}·{v.text()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element({self.text()})"


ZERO_ELEMENT = Element()
