"""Generator actions on the carrier space and their truncated matrices."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .carrier import (
    ALPHA,
    BETA,
    ZERO,
    BasisIndex,
    GradeDegree,
    Tag,
    VectorExpr,
    canonical_basis,
    check_order,
    check_truncation,
    is_canonical,
    reduce_vector,
)


class Generator(enum.Enum):
    B_PLUS = "b+"
    B_MINUS = "b-"
    F_PLUS = "f+"
    F_MINUS = "f-"

    def __str__(self) -> str:
        return self.value

    @property
    def grade(self) -> GradeDegree:
        return GradeDegree(1, 0) if self.value[0] == "b" else GradeDegree(0, 1)

    @property
    def adjoint(self) -> "Generator":
        return _ADJOINT[self]

    @property
    def is_raising(self) -> bool:
        return self.value[1] == "+"


_ADJOINT = {
    Generator.B_PLUS: Generator.B_MINUS,
    Generator.B_MINUS: Generator.B_PLUS,
    Generator.F_PLUS: Generator.F_MINUS,
    Generator.F_MINUS: Generator.F_PLUS,
}

B_PLUS, B_MINUS, F_PLUS, F_MINUS = Generator.B_PLUS, Generator.B_MINUS, Generator.F_PLUS, Generator.F_MINUS
GENERATORS = (B_PLUS, B_MINUS, F_PLUS, F_MINUS)

RawTerm = tuple[int, int, Tag, int]


# Each case maps (p, m, n) to the raw right-hand side as (m', n', tag, coeff)
# terms, before degenerate labels are reduced.

def _b_minus_alpha_even(p: int, m: int, n: int) -> list[RawTerm]:
    s = (-1) ** n
    return [(m - 1, n, ALPHA, s * m), (m - 1, n, BETA, -2 * s * n * m)]


def _b_minus_alpha_odd(p: int, m: int, n: int) -> list[RawTerm]:
    s = (-1) ** n
    return [(m - 1, n, ALPHA, -s * (2 * n - m - (p - 1))), (m - 1, n, BETA, -2 * s * n * (m - 1))]


def _b_minus_beta_even(p: int, m: int, n: int) -> list[RawTerm]:
    s = (-1) ** n
    return [(m - 1, n, ALPHA, -s), (m - 1, n, BETA, s * (2 * n - m - p))]


def _b_minus_beta_odd(p: int, m: int, n: int) -> list[RawTerm]:
    s = (-1) ** n
    return [(m - 1, n, ALPHA, -s), (m - 1, n, BETA, -s * (m - 1))]


def _f_minus_alpha(p: int, m: int, n: int) -> list[RawTerm]:
    return [(m, n - 1, ALPHA, n * (p + 1 - n))]


def _f_minus_beta(p: int, m: int, n: int) -> list[RawTerm]:
    return [(m, n - 1, ALPHA, 1), (m, n - 1, BETA, (n - 1) * (p - n))]


def _b_plus_alpha(p: int, m: int, n: int) -> list[RawTerm]:
    s = (-1) ** n
    return [(m + 1, n, ALPHA, s), (m + 1, n, BETA, -s * 2 * n)]


def _b_plus_beta(p: int, m: int, n: int) -> list[RawTerm]:
    return [(m + 1, n, BETA, -((-1) ** n))]


def _f_plus_alpha(p: int, m: int, n: int) -> list[RawTerm]:
    return [] if n >= p else [(m, n + 1, ALPHA, 1)]


def _f_plus_beta(p: int, m: int, n: int) -> list[RawTerm]:
    return [] if n >= p else [(m, n + 1, BETA, 1)]


CASES: dict[str, Callable[[int, int, int], list[RawTerm]]] = {
    "b-.alpha.even": _b_minus_alpha_even,
    "b-.alpha.odd": _b_minus_alpha_odd,
    "b-.beta.even": _b_minus_beta_even,
    "b-.beta.odd": _b_minus_beta_odd,
    "f-.alpha": _f_minus_alpha,
    "f-.beta": _f_minus_beta,
    "b+.alpha": _b_plus_alpha,
    "b+.beta": _b_plus_beta,
    "f+.alpha": _f_plus_alpha,
    "f+.beta": _f_plus_beta,
}

# number of raw terms each case emits when it fires
CASE_ARITY = {
    "b-.alpha.even": 2,
    "b-.alpha.odd": 2,
    "b-.beta.even": 2,
    "b-.beta.odd": 2,
    "f-.alpha": 1,
    "f-.beta": 2,
    "b+.alpha": 2,
    "b+.beta": 1,
    "f+.alpha": 1,
    "f+.beta": 1,
}


def case_name(g: Generator, idx: BasisIndex) -> str | None:
    """Name of the case that acts on ``idx``, or None where the action is zero."""
    m, n, tag = idx
    if g is B_MINUS:
        if m == 0:
            return None
        return f"b-.{tag}.{'even' if m % 2 == 0 else 'odd'}"
    if g is F_MINUS:
        return None if n == 0 else f"f-.{tag}"
    return f"{g.value}.{tag}"


@dataclass(frozen=True)
class Fault:
    """A deliberate corruption of one raw term of one case.

    ``kind`` is ``flip`` (negate the coefficient) or ``bump`` (add one to it).
    Only used to measure the detection power of the verifiers.
    """

    case: str
    term: int
    kind: str = "flip"

    def __post_init__(self) -> None:
        if self.case not in CASES:
            raise ValueError(f"unknown action case {self.case!r}")
        if not 0 <= self.term < CASE_ARITY[self.case]:
            raise ValueError(f"case {self.case} has no term {self.term}")
        if self.kind not in ("flip", "bump"):
            raise ValueError(f"unknown fault kind {self.kind!r}")

    @property
    def name(self) -> str:
        return f"{self.case}:{self.term}:{self.kind}"

    @classmethod
    def parse(cls, text: str) -> "Fault":
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"fault must look like 'b-.alpha.odd:0:flip', got {text!r}")
        try:
            term = int(parts[1])
        except ValueError:
            raise ValueError(f"fault term must be an integer, got {parts[1]!r}") from None
        return cls(parts[0], term, parts[2] if len(parts) == 3 else "flip")


def all_faults() -> list[Fault]:
    return [
        Fault(case, term, kind)
        for case, arity in CASE_ARITY.items()
        for term in range(arity)
        for kind in ("flip", "bump")
    ]


def raw_action(p: int, g: Generator, idx: BasisIndex, fault: Fault | None = None) -> list[RawTerm]:
    name = case_name(g, idx)
    if name is None:
        return []
    terms = CASES[name](p, idx.m, idx.n)
    if fault is not None and fault.case == name and fault.term < len(terms):
        m, n, tag, c = terms[fault.term]
        terms = list(terms)
        terms[fault.term] = (m, n, tag, -c if fault.kind == "flip" else c + 1)
    return terms


@lru_cache(maxsize=None)
def act_generator(p: int, g: Generator, idx: BasisIndex, fault: Fault | None = None) -> VectorExpr:
    """Apply one generator to one canonical basis vector."""
    check_order(p)
    if not is_canonical(p, idx):
        raise ValueError(f"{idx} is not a canonical basis label for p={p}")
    return reduce_vector(p, (((m, n, tag), c) for m, n, tag, c in raw_action(p, g, idx, fault)))


def act_expr(p: int, g: Generator, v: VectorExpr, fault: Fault | None = None) -> VectorExpr:
    acc: dict[BasisIndex, Fraction] = {}
    for idx, c in v.items():
        for out, d in act_generator(p, g, idx, fault).items():
            acc[out] = acc.get(out, Fraction(0)) + c * d
    return VectorExpr(acc) if acc else ZERO


@dataclass(frozen=True)
class SparseOperator:
    """Truncated matrix of an operator on the window m <= max_m.

    ``boundary_exact`` is False when images can leave the window, in which
    case the dropped rows make the matrix a lossy export.
    """

    p: int
    max_m: int
    entries: dict[tuple[BasisIndex, BasisIndex], Fraction] = field(default_factory=dict)
    boundary_exact: bool = True
    name: str = ""

    @property
    def basis(self) -> list[BasisIndex]:
        return canonical_basis(self.p, self.max_m)

    def apply(self, v: VectorExpr) -> VectorExpr:
        acc: dict[BasisIndex, Fraction] = {}
        for (row, col), val in self.entries.items():
            c = v.coeff(col)
            if c:
                acc[row] = acc.get(row, Fraction(0)) + val * c
        return VectorExpr(acc)

    def column(self, col: BasisIndex) -> VectorExpr:
        return VectorExpr({r: v for (r, c), v in self.entries.items() if c == col})

    def to_dense(self) -> list[list[Fraction]]:
        basis = self.basis
        pos = {idx: i for i, idx in enumerate(basis)}
        mat = [[Fraction(0)] * len(basis) for _ in basis]
        for (row, col), val in self.entries.items():
            mat[pos[row]][pos[col]] = val
        return mat


def matrix_of(p: int, max_m: int, g: Generator, fault: Fault | None = None) -> SparseOperator:
    check_order(p)
    check_truncation(max_m)
    entries: dict[tuple[BasisIndex, BasisIndex], Fraction] = {}
    for col in canonical_basis(p, max_m):
        for row, val in act_generator(p, g, col, fault).items():
            if row.m <= max_m:
                entries[(row, col)] = val
    return SparseOperator(p, max_m, entries, boundary_exact=g is not B_PLUS, name=g.value)
