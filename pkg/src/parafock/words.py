"""Noncommutative words in the four generators and their action on kets.

Words are stored exactly as written. Brackets expand formally in the free
algebra; the defining relations are never used to simplify anything, they are
only checked against the representation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .carrier import (
    ALPHA,
    VACUUM,
    BasisIndex,
    Scalar,
    Tag,
    VectorExpr,
    check_order,
    format_rational,
)
from .ladder import B_MINUS, B_PLUS, F_MINUS, F_PLUS, Fault, Generator, act_expr

Word = tuple[Generator, ...]


class AlgebraElement(Mapping[Word, Fraction]):
    """Rational combination of words. The empty word is the identity."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        acc: dict[Word, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for word, c in items:
            word = tuple(word)
            acc[word] = acc.get(word, Fraction(0)) + Fraction(c)
        self._terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def word(cls, *letters: Generator, coeff: Scalar = 1) -> "AlgebraElement":
        return cls({tuple(letters): coeff})

    @classmethod
    def scalar(cls, c: Scalar) -> "AlgebraElement":
        return cls({(): c})

    def __getitem__(self, word: Word) -> Fraction:
        return self._terms[word]

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraElement):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return AlgebraElement(list(self.items()) + list(other.items()))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "AlgebraElement | Scalar") -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            return AlgebraElement({w: c * other for w, c in self.items()})
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return AlgebraElement(
            (w1 + w2, c1 * c2) for w1, c1 in self.items() for w2, c2 in other.items()
        )

    def __rmul__(self, scalar: Scalar) -> "AlgebraElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return self * scalar

    def __pow__(self, k: int) -> "AlgebraElement":
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"


ONE = AlgebraElement.scalar(1)
ZERO_ELEMENT = AlgebraElement()


def gen(g: Generator) -> AlgebraElement:
    return AlgebraElement.word(g)


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y - y * x


def anticommutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y + y * x


def format_element(e: AlgebraElement) -> str:
    """Render in the DSL syntax, so that ``parse_element`` reads it back."""
    if not e:
        return "0"
    parts = []
    for i, (word, c) in enumerate(sorted(e.items(), key=lambda t: (len(t[0]), [g.value for g in t[0]]))):
        letters = " ".join(g.value for g in word)
        mag = abs(c)
        if not letters:
            body = format_rational(mag)
        elif mag == 1:
            body = letters
        else:
            body = f"{format_rational(mag)} {letters}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def apply_word(p: int, word: Word, v: VectorExpr, fault: Fault | None = None) -> VectorExpr:
    # rightmost letter acts first
    for g in reversed(word):
        if not v:
            break
        v = act_expr(p, g, v, fault)
    return v


def evaluate(p: int, e: AlgebraElement, v: VectorExpr, fault: Fault | None = None) -> VectorExpr:
    """Act with ``e`` on the ket ``v``."""
    check_order(p)
    acc: dict[BasisIndex, Fraction] = {}
    for word, c in e.items():
        for idx, d in apply_word(p, word, v, fault).items():
            acc[idx] = acc.get(idx, Fraction(0)) + c * d
    return VectorExpr(acc)


def vacuum() -> VectorExpr:
    return VectorExpr.basis(VACUUM)


class Builtin(enum.Enum):
    R_PLUS = "R_plus"
    R_MINUS = "R_minus"
    N_B = "N_b"
    N_F = "N_f"
    N_S = "N_s"


def builtin_element(name: Builtin | str, p: int) -> AlgebraElement:
    """Expansion of a named derived operator at order ``p``."""
    check_order(p)
    name = Builtin(name) if isinstance(name, str) else name
    half = Fraction(1, 2)
    if name is Builtin.R_PLUS:
        return half * anticommutator(gen(B_PLUS), gen(F_PLUS))
    if name is Builtin.R_MINUS:
        return half * anticommutator(gen(B_MINUS), gen(F_MINUS))
    if name is Builtin.N_B:
        return half * anticommutator(gen(B_PLUS), gen(B_MINUS)) - AlgebraElement.scalar(Fraction(p, 2))
    n_f = half * commutator(gen(F_PLUS), gen(F_MINUS)) + AlgebraElement.scalar(Fraction(p, 2))
    if name is Builtin.N_F:
        return n_f
    inner = n_f * n_f - (p + 1) * n_f + gen(F_PLUS) * gen(F_MINUS) + AlgebraElement.scalar(Fraction(p, 2))
    return Fraction(1, p) * inner


class Family(enum.Enum):
    PARABOSE = "parabose"
    PARAFERMI = "parafermi"
    MIXED_BB_F = "mixed_bb_f"
    MIXED_FF_B = "mixed_ff_b"
    MIXED_FB_B = "mixed_fb_b"
    MIXED_BF_F = "mixed_bf_f"


_SIGN = {1: "+", -1: "-"}


@dataclass(frozen=True)
class RelationId:
    family: Family
    xi: int
    eta: int
    eps: int

    def __str__(self) -> str:
        return f"{self.family.value}({_SIGN[self.xi]}{_SIGN[self.eta]}{_SIGN[self.eps]})"


@dataclass(frozen=True)
class Relation:
    id: RelationId
    lhs: AlgebraElement
    rhs: AlgebraElement

    @property
    def residual(self) -> AlgebraElement:
        return self.lhs - self.rhs


def _b(s: int) -> AlgebraElement:
    return gen(B_PLUS if s > 0 else B_MINUS)


def _f(s: int) -> AlgebraElement:
    return gen(F_PLUS if s > 0 else F_MINUS)


def _keep(family: Family, xi: int, eta: int) -> bool:
    # {x, y} is symmetric in its labels, so keep xi >= eta; [x, y] is
    # antisymmetric and vanishes on the diagonal, so keep only (+, -).
    if family in (Family.PARABOSE, Family.MIXED_BB_F):
        return xi >= eta
    if family in (Family.PARAFERMI, Family.MIXED_FF_B):
        return xi == 1 and eta == -1
    return True


def _relation(family: Family, xi: int, eta: int, eps: int) -> tuple[AlgebraElement, AlgebraElement]:
    half = Fraction(1, 2)
    if family is Family.PARABOSE:
        lhs = commutator(anticommutator(_b(xi), _b(eta)), _b(eps))
        rhs = (eps - eta) * _b(xi) + (eps - xi) * _b(eta)
    elif family is Family.PARAFERMI:
        lhs = commutator(commutator(_f(xi), _f(eta)), _f(eps))
        rhs = half * (eps - eta) ** 2 * _f(xi) - half * (eps - xi) ** 2 * _f(eta)
    elif family is Family.MIXED_BB_F:
        lhs = commutator(anticommutator(_b(xi), _b(eta)), _f(eps))
        rhs = ZERO_ELEMENT
    elif family is Family.MIXED_FF_B:
        lhs = commutator(commutator(_f(xi), _f(eta)), _b(eps))
        rhs = ZERO_ELEMENT
    elif family is Family.MIXED_FB_B:
        lhs = commutator(anticommutator(_f(xi), _b(eta)), _b(eps))
        rhs = (eps - eta) * _f(xi)
    else:
        lhs = anticommutator(anticommutator(_b(xi), _f(eta)), _f(eps))
        rhs = half * (eps - eta) ** 2 * _b(xi)
    return lhs, rhs


def enumerate_relations() -> list[Relation]:
    """The 32 defining trilinear relations (6 + 2 + 24)."""
    out = []
    for family in Family:
        for xi in (1, -1):
            for eta in (1, -1):
                if not _keep(family, xi, eta):
                    continue
                for eps in (1, -1):
                    lhs, rhs = _relation(family, xi, eta, eps)
                    out.append(Relation(RelationId(family, xi, eta, eps), lhs, rhs))
    return out


def ladder_word(m_parts: Sequence[int], n_parts: Sequence[int]) -> AlgebraElement:
    """(f+)^n0 (b+)^m1 (f+)^n1 ... (b+)^ml (f+)^nl, with no constraint checks."""
    if len(n_parts) != len(m_parts) + 1:
        raise ValueError("need exactly one more n part than m parts")
    letters: list[Generator] = [F_PLUS] * n_parts[0]
    for m_i, n_i in zip(m_parts, n_parts[1:]):
        letters += [B_PLUS] * m_i + [F_PLUS] * n_i
    return AlgebraElement.word(*letters)


def spanning_vector(
    p: int, m_parts: Sequence[int], n_parts: Sequence[int], fault: Fault | None = None
) -> VectorExpr:
    """Apply the alternating raising word labelled by the parts to the vacuum."""
    l = len(m_parts)
    if len(n_parts) != l + 1:
        raise ValueError(f"expected {l + 1} n parts for {l} m parts, got {len(n_parts)}")
    if any(m_i < 1 for m_i in m_parts):
        raise ValueError(f"m parts must be >= 1, got {tuple(m_parts)}")
    if n_parts[0] < 0 or n_parts[-1] < 0:
        raise ValueError("outer n parts must be >= 0")
    if any(n_i < 1 for n_i in n_parts[1:-1]):
        raise ValueError(f"inner n parts must be >= 1, got {tuple(n_parts)}")
    return evaluate(p, ladder_word(m_parts, n_parts), vacuum(), fault)


def basis_defining_word(m: int, n: int, tag: Tag) -> AlgebraElement:
    """Word whose action on the vacuum defines |m, n, tag>.

    alpha: (f+)^n (b+)^m.  beta: (f+)^(n-1) (b+)^(m-1) R+, with R+ expanded.
    Beta is accepted at n = p too, where it is parallel to alpha.
    """
    if m < 0 or n < 0:
        raise ValueError(f"labels must be non-negative, got ({m},{n})")
    if tag is ALPHA:
        return AlgebraElement.word(*([F_PLUS] * n + [B_PLUS] * m))
    if m < 1 or n < 1:
        raise ValueError(f"beta vector needs m >= 1 and n >= 1, got ({m},{n})")
    prefix = AlgebraElement.word(*([F_PLUS] * (n - 1) + [B_PLUS] * (m - 1)))
    r_plus = Fraction(1, 2) * anticommutator(gen(B_PLUS), gen(F_PLUS))
    return prefix * r_plus


def beta_expansion(p: int, m: int, n: int, fault: Fault | None = None) -> VectorExpr:
    """Two-term spelling of |m, n, beta> as half-sums of alternating words.

    At m = 1 the second word has an empty b+ block, which the constrained
    ``spanning_vector`` does not admit, so the words are built directly.
    """
    first = ladder_word((m,), (n - 1, 1))
    second = ladder_word((m - 1, 1), (n - 1, 1, 0))
    half = Fraction(1, 2)
    return evaluate(p, half * first + half * second, vacuum(), fault)
