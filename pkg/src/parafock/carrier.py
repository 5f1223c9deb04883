"""Carrier space of the Fock-like modules.

The space is a direct sum of sectors V(m, n) with 0 <= n <= p and m >= 0.
Interior sectors (m >= 1, 1 <= n <= p-1) are two-dimensional with basis
vectors tagged ``alpha`` and ``beta``; every other sector is spanned by its
``alpha`` vector alone.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Union[int, Fraction]


class Tag(enum.IntEnum):
    ALPHA = 0
    BETA = 1

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Tag":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown tag {text!r} (expected alpha or beta)") from None


ALPHA = Tag.ALPHA
BETA = Tag.BETA


class BasisIndex(NamedTuple):
    """Label ``(m, n, tag)`` of a basis vector.

    Tuple ordering gives the global basis order: by m, then n, alpha first.
    """

    m: int
    n: int
    tag: Tag = ALPHA

    def __str__(self) -> str:
        return f"({self.m},{self.n},{self.tag})"

    @property
    def sector(self) -> tuple[int, int]:
        return (self.m, self.n)

    @property
    def level(self) -> int:
        return self.m + self.n


VACUUM = BasisIndex(0, 0, ALPHA)


class GradeDegree(NamedTuple):
    """An element of Z2 x Z2."""

    g1: int
    g2: int

    def __add__(self, other: "GradeDegree") -> "GradeDegree":  # type: ignore[override]
        return GradeDegree((self.g1 + other.g1) % 2, (self.g2 + other.g2) % 2)

    def __str__(self) -> str:
        return f"({self.g1},{self.g2})"


def check_order(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ValueError(f"parastatistics order must be a positive integer, got {p!r}")
    return p


def check_truncation(max_m: int) -> int:
    if isinstance(max_m, bool) or not isinstance(max_m, int) or max_m < 0:
        raise ValueError(f"max_m must be a non-negative integer, got {max_m!r}")
    return max_m


def _check_mn(m: int, n: int) -> None:
    if m < 0 or n < 0:
        raise ValueError(f"sector labels must be non-negative, got m={m}, n={n}")


def subspace_dim(p: int, m: int, n: int) -> int:
    """Dimension of the sector V(m, n): 0, 1 or 2."""
    check_order(p)
    _check_mn(m, n)
    if n > p:
        return 0
    if m >= 1 and 1 <= n <= p - 1:
        return 2
    return 1


def is_canonical(p: int, idx: BasisIndex) -> bool:
    m, n, tag = idx
    if m < 0 or n < 0 or n > p:
        return False
    if tag is BETA:
        return m >= 1 and 1 <= n <= p - 1
    return True


def sector_basis(p: int, m: int, n: int) -> list[BasisIndex]:
    dim = subspace_dim(p, m, n)
    return [BasisIndex(m, n, tag) for tag in (ALPHA, BETA)[:dim]]


def canonical_basis(p: int, max_m: int) -> list[BasisIndex]:
    """All canonical basis labels with m <= max_m, in global order."""
    check_order(p)
    check_truncation(max_m)
    return [
        idx
        for m in range(max_m + 1)
        for n in range(p + 1)
        for idx in sector_basis(p, m, n)
    ]


def sectors(p: int, max_m: int) -> list[tuple[int, int]]:
    return [(m, n) for m in range(max_m + 1) for n in range(p + 1)]


def grade_of(idx: BasisIndex) -> GradeDegree:
    return GradeDegree(idx.m % 2, idx.n % 2)


class VectorExpr(Mapping[BasisIndex, Fraction]):
    """Finite rational combination of canonical basis vectors.

    Instances are treated as immutable. Zero coefficients are never stored,
    so the empty expression is the zero vector.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[BasisIndex, Scalar] | Iterable[tuple[BasisIndex, Scalar]] = ()):
        acc: dict[BasisIndex, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for idx, c in items:
            acc[idx] = acc.get(idx, Fraction(0)) + Fraction(c)
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k] != 0}

    @classmethod
    def basis(cls, idx: BasisIndex, coeff: Scalar = 1) -> "VectorExpr":
        return cls({idx: coeff})

    def __getitem__(self, idx: BasisIndex) -> Fraction:
        return self._terms[idx]

    def coeff(self, idx: BasisIndex) -> Fraction:
        return self._terms.get(idx, Fraction(0))

    def __iter__(self) -> Iterator[BasisIndex]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VectorExpr):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "VectorExpr") -> "VectorExpr":
        if not isinstance(other, VectorExpr):
            return NotImplemented
        return VectorExpr(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "VectorExpr":
        return VectorExpr({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "VectorExpr") -> "VectorExpr":
        if not isinstance(other, VectorExpr):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "VectorExpr":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return VectorExpr({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"VectorExpr({format_vector(self)!r})"

    def __str__(self) -> str:
        return format_vector(self)


ZERO = VectorExpr()


def reduce(p: int, m: int, n: int, tag: Tag, coeff: Scalar) -> VectorExpr:
    """Rewrite a possibly non-canonical raw term into canonical form.

    Beta vectors vanish on the m = 0 row and n = 0 column, everything with
    n > p vanishes, and at n = p the beta vector equals alpha / p.
    """
    check_order(p)
    _check_mn(m, n)
    coeff = Fraction(coeff)
    if n > p or coeff == 0:
        return ZERO
    if tag is BETA:
        if m == 0 or n == 0:
            return ZERO
        if n == p:
            return VectorExpr({BasisIndex(m, n, ALPHA): coeff / p})
    return VectorExpr({BasisIndex(m, n, tag): coeff})


def reduce_vector(p: int, raw: Iterable[tuple[BasisIndex, Scalar]]) -> VectorExpr:
    out: dict[BasisIndex, Fraction] = {}
    for (m, n, tag), c in raw:
        for idx, v in reduce(p, m, n, tag, c).items():
            out[idx] = out.get(idx, Fraction(0)) + v
    return VectorExpr(out)


def format_rational(q: Scalar) -> str:
    """Canonical ``num/den`` string; the denominator is omitted when it is 1."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_vector(v: VectorExpr) -> str:
    if not v:
        return "0"
    parts = []
    for i, (idx, c) in enumerate(v.items()):
        ket = f"|{idx.m},{idx.n},{idx.tag}⟩"
        mag = format_rational(abs(c))
        body = f"{mag}·{ket}"
        if i == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


_KET_RE = re.compile(r"\|\s*([^|>⟩]*?)\s*[>⟩]")
_TERM_RE = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*[·*]?\s*)?(\|[^|>⟩]*[>⟩])\s*"
)


def parse_ket(text: str, p: int | None = None) -> VectorExpr:
    """Parse ``|0>``, ``|m,n,alpha>`` or a combination like ``1/2·|1,1,beta⟩ - |0>``.

    When ``p`` is given, non-canonical labels are rejected.
    """
    text = text.strip()
    if text == "0":
        return ZERO
    terms: list[tuple[BasisIndex, Fraction]] = []
    pos = 0
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse ket at position {pos}: {text[pos:]!r}")
        sign, coeff, ket = match.groups()
        if sign is None and terms:
            raise ValueError(f"missing '+' or '-' before ket at position {match.start(3)}")
        idx = _parse_label(ket, match.start(3))
        if p is not None and not is_canonical(p, idx):
            raise ValueError(
                f"ket {idx} is not canonical for p={p}; rewrite it with reduce() first"
            )
        c = Fraction(coeff) if coeff else Fraction(1)
        terms.append((idx, -c if sign == "-" else c))
        pos = match.end()
    return VectorExpr(terms)


def _parse_label(ket: str, offset: int) -> BasisIndex:
    inner = _KET_RE.fullmatch(ket)
    assert inner is not None
    fields = [f.strip() for f in inner.group(1).split(",")]
    if fields == ["0"]:
        return VACUUM
    if len(fields) != 3:
        raise ValueError(f"expected |m,n,tag> at position {offset}, got {ket!r}")
    try:
        m, n = int(fields[0]), int(fields[1])
    except ValueError:
        raise ValueError(f"non-integer label in {ket!r} at position {offset}") from None
    if m < 0 or n < 0:
        raise ValueError(f"negative label in {ket!r}")
    return BasisIndex(m, n, Tag.parse(fields[2]))
