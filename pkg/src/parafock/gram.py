"""Exact inner products on the carrier space.

Inner products are derived from the adjointness conditions alone:
(b-)^dagger = b+, (f-)^dagger = f+ and <0|0> = 1. Each sector basis vector
is written as a raising operator applied to lower vectors; the raising
operator is then moved across as its lowering adjoint, which lands in a
lower sector, and the recursion bottoms out at the vacuum.

Two recursion routes are provided. ``ladder`` inverts the b+ raising
formulas wherever m >= 1. ``definitional`` follows the defining words
(f+)^n (b+)^m and (f+)^(n-1) (b+)^(m-1) R+ directly. ``unreduced`` is the
definitional route on an enlarged label set where the beta vector on the
n = p column is kept as a free symbol instead of being identified with
alpha / p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .carrier import (
    ALPHA,
    BETA,
    VACUUM,
    BasisIndex,
    VectorExpr,
    canonical_basis,
    check_order,
    check_truncation,
    sector_basis,
    sectors,
    subspace_dim,
)
from .ladder import B_PLUS, F_PLUS, Generator, act_expr, act_generator, raw_action
from .report import Report

ROUTES = ("ladder", "definitional", "unreduced")

# A preimage term: (raising generator or None, vector, coefficient). With a
# generator the term stands for coeff * g(vector); without one, the vector is
# another basis vector of the same sector, already lower in the recursion.
Preimage = list[tuple[Generator | None, VectorExpr, Fraction]]


class GeometryError(ArithmeticError):
    """Raised when the computed geometry contradicts positivity or orthogonality."""


def _vec(m: int, n: int, tag=ALPHA) -> VectorExpr:
    return VectorExpr.basis(BasisIndex(m, n, tag))


def _r_plus_split() -> Preimage:
    # |1,1,beta> = 1/2 b+ |0,1,alpha> + 1/2 f+ |1,0,alpha>
    half = Fraction(1, 2)
    return [(B_PLUS, _vec(0, 1), half), (F_PLUS, _vec(1, 0), half)]


def _preimage_ladder(p: int, idx: BasisIndex) -> Preimage:
    m, n, tag = idx
    s = (-1) ** n
    one = Fraction(1)
    if tag is ALPHA:
        if m == 0:
            return [(F_PLUS, _vec(0, n - 1), one)]
        if n == 0:
            return [(B_PLUS, _vec(m - 1, 0), one)]
        if n == p:
            # b+ |m-1,p,alpha> = s(alpha - 2p beta) with beta = alpha/p
            return [(B_PLUS, _vec(m - 1, p), Fraction(-s))]
        # b+ |m-1,n,alpha> = s(alpha - 2n beta)
        return [(B_PLUS, _vec(m - 1, n), Fraction(s)), (None, _vec(m, n, BETA), Fraction(2 * n))]
    if m >= 2:
        return [(B_PLUS, _vec(m - 1, n, BETA), Fraction(-s))]
    if n >= 2:
        return [(F_PLUS, _vec(1, n - 1, BETA), one)]
    return _r_plus_split()


def _preimage_definitional(p: int, idx: BasisIndex) -> Preimage:
    m, n, tag = idx
    one = Fraction(1)
    if tag is ALPHA:
        if n >= 1:
            return [(F_PLUS, _vec(m, n - 1), one)]
        return [(B_PLUS, _vec(m - 1, 0), one)]
    if n >= 2:
        return [(F_PLUS, _vec(m, n - 1, BETA), one)]
    if m >= 2:
        return [(B_PLUS, _vec(m - 1, 1, BETA), one)]
    return _r_plus_split()


def _is_label(p: int, idx: BasisIndex, route: str) -> bool:
    m, n, tag = idx
    if m < 0 or n < 0 or n > p:
        return False
    if tag is BETA:
        upper = p if route == "unreduced" else p - 1
        return m >= 1 and 1 <= n <= upper
    return True


def _lower(p: int, g: Generator, idx: BasisIndex, route: str) -> VectorExpr:
    if route != "unreduced":
        return act_generator(p, g, idx)
    # raw lowering that keeps beta on the n = p column as its own symbol
    acc: dict[BasisIndex, Fraction] = {}
    for m, n, tag, c in raw_action(p, g, idx):
        out = BasisIndex(m, n, tag)
        if c and _is_label(p, out, route):
            acc[out] = acc.get(out, Fraction(0)) + c
    return VectorExpr(acc)


@lru_cache(maxsize=None)
def gram_entry(p: int, a: BasisIndex, b: BasisIndex, route: str = "ladder") -> Fraction:
    """<a|b> for two basis labels, computed by the chosen recursion route."""
    if a.sector != b.sector:
        return Fraction(0)
    if a == VACUUM:
        return Fraction(1)
    if route == "ladder":
        pre = _preimage_ladder(p, a)
    elif route in ("definitional", "unreduced"):
        pre = _preimage_definitional(p, a)
    else:
        raise ValueError(f"unknown route {route!r}")
    total = Fraction(0)
    target = VectorExpr.basis(b)
    for g, w, c in pre:
        if g is None:
            total += c * _bilinear(p, w, target, route)
        else:
            total += c * _bilinear(p, w, _lower_vec(p, g.adjoint, target, route), route)
    return total


def _lower_vec(p: int, g: Generator, v: VectorExpr, route: str) -> VectorExpr:
    acc: dict[BasisIndex, Fraction] = {}
    for idx, c in v.items():
        for out, d in _lower(p, g, idx, route).items():
            acc[out] = acc.get(out, Fraction(0)) + c * d
    return VectorExpr(acc)


def _bilinear(p: int, u: VectorExpr, v: VectorExpr, route: str) -> Fraction:
    return sum(
        (cu * cv * gram_entry(p, a, b, route) for a, cu in u.items() for b, cv in v.items() if a.sector == b.sector),
        Fraction(0),
    )


def inner_product(p: int, u: VectorExpr, v: VectorExpr, route: str = "ladder") -> Fraction:
    """Exact <u|v>. Vectors in different sectors are orthogonal."""
    check_order(p)
    for idx in list(u) + list(v):
        if not _is_label(p, idx, route):
            raise ValueError(f"{idx} is not a basis label for p={p} (sector has dimension 0?)")
    return _bilinear(p, u, v, route)


@dataclass(frozen=True)
class GramMatrix:
    sector: tuple[int, int]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def trace(self) -> Fraction:
        return sum((self.entries[i][i] for i in range(self.size)), Fraction(0))

    @property
    def det(self) -> Fraction:
        e = self.entries
        if self.size == 1:
            return e[0][0]
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]

    @property
    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(self.size) for j in range(self.size))

    @property
    def is_positive_definite(self) -> bool:
        # leading principal minors
        return self.entries[0][0] > 0 and self.det > 0

    def as_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


def sector_gram(p: int, m: int, n: int, route: str = "ladder") -> GramMatrix:
    check_order(p)
    if subspace_dim(p, m, n) == 0:
        raise ValueError(f"sector ({m},{n}) has dimension 0 for p={p}")
    basis = sector_basis(p, m, n)
    return GramMatrix((m, n), tuple(tuple(gram_entry(p, a, b, route) for b in basis) for a in basis))


def degenerate_gram(p: int, m: int) -> GramMatrix:
    """Gram of the pair (alpha, beta) on the n = p column with beta kept unreduced."""
    check_order(p)
    if m < 1:
        raise ValueError("the n = p beta vector exists only for m >= 1")
    pair = [BasisIndex(m, p, ALPHA), BasisIndex(m, p, BETA)]
    return GramMatrix((m, p), tuple(tuple(gram_entry(p, a, b, "unreduced") for b in pair) for a in pair))


@dataclass(frozen=True)
class OrthoBasis:
    """Orthonormal basis of one sector in alpha/beta coordinates.

    |+> = c_plus alpha and |-> = -c_minus (alpha - p beta). Only the squared
    normalisations are stored; float coordinates are produced on demand.
    """

    p: int
    sector: tuple[int, int]
    c_plus_sq: Fraction
    c_minus_sq: Fraction | None = None

    @property
    def labels(self) -> list[str]:
        return ["+"] if self.c_minus_sq is None else ["+", "-"]

    def coordinates(self) -> np.ndarray:
        """Columns are the orthonormal vectors, rows the alpha (and beta) coordinates."""
        c_plus = math.sqrt(self.c_plus_sq)
        if self.c_minus_sq is None:
            return np.array([[c_plus]])
        c_minus = math.sqrt(self.c_minus_sq)
        return np.array([[c_plus, -c_minus], [0.0, c_minus * self.p]])

    def exact_vectors(self) -> dict[str, tuple[Fraction, VectorExpr]]:
        """Label -> (squared normalisation, unnormalised vector with sign)."""
        m, n = self.sector
        alpha = _vec(m, n)
        out = {"+": (self.c_plus_sq, alpha)}
        if self.c_minus_sq is not None:
            out["-"] = (self.c_minus_sq, -(alpha - self.p * _vec(m, n, BETA)))
        return out


def orthonormal_change(p: int, m: int, n: int) -> OrthoBasis:
    check_order(p)
    gram = sector_gram(p, m, n)
    alpha = _vec(m, n)
    norm_plus = gram.entries[0][0]
    if norm_plus <= 0:
        raise GeometryError(f"<alpha|alpha> = {norm_plus} is not positive in sector ({m},{n})")
    if gram.size == 1:
        return OrthoBasis(p, (m, n), 1 / norm_plus)
    minus = alpha - p * _vec(m, n, BETA)
    cross = inner_product(p, alpha, minus)
    if cross != 0:
        raise GeometryError(f"<alpha|alpha - p beta> = {cross} in sector ({m},{n})")
    norm_minus = inner_product(p, minus, minus)
    if norm_minus <= 0:
        raise GeometryError(f"<alpha - p beta|alpha - p beta> = {norm_minus} in sector ({m},{n})")
    return OrthoBasis(p, (m, n), 1 / norm_plus, 1 / norm_minus)


def _float_gram(gram: GramMatrix) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in gram.entries])


def orthonormality_residual(p: int, max_m: int, only: list[tuple[int, int]] | None = None) -> float:
    """max |E^T G E - I| over the window, E the float orthonormal vectors."""
    worst = 0.0
    for m, n in only or sectors(p, max_m):
        e = orthonormal_change(p, m, n).coordinates()
        g = _float_gram(sector_gram(p, m, n))
        worst = max(worst, float(np.abs(e.T @ g @ e - np.eye(e.shape[1])).max()))
    return worst


def completeness_residual(p: int, max_m: int, only: list[tuple[int, int]] | None = None) -> float:
    """max |sum_s |s><s| - 1| over the window, in alpha/beta coordinates.

    With metric G, the resolution of the identity reads E E^T G = I.
    """
    check_order(p)
    check_truncation(max_m)
    worst = 0.0
    for m, n in only or sectors(p, max_m):
        e = orthonormal_change(p, m, n).coordinates()
        g = _float_gram(sector_gram(p, m, n))
        worst = max(worst, float(np.abs(e @ e.T @ g - np.eye(e.shape[0])).max()))
    return worst


def adjointness_check(p: int, max_m: int) -> Report:
    """Exact check of <g u|v> = <u|g^dagger v> for g in {b+, f+} over the window."""
    check_order(p)
    check_truncation(max_m)
    report = Report("adjointness", p, max_m)
    basis = canonical_basis(p, max_m)
    for u in basis:
        if u.m > max_m - 1:
            continue
        uv = VectorExpr.basis(u)
        for v in basis:
            vv = VectorExpr.basis(v)
            for g in (B_PLUS, F_PLUS):
                lhs = inner_product(p, act_expr(p, g, uv), vv)
                rhs = inner_product(p, uv, act_expr(p, g.adjoint, vv))
                report.check(lhs == rhs, f"<{g} {u}|{v}> vs <{u}|{g.adjoint} {v}>", lhs, rhs)
    return report


def zero_norm(n: int, p: int) -> int:
    """Closed form n! p! / (p-n)! for the squared norm of |0,n,alpha>."""
    return math.factorial(n) * math.factorial(p) // math.factorial(p - n)
