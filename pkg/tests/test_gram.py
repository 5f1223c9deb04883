import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from parafock.carrier import ALPHA, BETA, VACUUM, BasisIndex, VectorExpr, canonical_basis, sector_basis, sectors
from parafock.gram import (
    GeometryError,
    OrthoBasis,
    adjointness_check,
    completeness_residual,
    degenerate_gram,
    inner_product,
    orthonormal_change,
    orthonormality_residual,
    sector_gram,
)
from parafock.ladder import B_MINUS, B_PLUS, F_MINUS, F_PLUS, act_generator


def ket(m, n, tag=ALPHA, c=1):
    return VectorExpr.basis(BasisIndex(m, n, tag), c)


def solve_gram_from_adjointness(p, max_m):
    """Oracle: treat every same-sector entry <a|b> as an unknown and solve the
    full system <g u|v> = <u|g^dagger v>, <0|0> = 1 over the window."""
    basis = canonical_basis(p, max_m)
    sym = {
        (a, b): sympy.Symbol(f"g_{a}_{b}")
        for a in basis
        for b in basis
        if a.sector == b.sector
    }

    def pair(u: VectorExpr, v: VectorExpr):
        return sum(
            (sympy.Rational(cu.numerator, cu.denominator) * sympy.Rational(cv.numerator, cv.denominator) * sym[(a, b)]
             for a, cu in u.items() for b, cv in v.items() if (a, b) in sym),
            sympy.Integer(0),
        )

    eqs = [sym[(VACUUM, VACUUM)] - 1]
    for u in basis:
        for v in basis:
            for g, h in ((B_PLUS, B_MINUS), (F_PLUS, F_MINUS)):
                gu = act_generator(p, g, u)
                if any(k.m > max_m for k in gu):
                    continue
                eqs.append(pair(gu, VectorExpr.basis(v)) - pair(VectorExpr.basis(u), act_generator(p, h, v)))
    (solution,) = sympy.linsolve(eqs, list(sym.values()))
    return {key: value for key, value in zip(sym, solution)}


@pytest.mark.parametrize("p, max_m", [(1, 3), (2, 3), (3, 2)])
def test_gram_matches_linear_solve_of_adjointness(p, max_m):
    solved = solve_gram_from_adjointness(p, max_m)
    for (a, b), value in solved.items():
        assert value.free_symbols == set(), f"{a},{b} not determined by adjointness"
        assert Fraction(int(value.p), int(value.q)) == inner_product(p, VectorExpr.basis(a), VectorExpr.basis(b))


def test_inner_product_examples():
    for p in range(1, 6):
        assert inner_product(p, ket(0, 0), ket(0, 0)) == 1
        assert inner_product(p, ket(1, 0), ket(1, 0)) == p
        assert inner_product(p, ket(2, 0), ket(2, 0)) == 2 * p
        for n in range(p + 1):
            # product of f- weights k(p+1-k) along the m = 0 row
            prod = math.prod(k * (p + 1 - k) for k in range(1, n + 1))
            assert inner_product(p, ket(0, n), ket(0, n)) == prod == math.factorial(n) * math.factorial(p) // math.factorial(p - n)


def test_cross_sector_is_zero_and_bilinear():
    assert inner_product(2, ket(1, 1), ket(1, 0)) == 0
    u = ket(1, 1, c=2) + ket(1, 1, BETA, -1)
    v = ket(1, 1, BETA, 3)
    # 2*3*<a|b> - 3*<b|b> = 6*2 - 3*2
    assert inner_product(2, u, v) == 6


def test_inner_product_rejects_empty_sector():
    with pytest.raises(ValueError):
        inner_product(2, ket(1, 3), ket(1, 3))
    with pytest.raises(ValueError):
        sector_gram(2, 1, 3)


def test_sector_gram_fixtures():
    assert sector_gram(2, 1, 1).as_lists() == [[4, 2], [2, 2]]
    assert sector_gram(5, 0, 0).as_lists() == [[1]]
    assert sector_gram(1, 1, 1).size == 1


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_routes_agree(p):
    for m, n in sectors(p, 5):
        assert sector_gram(p, m, n, "ladder") == sector_gram(p, m, n, "definitional")


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_interior_sectors_positive_definite_and_orthogonal_split(p):
    for m, n in sectors(p, 6):
        g = sector_gram(p, m, n)
        assert g.is_symmetric
        assert g.entries[0][0] > 0
        if g.size == 2:
            assert g.det > 0 and g.trace > 0 and g.is_positive_definite
            assert g.entries[0][0] == p * g.entries[0][1]


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_degenerate_beta_is_alpha_over_p(p):
    for m in range(1, 5):
        g = degenerate_gram(p, m).entries
        assert g[0][0] * g[1][1] == g[0][1] * g[1][0]
        assert g[1][0] == g[0][0] / p and g[1][1] == g[0][1] / p


def test_orthonormal_change_examples():
    ob = orthonormal_change(2, 1, 1)
    assert ob.c_plus_sq == Fraction(1, 4) and ob.c_minus_sq == Fraction(1, 4)
    assert orthonormal_change(3, 0, 0).c_plus_sq == 1
    for p in (1, 2, 3):
        for m in range(4):
            ob = orthonormal_change(p, m, 0)
            assert ob.c_minus_sq is None
            assert ob.c_plus_sq == 1 / inner_product(p, ket(m, 0), ket(m, 0))


def test_exact_orthonormal_vectors():
    p = 3
    for m, n in sectors(p, 3):
        ob = orthonormal_change(p, m, n)
        vecs = ob.exact_vectors()
        for s, (csq, v) in vecs.items():
            assert csq * inner_product(p, v, v) == 1
        if len(vecs) == 2:
            assert inner_product(p, vecs["+"][1], vecs["-"][1]) == 0


def test_geometry_error_on_bad_norm(monkeypatch):
    import parafock.gram as gram

    monkeypatch.setattr(gram, "inner_product", lambda *a, **k: Fraction(1))
    with pytest.raises(GeometryError):
        gram.orthonormal_change(2, 1, 1)


def test_ortho_coordinates_shape():
    ob = OrthoBasis(2, (1, 1), Fraction(1, 4), Fraction(1, 4))
    assert np.allclose(ob.coordinates(), [[0.5, -0.5], [0.0, 1.0]])


@pytest.mark.parametrize("p, max_m", [(1, 3), (2, 4), (3, 4)])
def test_completeness_and_orthonormality(p, max_m):
    assert completeness_residual(p, max_m) < 1e-12
    assert orthonormality_residual(p, max_m) < 1e-12


def test_vacuum_only_window():
    assert completeness_residual(2, 0, only=[(0, 0)]) == 0.0


@pytest.mark.parametrize("p, max_m", [(1, 4), (2, 5)])
def test_adjointness_sweep(p, max_m):
    report = adjointness_check(p, max_m)
    assert report.passed and report.checks_run > 0


def test_adjointness_single_pair():
    for p in (1, 2, 5):
        lhs = inner_product(p, act_generator(p, B_PLUS, VACUUM), ket(1, 0))
        rhs = inner_product(p, ket(0, 0), act_generator(p, B_MINUS, BasisIndex(1, 0, ALPHA)))
        assert lhs == rhs == p


def test_sector_basis_helper():
    assert sector_basis(3, 2, 1) == [BasisIndex(2, 1, ALPHA), BasisIndex(2, 1, BETA)]
