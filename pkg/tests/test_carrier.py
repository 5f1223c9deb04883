from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parafock.carrier import (
    ALPHA,
    BETA,
    VACUUM,
    BasisIndex,
    GradeDegree,
    VectorExpr,
    canonical_basis,
    format_rational,
    grade_of,
    is_canonical,
    parse_ket,
    reduce,
    subspace_dim,
)


def brute_dim(p, m, n):
    # count tags that survive the degeneracy rules, one by one
    if n > p:
        return 0
    alpha = 1
    beta = 1 if (m >= 1 and n >= 1 and n != p) else 0
    return alpha + beta


@pytest.mark.parametrize(
    "p, m, n, expected",
    [(2, 3, 1, 2), (2, 0, 1, 1), (2, 1, 3, 0), (1, 5, 1, 1)],
)
def test_subspace_dim_examples(p, m, n, expected):
    assert subspace_dim(p, m, n) == expected


@pytest.mark.parametrize("p", range(1, 7))
def test_subspace_dim_matches_brute_count(p):
    for m in range(6):
        for n in range(p + 3):
            assert subspace_dim(p, m, n) == brute_dim(p, m, n)
            tags = [t for t in (ALPHA, BETA) if is_canonical(p, BasisIndex(m, n, t))]
            assert len(tags) == subspace_dim(p, m, n)


@pytest.mark.parametrize("bad", [(-1, 0), (0, -1)])
def test_subspace_dim_rejects_negative(bad):
    with pytest.raises(ValueError):
        subspace_dim(2, *bad)


def test_order_must_be_positive():
    with pytest.raises(ValueError):
        subspace_dim(0, 1, 1)


def test_canonical_basis_p1():
    assert canonical_basis(1, 1) == [
        BasisIndex(0, 0, ALPHA),
        BasisIndex(0, 1, ALPHA),
        BasisIndex(1, 0, ALPHA),
        BasisIndex(1, 1, ALPHA),
    ]


def test_canonical_basis_p2_m0():
    assert canonical_basis(2, 0) == [BasisIndex(0, n, ALPHA) for n in range(3)]


def test_canonical_basis_p2_m1():
    basis = canonical_basis(2, 1)
    assert len(basis) == 7
    assert basis[3:] == [
        BasisIndex(1, 0, ALPHA),
        BasisIndex(1, 1, ALPHA),
        BasisIndex(1, 1, BETA),
        BasisIndex(1, 2, ALPHA),
    ]


@pytest.mark.parametrize("p, max_m", [(1, 0), (1, 5), (2, 4), (3, 3), (5, 2)])
def test_canonical_basis_sorted_and_sized(p, max_m):
    basis = canonical_basis(p, max_m)
    assert all(a < b for a, b in zip(basis, basis[1:]))
    assert len(basis) == sum(subspace_dim(p, m, n) for m in range(max_m + 1) for n in range(p + 1))


@pytest.mark.parametrize(
    "idx, grade",
    [(BasisIndex(2, 1, ALPHA), (0, 1)), (VACUUM, (0, 0)), (BasisIndex(3, 3, BETA), (1, 1))],
)
def test_grade_of(idx, grade):
    assert grade_of(idx) == GradeDegree(*grade)


def test_grade_addition_is_mod_two():
    assert GradeDegree(1, 0) + GradeDegree(1, 1) == GradeDegree(0, 1)


def test_reduce_examples():
    assert reduce(2, 0, 1, BETA, 1) == VectorExpr()
    assert reduce(2, 3, 2, BETA, 1) == VectorExpr({BasisIndex(3, 2, ALPHA): Fraction(1, 2)})
    assert reduce(2, 2, 1, BETA, 5) == VectorExpr({BasisIndex(2, 1, BETA): 5})
    assert reduce(2, 1, 3, ALPHA, 7) == VectorExpr()
    assert reduce(3, 4, 0, BETA, 1) == VectorExpr()
    assert reduce(3, 1, 1, ALPHA, 0) == VectorExpr()


raw_terms = st.tuples(
    st.integers(1, 5),
    st.integers(0, 6),
    st.integers(0, 7),
    st.sampled_from([ALPHA, BETA]),
    st.fractions(max_denominator=12),
)


@given(raw_terms)
def test_reduce_is_idempotent_and_canonical(term):
    p, m, n, tag, c = term
    once = reduce(p, m, n, tag, c)
    assert all(is_canonical(p, idx) for idx in once)
    twice = VectorExpr()
    for idx, v in once.items():
        twice = twice + reduce(p, idx.m, idx.n, idx.tag, v)
    assert twice == once
    # reduction never moves a term to another sector
    assert all(idx.sector == (m, n) for idx in once)


@given(st.integers(0, 9), st.integers(0, 9))
def test_grade_ignores_tag(m, n):
    assert grade_of(BasisIndex(m, n, ALPHA)) == grade_of(BasisIndex(m, n, BETA)) == GradeDegree(m % 2, n % 2)


def test_vector_arithmetic():
    a = VectorExpr.basis(BasisIndex(1, 1, ALPHA), 2)
    b = VectorExpr.basis(BasisIndex(1, 1, BETA), Fraction(1, 3))
    assert a - a == VectorExpr() == 0
    assert (a + b) * 3 == VectorExpr({BasisIndex(1, 1, ALPHA): 6, BasisIndex(1, 1, BETA): 1})
    assert not VectorExpr({VACUUM: 0})


@pytest.mark.parametrize(
    "q, text", [(Fraction(3), "3"), (Fraction(-1, 2), "-1/2"), (Fraction(4, -6), "-2/3"), (0, "0")]
)
def test_format_rational(q, text):
    assert format_rational(q) == text


def test_parse_ket_forms():
    assert parse_ket("|0>") == VectorExpr.basis(VACUUM)
    assert parse_ket("|0⟩") == VectorExpr.basis(VACUUM)
    assert parse_ket("|1,1,beta>") == VectorExpr.basis(BasisIndex(1, 1, BETA))
    v = parse_ket("3·|0,0,alpha⟩ - 1/2·|1,1,beta⟩")
    assert v == VectorExpr({VACUUM: 3, BasisIndex(1, 1, BETA): Fraction(-1, 2)})
    assert parse_ket("0") == VectorExpr()


def test_parse_ket_rejects_non_canonical():
    with pytest.raises(ValueError, match="reduce"):
        parse_ket("|0,1,beta>", p=2)
    with pytest.raises(ValueError):
        parse_ket("|1,2>")
    with pytest.raises(ValueError):
        parse_ket("|0> |0>")


vectors = st.dictionaries(
    st.builds(BasisIndex, st.integers(0, 4), st.integers(0, 3), st.sampled_from([ALPHA, BETA])),
    st.fractions(max_denominator=9),
    max_size=5,
).map(VectorExpr)


@given(vectors)
def test_ket_text_round_trip(v):
    assert parse_ket(str(v)) == v
    assert str(parse_ket(str(v))) == str(v)
