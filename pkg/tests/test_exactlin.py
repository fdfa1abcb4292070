import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathinv.exactlin import (QQ, ContainmentError, DimensionError, Field, Matrix, ModP,
                              Subspace, complement_within, format_scalar, intersect, kernel,
                              kron, rref, subspace_sum)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(1, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    return Matrix.from_rows(draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@st.composite
def subspace_pairs(draw, max_dim=8):
    n = draw(st.integers(1, max_dim))
    vec = st.lists(small, min_size=n, max_size=n)
    a = draw(st.lists(vec, max_size=n))
    b = draw(st.lists(vec, max_size=n))
    return Subspace.span(a, n), Subspace.span(b, n)


def M(rows):
    return Matrix.from_rows(rows)


# --- rref -----------------------------------------------------------------

def test_rref_identity():
    red, piv, rank = rref(Matrix.identity(2))
    assert red == Matrix.identity(2) and piv == [0, 1] and rank == 2


def test_rref_zero():
    red, piv, rank = rref(Matrix.zeros(3, 3))
    assert red == Matrix.zeros(3, 3) and piv == [] and rank == 0


def test_rref_rank_one():
    red, piv, rank = rref(M([[1, 2], [2, 4]]))
    assert red == M([[1, 2], [0, 0]]) and piv == [0] and rank == 1


@given(matrices())
def test_rref_idempotent(m):
    once = rref(m)[0]
    assert rref(once)[0] == once


@given(matrices())
def test_rref_preserves_row_space(m):
    red, piv, rank = rref(m)
    assert Subspace.span(m.data, m.ncols) == Subspace.span(red.data, m.ncols)
    assert rank == len(piv)


# --- kernel ---------------------------------------------------------------

def test_kernel_of_zero_is_everything():
    assert kernel(Matrix.zeros(2, 2)) == Subspace.full(2)


def test_kernel_of_identity_is_zero():
    assert kernel(Matrix.identity(2)) == Subspace.zero(2)


def test_kernel_single_equation():
    assert kernel(M([[1, -1]])) == Subspace.span([[1, 1]], 2)


@given(matrices())
def test_kernel_rank_nullity_and_annihilation(m):
    k = kernel(m)
    assert k.dim == m.ncols - m.rank()
    for v in k.basis:
        assert not any(m.apply(v))


# --- sum / intersect ------------------------------------------------------

def test_sum_examples():
    s = Subspace.span([[1, 2, 3]], 3)
    assert subspace_sum(s, Subspace.zero(3)) == s
    assert subspace_sum(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2)) == Subspace.full(2)
    assert subspace_sum(Subspace.span([[1, 1]], 2), Subspace.span([[1, -1]], 2)) == Subspace.full(2)


def test_intersect_examples():
    s = Subspace.span([[1, 2, 0], [0, 1, 1]], 3)
    assert intersect(s, s) == s
    assert intersect(s, Subspace.full(3)) == s
    assert intersect(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2)) == Subspace.zero(2)


def test_ambient_mismatch():
    with pytest.raises(DimensionError):
        intersect(Subspace.full(2), Subspace.full(3))
    with pytest.raises(DimensionError):
        subspace_sum(Subspace.full(2), Subspace.full(3))


@given(subspace_pairs())
def test_grassmann_identity(pair):
    s1, s2 = pair
    assert s1.dim + s2.dim == subspace_sum(s1, s2).dim + intersect(s1, s2).dim


@given(subspace_pairs())
def test_intersection_lies_in_both(pair):
    s1, s2 = pair
    i = intersect(s1, s2)
    assert s1.contains(i) and s2.contains(i)
    assert subspace_sum(s1, s2).contains(s1)


# --- complement -----------------------------------------------------------

def test_complement_examples():
    full = Subspace.full(2)
    assert complement_within(full, full) == Subspace.zero(2)
    assert complement_within(Subspace.zero(2), full) == full
    assert complement_within(Subspace.span([[1, 1]], 2), full) == Subspace.span([[1, 0]], 2)


def test_complement_requires_containment():
    with pytest.raises(ContainmentError):
        complement_within(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2))


@given(subspace_pairs())
def test_complement_is_a_complement(pair):
    s1, s2 = pair
    inner, outer = intersect(s1, s2), s1
    c = complement_within(inner, outer)
    assert subspace_sum(inner, c) == outer
    assert intersect(inner, c).dim == 0


# --- kron -----------------------------------------------------------------

def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    assert kron(M([[-1]]), M([[-1]])) == M([[1]])
    swap = M([[0, 1], [1, 0]])
    expected = M([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    assert kron(swap, swap) == expected


def test_kron_index_convention():
    a, b = M([[1, 2], [3, 4]]), M([[5, 6, 7]])
    k = kron(a, b)
    assert k.shape == (2, 6)
    for i, j, r, c in itertools.product(range(2), range(2), range(1), range(3)):
        assert k[i * 1 + r, j * 3 + c] == a[i, j] * b[r, c]


@given(st.data())
def test_kron_mixed_product(data):
    p, q, r = (data.draw(st.integers(1, 3)) for _ in range(3))
    s, t, u = (data.draw(st.integers(1, 3)) for _ in range(3))
    a = data.draw(matrices(rows=p, cols=q))
    c = data.draw(matrices(rows=q, cols=r))
    b = data.draw(matrices(rows=s, cols=t))
    d = data.draw(matrices(rows=t, cols=u))
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(matrices(max_rows=2, max_cols=2), matrices(max_rows=2, max_cols=2), matrices(max_rows=2, max_cols=2))
def test_kron_associative(a, b, c):
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


# --- fields ---------------------------------------------------------------

def test_prime_field_arithmetic():
    F = Field(5)
    two = F(2)
    assert two * 3 == 1
    assert 1 / two == 3
    assert F("1/2") == 3
    assert -two == 3
    assert Matrix.from_rows([[2]], field=F).is_invertible()
    assert not Matrix.from_rows([[5]], field=F).is_invertible()


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        Field(6)


def test_modp_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ModP(1, 3) / ModP(3, 3)


def test_kernel_over_prime_field_by_enumeration():
    # [[1, 1], [1, 1]] over F_2 has kernel {0, (1,1)}; over Q it is also span{(1,-1)}.
    F = Field(2)
    m = Matrix.from_rows([[1, 1], [1, 1]], field=F)
    k = kernel(m)
    assert k.dim == 1
    count = sum(1 for v in itertools.product(range(2), repeat=2) if not any(m.apply([F(x) for x in v])))
    assert count == 2 ** k.dim


@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=1, max_size=3))
def test_kernel_size_matches_enumeration_mod3(rows):
    F = Field(3)
    m = Matrix.from_rows(rows, field=F)
    count = sum(1 for v in itertools.product(range(3), repeat=3) if not any(m.apply([F(x) for x in v])))
    assert count == 3 ** kernel(m).dim


def test_format_scalar():
    assert format_scalar(QQ(Fraction(3, 1))) == "3"
    assert format_scalar(QQ("-2/6")) == "-1/3"
    assert format_scalar(Field(7)(-1)) == "6"
