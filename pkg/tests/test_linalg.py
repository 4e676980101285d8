from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from compvanish.linalg import (
    RationalMatrix,
    block_diag,
    format_rational,
    full_rank_mod_p,
    nullspace,
    parse_rational,
    rank,
    rref_integer,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(-3, 3)


@st.composite
def matrices(draw, entries=fractions, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish rows make dependent systems common
    cell = st.one_of(st.just(Fraction(0)), entries)
    return [[Fraction(draw(cell)) for _ in range(c)] for _ in range(r)], c


@given(matrices())
@settings(max_examples=200)
def test_rank_matches_sympy(mc):
    rows, c = mc
    assert rank(rows, c) == sympy.Matrix(rows).rank()


@given(matrices())
@settings(max_examples=200)
def test_nullspace_is_kernel_basis(mc):
    rows, c = mc
    basis = nullspace(rows, c)
    assert len(basis) == c - sympy.Matrix(rows).rank()
    for vec in basis:
        assert all(isinstance(x, int) for x in vec)
        assert all(sum(a * x for a, x in zip(row, vec)) == 0 for row in rows)
    if basis:
        assert sympy.Matrix(basis).rank() == len(basis)


@given(matrices(entries=small_ints))
def test_rref_shape(mc):
    rows, c = mc
    red, pivots = rref_integer(rows, c)
    assert len(red) == len(pivots)
    for r, p in enumerate(pivots):
        assert red[r][p] > 0
        assert all(red[q][p] == 0 for q in range(len(red)) if q != r)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=200)
def test_full_rank_screen_is_sound(rows):
    # a True answer must never be wrong
    if full_rank_mod_p(rows):
        assert sympy.Matrix(rows).det() != 0


def test_full_rank_screen_examples():
    assert full_rank_mod_p([[1, 0], [0, 1]])
    assert not full_rank_mod_p([[1, 2], [2, 4]])


def test_matmul_and_permute():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    b = RationalMatrix.from_rows([["1/2", 0], [0, -1]])
    assert (a @ b).tolist() == [[Fraction(1, 2), -2], [Fraction(3, 2), -4]]
    assert (a @ RationalMatrix.identity(2)) == a
    swapped = a.permuted([1, 0])
    assert swapped.tolist() == [[4, 3], [2, 1]]


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=3, max_size=3),
       st.permutations([0, 1, 2]))
def test_permuted_matches_sympy(rows, perm):
    m = RationalMatrix.from_rows(rows)
    p = sympy.zeros(3)
    for v in range(3):
        p[perm[v], v] = 1
    expect = p * sympy.Matrix(rows) * p.T
    assert m.permuted(perm).tolist() == [[Fraction(int(x.p), int(x.q)) for x in expect.row(i)]
                                         for i in range(3)]


def test_block_diag():
    m = block_diag(RationalMatrix.from_rows([[1]]), RationalMatrix.from_rows([[2, 3], [3, 4]]))
    assert m.tolist() == [[1, 0, 0], [0, 2, 3], [0, 3, 4]]
    assert m.is_symmetric()


@given(fractions)
def test_rational_text_roundtrip(x):
    assert parse_rational(format_rational(x)) == x


@pytest.mark.parametrize("bad", ["0.5", "1e3", "abc"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_first_nonzero():
    m = RationalMatrix.from_rows([[0, 0], [0, 5]])
    assert m.first_nonzero() == (1, 1)
    assert RationalMatrix.zeros(2).first_nonzero() is None
