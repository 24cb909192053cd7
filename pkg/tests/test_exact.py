from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adrkit.exact import (QQ, Field, FieldError, Matrix, Subspace, intersect, nullspace,
                          parse_field, quotient_map, rank, rref, solve)

F5 = Field(5)


def mat(rows, field=QQ):
    return Matrix(field, rows)


def test_rref_known_example():
    m = mat([[1, 2, 3], [2, 4, 7], [1, 2, 4]])
    assert rref(m) == mat([[1, 2, 0], [0, 0, 1]])
    assert rank(m) == 2


def test_rref_keeps_fractions_exact():
    m = mat([[3, 1], [1, 3]])
    assert rref(m) == Matrix.identity(QQ, 2)
    assert m.inverse() == mat([[Fraction(3, 8), Fraction(-1, 8)], [Fraction(-1, 8), Fraction(3, 8)]])


def test_nullspace_basis():
    ns = nullspace(mat([[1, 1, 0], [0, 1, 1]]))
    assert ns.dim == 1
    assert ns == Subspace(QQ, 3, [[1, -1, 1]])


def test_prime_field_arithmetic():
    m = mat([[1, 2], [3, 1]], F5)   # det = -5 = 0 mod 5
    assert rank(m) == 1
    assert F5(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))


def test_field_tags():
    assert parse_field("Q") is QQ
    assert parse_field("Fp:7") == Field(7)
    for bad in ("Fp:4", "Fp:x", "R"):
        with pytest.raises(FieldError):
            parse_field(bad)


def test_intersection_and_sum():
    u = Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    v = Subspace(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert intersect(u, v) == Subspace(QQ, 3, [[0, 1, 0]])
    assert (u + v).dim == 3
    assert (u & v) <= u


def test_quotient_map_kills_subspace():
    w = Subspace(QQ, 3, [[1, 1, 1]])
    q, d = quotient_map(3, w)
    assert d == 2
    assert q.apply((2, 2, 2)) == (0, 0)
    assert rank(q) == 2


def test_solve():
    m = mat([[1, 1], [1, -1]])
    assert solve(m, (3, 1)) == (2, 1)
    assert solve(mat([[1, 1], [1, 1]]), (1, 2)) is None


small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=4, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(rows):
    m = mat(rows)
    assert rank(m) + nullspace(m).dim == m.ncols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_kernel_is_annihilated(rows):
    m = mat(rows)
    r = rref(m)
    assert rref(r) == r
    for v in nullspace(m).basis:
        assert not any(m.apply(v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(1, 3))
def test_subspace_is_canonical(rows, k):
    """The same span presented by a different generating set compares equal."""
    u = Subspace(QQ, len(rows[0]), rows)
    shuffled = [[k * x for x in r] for r in reversed(rows)]
    shuffled += [[a + b for a, b in zip(rows[0], rows[-1])]]
    assert Subspace(QQ, len(rows[0]), shuffled) == u


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_rank_mod_p_is_at_most_rank_over_q(rows):
    assert rank(mat(rows, F5)) <= rank(mat(rows))
