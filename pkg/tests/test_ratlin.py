from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestlab import (
    AmbientMismatchError,
    ContainmentError,
    Matrix,
    Subspace,
    annihilator,
    as_vector,
    join,
    meet,
    outer,
    quotient_dim,
    rank,
    rref,
    span,
)

F = Fraction


def mat(rows):
    return Matrix.from_rows([[F(x) for x in r] for r in rows])


# --- frozen examples ---------------------------------------------------------

def test_rref_collapses_dependent_rows():
    assert rref(mat([[1, 2], [2, 4]])) == mat([[1, 2]])


def test_rref_is_fully_reduced():
    m = rref(mat([[2, 1, 1], [4, 3, 1]]))
    assert m == mat([[1, 0, 1], [0, 1, -1]])
    assert rank(mat([[2, 1, 1], [4, 3, 1]])) == 2


def test_matrix_product_and_apply():
    a = mat([[1, 2], [3, 4]])
    b = mat([[0, 1], [1, 0]])
    assert a @ b == mat([[2, 1], [4, 3]])
    assert a.apply((F(1), F(1))) == (F(3), F(7))
    assert a @ Matrix.identity(2) == a


def test_matrix_flatten_round_trip():
    a = mat([[1, 2, 3], [4, 5, 6]])
    assert Matrix.from_flat(a.flatten(), 2, 3) == a


def test_outer_entries():
    r = outer((1, 2), (3, 0, 5))
    assert r == mat([[3, 0, 5], [6, 0, 10]])


def test_span_canonical_basis():
    s = span([(2, 4), (1, 2)], 2)
    assert s.basis == mat([[1, 2]])
    assert s.dim == 1


def test_span_of_nothing_is_zero():
    assert span([], 3) == Subspace.zero(3)
    assert span([(0, 0, 0)], 3).is_zero()


def test_join_and_meet_on_lines():
    a = span([(1, 0, 0)], 3)
    b = span([(0, 1, 0)], 3)
    plane = span([(1, 0, 0), (0, 1, 0)], 3)
    assert join(a, b) == plane
    assert meet(plane, span([(1, 1, 1)], 3)).is_zero()
    assert meet(plane, span([(1, 1, 0)], 3)) == span([(1, 1, 0)], 3)


def test_annihilator_of_plane():
    plane = span([(1, 0, 0), (0, 1, 0)], 3)
    assert annihilator(plane) == span([(0, 0, 1)], 3)
    assert annihilator(Subspace.zero(3)) == Subspace.full(3)
    assert annihilator(Subspace.full(3)) == Subspace.zero(3)


def test_quotient_dim_requires_containment():
    a = span([(1, 0)], 2)
    assert quotient_dim(a, Subspace.full(2)) == 1
    with pytest.raises(ContainmentError):
        quotient_dim(Subspace.full(2), a)


def test_contains_vector_handles_fractions():
    s = span([(1, 2)], 2)
    assert s.contains_vector((F(1, 2), F(1)))
    assert not s.contains_vector((1, 0))


def test_mixed_ambient_raises():
    with pytest.raises(AmbientMismatchError):
        join(span([(1, 0)], 2), span([(1, 0, 0)], 3))
    with pytest.raises(AmbientMismatchError):
        meet(Subspace.zero(2), Subspace.zero(3))


def test_as_vector_checks_length():
    from nestlab import DimensionMismatchError
    with pytest.raises(DimensionMismatchError):
        as_vector((1, 2), 3)


# --- properties --------------------------------------------------------------

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    def rows():
        k = draw(st.integers(min_value=0, max_value=n))
        return [draw(st.tuples(*[entries] * n)) for _ in range(k)]
    return span(rows(), n), span(rows(), n)


@given(subspace_pairs())
@settings(max_examples=150)
def test_annihilator_is_involutive(pair):
    s, _ = pair
    assert annihilator(annihilator(s)) == s
    assert s.dim + annihilator(s).dim == s.ambient_dim


@given(subspace_pairs())
@settings(max_examples=150)
def test_meet_join_bounds(pair):
    a, b = pair
    assert join(a, b).contains(a) and join(a, b).contains(b)
    assert a.contains(meet(a, b)) and b.contains(meet(a, b))


@given(subspace_pairs())
@settings(max_examples=150)
def test_modular_dimension_count(pair):
    a, b = pair
    assert a.dim + b.dim == join(a, b).dim + meet(a, b).dim


@given(subspace_pairs())
@settings(max_examples=150)
def test_annihilator_reverses_inclusion(pair):
    a, b = pair
    big = join(a, b)
    assert annihilator(a).contains(annihilator(big))


@given(subspace_pairs(), st.sampled_from([1, 2, 3, -1, -2]))
@settings(max_examples=150)
def test_span_ignores_row_scaling(pair, c):
    s, _ = pair
    scaled = [tuple(c * x for x in r) for r in s.basis.entries]
    assert span(scaled, s.ambient_dim) == s


@given(subspace_pairs())
@settings(max_examples=150)
def test_span_contains_generators(pair):
    s, _ = pair
    for r in s.basis.entries:
        assert s.contains_vector(r)
