import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nestlab import (
    AmbientMismatchError,
    IncomparableError,
    Nest,
    NotAnElementError,
    Subspace,
    ZeroSubspaceError,
    adjacent,
    meet,
    perp_span_check,
    smallest_intersecting,
    span,
    validate_nest,
)


def triangular():
    # {0} < span{e1} < span{e1,e2} < Q^3
    return validate_nest(
        [span([(1, 0, 0)], 3), span([(1, 0, 0), (0, 1, 0)], 3)], 3
    )


def test_validate_inserts_endpoints():
    nest = triangular()
    assert len(nest) == 4
    assert nest.bottom == Subspace.zero(3)
    assert nest.top == Subspace.full(3)
    assert [e.dim for e in nest] == [0, 1, 2, 3]


def test_validate_collapses_duplicates():
    line = span([(1, 0)], 2)
    nest = validate_nest([line, span([(2, 0)], 2)], 2)
    assert len(nest) == 3


def test_validate_rejects_incomparable():
    with pytest.raises(IncomparableError):
        validate_nest([span([(1, 0)], 2), span([(0, 1)], 2)], 2)


def test_validate_rejects_mixed_ambient():
    with pytest.raises(AmbientMismatchError):
        validate_nest([span([(1, 0)], 2), span([(1, 0, 0)], 3)], 2)


def test_nest_constructor_requires_trivial_endpoints():
    with pytest.raises(IncomparableError):
        Nest(2, (span([(1, 0)], 2), Subspace.full(2)))


def test_element_lookup():
    nest = triangular()
    assert nest.element(1) == span([(1, 0, 0)], 3)
    assert nest.index_of(span([(1, 0, 0), (0, 1, 0)], 3)) == 2
    with pytest.raises(NotAnElementError):
        nest.element(7)
    with pytest.raises(NotAnElementError):
        nest.index_of(span([(0, 1, 0)], 3))


def test_gaps():
    nest = triangular()
    assert [nest.gap(i) for i in range(4)] == [0, 1, 1, 1]


def test_adjacent_conventions():
    nest = triangular()
    below, above = adjacent(nest, nest.bottom)
    assert below == nest.bottom and above == nest.element(1)
    below, above = adjacent(nest, nest.top)
    assert below == nest.element(2) and above == nest.top


def test_smallest_intersecting_example():
    nest = triangular()
    w = span([(0, 1, 1)], 3)
    assert smallest_intersecting(nest, w) == nest.top
    assert smallest_intersecting(nest, span([(1, 0, 0)], 3)) == nest.element(1)
    with pytest.raises(ZeroSubspaceError):
        smallest_intersecting(nest, Subspace.zero(3))


def test_perp_span_check_on_triangular():
    nest = triangular()
    assert all(perp_span_check(nest, e) for e in nest)


# --- properties --------------------------------------------------------------

entries = st.integers(min_value=-2, max_value=2)


@st.composite
def nest_and_vector(draw):
    n = draw(st.integers(min_value=2, max_value=4))
    k = draw(st.integers(min_value=0, max_value=n))
    rows = [draw(st.tuples(*[entries] * n)) for _ in range(k)]
    chain = []
    for i in range(len(rows)):
        chain.append(span(rows[: i + 1], n))
    nest = validate_nest(chain, n)
    v = draw(st.tuples(*[entries] * n))
    return nest, v


@given(nest_and_vector())
@settings(max_examples=100)
def test_smallest_intersecting_is_minimal(case):
    nest, v = case
    w = span([v], nest.ambient_dim)
    if w.is_zero():
        return
    hit = smallest_intersecting(nest, w)
    assert not meet(hit, w).is_zero()
    for e in nest:
        if e.dim < hit.dim:
            assert meet(e, w).is_zero()


@given(nest_and_vector())
@settings(max_examples=100)
def test_perp_span_identity_holds(case):
    nest, _ = case
    for e in nest:
        assert perp_span_check(nest, e)
