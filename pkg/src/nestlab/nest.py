"""Finite nests: totally ordered chains of subspaces of Q^n.

A nest always contains the zero subspace and the full space; in between the
elements are strictly increasing.  Because the chain is finite, every element
has an immediate predecessor and successor inside the chain (with the usual
conventions at the endpoints).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatchError,
    IncomparableError,
    NotAnElementError,
    ZeroSubspaceError,
)
from .ratlin import Subspace, annihilator, join, meet


@dataclass(frozen=True)
class Nest:
    """Strictly increasing chain {0} = E_0 < E_1 < ... < E_k = Q^n."""

    ambient_dim: int
    elements: tuple[Subspace, ...]

    def __post_init__(self):
        if not self.elements:
            raise IncomparableError("a nest needs at least the two trivial elements")
        if self.elements[0].dim != 0 or self.elements[-1].dim != self.ambient_dim:
            raise IncomparableError("nest must run from the zero subspace to the full space")
        for a, b in zip(self.elements, self.elements[1:]):
            if not (b.contains(a) and a.dim < b.dim):
                raise IncomparableError("nest elements are not strictly increasing")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def element(self, i: int) -> Subspace:
        if not 0 <= i < len(self.elements):
            raise NotAnElementError(f"nest has no element with index {i}")
        return self.elements[i]

    def index_of(self, e: Subspace) -> int:
        for i, n in enumerate(self.elements):
            if n == e:
                return i
        raise NotAnElementError("subspace is not a member of the nest")

    @property
    def bottom(self) -> Subspace:
        return self.elements[0]

    @property
    def top(self) -> Subspace:
        return self.elements[-1]

    def gap(self, i: int) -> int:
        """dim(E_i / E_{i-1}); zero for the bottom element."""
        if i == 0:
            return 0
        return self.elements[i].dim - self.elements[i - 1].dim


def validate_nest(subspaces: Iterable[Subspace], n: int) -> Nest:
    """Build a nest from arbitrary subspaces of Q^n.

    The input is sorted by dimension, duplicates collapse, and the two trivial
    elements are inserted when absent.  Any pair that fails to nest raises
    IncomparableError naming both offenders.
    """
    items = list(subspaces)
    for s in items:
        if s.ambient_dim != n:
            raise AmbientMismatchError(
                f"subspace of Q^{s.ambient_dim} cannot join a nest in Q^{n}"
            )
    items.sort(key=lambda s: s.dim)
    chain: list[Subspace] = []
    for s in items:
        if chain and s == chain[-1]:
            continue
        if chain and not s.contains(chain[-1]):
            a, b = chain[-1], s
            raise IncomparableError(
                "subspaces are incomparable: "
                f"span{[list(map(str, r)) for r in a.basis.entries]} and "
                f"span{[list(map(str, r)) for r in b.basis.entries]}"
            )
        chain.append(s)
    if not chain or chain[0].dim != 0:
        chain.insert(0, Subspace.zero(n))
    if chain[-1].dim != n:
        chain.append(Subspace.full(n))
    return Nest(n, tuple(chain))


def adjacent(nest: Nest, e: Subspace) -> tuple[Subspace, Subspace]:
    """Immediate predecessor and successor of e inside the nest.

    The bottom is its own predecessor and the top its own successor.
    """
    i = nest.index_of(e)
    below = nest.elements[i - 1] if i > 0 else nest.elements[0]
    above = nest.elements[i + 1] if i + 1 < len(nest.elements) else nest.elements[-1]
    return below, above


def smallest_intersecting(nest: Nest, w: Subspace) -> Subspace:
    """The meet of all nest elements that meet w nontrivially.

    On a finite chain this meet is itself one of those elements, and it still
    meets w nontrivially.
    """
    if w.ambient_dim != nest.ambient_dim:
        raise AmbientMismatchError("subspace lives in a different ambient than the nest")
    if w.is_zero():
        raise ZeroSubspaceError("the zero subspace meets no nest element nontrivially")
    hits = [nel for nel in nest.elements if not meet(nel, w).is_zero()]
    out = hits[0]
    for nel in hits[1:]:
        out = meet(out, nel)
    return out


def perp_span_check(nest: Nest, e: Subspace) -> bool:
    """Annihilator identity along the chain.

    Compares the join of annihilator(N) over all N whose successor strictly
    contains e against annihilator(e).  At finite dimension the two sides
    always agree; the function evaluates both literally.
    """
    i = nest.index_of(e)
    n = nest.ambient_dim
    lhs = Subspace.zero(n)
    for nel in nest.elements:
        _, above = adjacent(nest, nel)
        if above.contains(e) and above.dim > e.dim:
            lhs = join(lhs, annihilator(nel))
    return lhs == annihilator(nest.elements[i])
