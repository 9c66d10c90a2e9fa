"""Symbolic calculus on annotated abstract chains.

A chain is presented by finitely many named nodes, ordered from "0" to "X".
Each node carries how it is approached from below (an attained jump with a
declared dimension, possibly infinite, or a limit with a cofinality mark) and
from above (attained, or a limit with a coinitiality mark).  Maps between
chain nodes carry an explicit left-limit table, the declared join of the
values strictly below each limit node; the table is constrained to stay
between the value at the predecessor and the value at the node itself.

All predictions about operator spaces attached to such chains are guarded
identities: they verify the hypotheses of the corresponding classification
statement and return the support data the statement prescribes, refusing the
input otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    ChainError,
    LimitGapError,
    MissingEndpointError,
    NonzeroAtZeroError,
    NotEssentialError,
    PairAdmissibilityError,
    PInfinityError,
    PPropertyError,
)

ATTAINED = "attained"
LIMIT = "limit"
COUNTABLE = "countable"
UNCOUNTABLE = "uncountable"
INFINITE = math.inf


@dataclass(frozen=True)
class ChainNode:
    """One named chain element with its below/above annotations."""

    label: str
    below: str | None = None
    gap: int | float | None = None
    cofinality: str | None = None
    above: str | None = None
    coinitiality: str | None = None


@dataclass(frozen=True)
class AbstractNest:
    """A finite presentation of a chain, validated on construction."""

    nodes: tuple[ChainNode, ...]

    def __post_init__(self):
        nodes = self.nodes
        if len(nodes) < 2:
            raise MissingEndpointError("a chain needs at least the nodes 0 and X")
        if nodes[0].label != "0":
            raise MissingEndpointError('the chain must start at a node labelled "0"')
        if nodes[-1].label != "X":
            raise MissingEndpointError('the chain must end at a node labelled "X"')
        seen = set()
        for node in nodes:
            if node.label in seen:
                raise ChainError(f"duplicate node label {node.label!r}")
            seen.add(node.label)
        for i, node in enumerate(nodes):
            self._check_below(i, node)
            self._check_above(i, node)

    @staticmethod
    def _check_below(i: int, node: ChainNode) -> None:
        if i == 0:
            if node.below is not None or node.gap is not None or node.cofinality is not None:
                raise ChainError('node "0" takes no below annotation')
            return
        if node.below == ATTAINED:
            if node.cofinality is not None:
                raise ChainError(f"attained node {node.label!r} takes no cofinality mark")
            gap = node.gap
            ok = gap == INFINITE or (isinstance(gap, int) and gap >= 1)
            if not ok:
                raise ChainError(
                    f"node {node.label!r} needs a positive or infinite jump dimension"
                )
        elif node.below == LIMIT:
            if node.gap is not None:
                raise LimitGapError(
                    f"node {node.label!r} is a limit from below but declares a jump"
                )
            if node.cofinality not in (COUNTABLE, UNCOUNTABLE):
                raise ChainError(f"node {node.label!r} needs a cofinality mark")
        else:
            raise ChainError(f"node {node.label!r} needs a below annotation")

    @staticmethod
    def _check_above(i: int, node: ChainNode) -> None:
        if node.label == "X":
            if node.above is not None or node.coinitiality is not None:
                raise ChainError('node "X" takes no above annotation')
            return
        if node.above == ATTAINED:
            if node.coinitiality is not None:
                raise ChainError(f"attained node {node.label!r} takes no coinitiality mark")
        elif node.above == LIMIT:
            if node.coinitiality not in (COUNTABLE, UNCOUNTABLE):
                raise ChainError(f"node {node.label!r} needs a coinitiality mark")
        else:
            raise ChainError(f"node {node.label!r} needs an above annotation")

    def __len__(self) -> int:
        return len(self.nodes)

    def labels(self) -> tuple[str, ...]:
        return tuple(node.label for node in self.nodes)

    def index(self, label: str) -> int:
        for i, node in enumerate(self.nodes):
            if node.label == label:
                return i
        raise ChainError(f"no node labelled {label!r}")

    def limit_below(self, i: int) -> bool:
        return self.nodes[i].below == LIMIT

    def limit_above(self, i: int) -> bool:
        return self.nodes[i].above == LIMIT

    def in_finite_stratum(self, i: int) -> bool:
        """Nodes with an attained jump of finite positive dimension."""
        node = self.nodes[i]
        return node.below == ATTAINED and node.gap != INFINITE

    def finite_stratum(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.nodes)) if self.in_finite_stratum(i))

    def upper_limit_fixed(self, i: int) -> bool:
        """Whether the node equals its own limit from above.

        The top node is fixed by the empty-meet convention; otherwise the node
        must be marked as a limit from above.
        """
        return i == len(self.nodes) - 1 or self.limit_above(i)

    def quotient_dim(self, i: int, j: int) -> int | float:
        """Dimension of node j over node i, summed along the presentation.

        Any limit node or infinite jump strictly inside the segment forces the
        answer to be infinite.
        """
        if i > j:
            raise ChainError("quotient runs from the smaller node to the larger")
        total: int | float = 0
        for k in range(i + 1, j + 1):
            node = self.nodes[k]
            if node.below == LIMIT or node.gap == INFINITE:
                return INFINITE
            total += node.gap
        return total


def validate_chain(nodes: Sequence[ChainNode]) -> AbstractNest:
    """Check the chain axioms and return the validated presentation."""
    return AbstractNest(tuple(nodes))


@dataclass(frozen=True)
class AbstractSupportFn:
    """A monotone node map with a declared left-limit table.

    ``value`` maps node index to node index.  ``left_limit`` has an entry
    exactly at limit-from-below nodes and satisfies
    value(predecessor) <= left_limit(node) <= value(node).
    """

    chain: AbstractNest
    value: tuple[int, ...]
    left_limit: tuple[int | None, ...]

    def __post_init__(self):
        k = len(self.chain)
        if len(self.value) != k or len(self.left_limit) != k:
            raise ChainError("map tables must cover every node exactly once")
        for v in self.value:
            if not 0 <= v < k:
                raise ChainError(f"value index {v} is out of range")
        for a, b in zip(self.value, self.value[1:]):
            if a > b:
                raise ChainError("value table is not monotone")
        for i in range(k):
            ll = self.left_limit[i]
            if self.chain.limit_below(i):
                if ll is None:
                    raise ChainError(
                        f"limit node {self.chain.nodes[i].label!r} needs a left limit"
                    )
                if not 0 <= ll < k:
                    raise ChainError(f"left limit index {ll} is out of range")
                if not (self.value[i - 1] <= ll <= self.value[i]):
                    raise ChainError(
                        f"left limit at {self.chain.nodes[i].label!r} must sit between "
                        "the value at the predecessor and the value at the node"
                    )
            elif ll is not None:
                raise ChainError(
                    f"node {self.chain.nodes[i].label!r} is attained from below "
                    "and takes no left limit"
                )

    @classmethod
    def from_labels(
        cls,
        chain: AbstractNest,
        value: dict[str, str],
        left_limit: dict[str, str] | None = None,
    ) -> "AbstractSupportFn":
        vals = tuple(chain.index(value[node.label]) for node in chain.nodes)
        lls: list[int | None] = [None] * len(chain)
        for label, target in (left_limit or {}).items():
            lls[chain.index(label)] = chain.index(target)
        return cls(chain, vals, tuple(lls))

    def value_label(self, i: int) -> str:
        return self.chain.nodes[self.value[i]].label

    def as_tables(self) -> tuple[dict[str, str], dict[str, str]]:
        labels = self.chain.labels()
        value = {labels[i]: labels[v] for i, v in enumerate(self.value)}
        left = {
            labels[i]: labels[ll]
            for i, ll in enumerate(self.left_limit)
            if ll is not None
        }
        return value, left


@dataclass(frozen=True)
class SupportPair:
    """A pair (phi, psi) with psi below phi, phi left continuous, phi(0) = 0."""

    phi: AbstractSupportFn
    psi: AbstractSupportFn

    def __post_init__(self):
        if self.phi.chain != self.psi.chain:
            raise PairAdmissibilityError("pair components live on different chains")
        if self.phi.value[0] != 0:
            raise PairAdmissibilityError("phi must send node 0 to node 0")
        if not check_left_continuous(self.phi):
            raise PairAdmissibilityError("phi must be left continuous")
        for a, b in zip(self.psi.value, self.phi.value):
            if a > b:
                raise PairAdmissibilityError("psi must sit below phi at every node")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_left_continuous(f: AbstractSupportFn) -> bool:
    """True when the declared left limit agrees with the value at every
    limit-from-below node; attained nodes impose nothing."""
    return all(
        f.left_limit[i] == f.value[i]
        for i in range(len(f.chain))
        if f.chain.limit_below(i)
    )


def lower_regularization(f: AbstractSupportFn) -> AbstractSupportFn:
    """Greatest left-continuous map below f.

    Values at attained nodes (and at node 0) are kept; the value at a limit
    node drops to the declared left limit.  The output's left-limit table then
    repeats its own values, so the result is left continuous by construction.
    """
    k = len(f.chain)
    value = list(f.value)
    for i in range(1, k):
        if f.chain.limit_below(i):
            value[i] = f.left_limit[i]
    left = tuple(
        value[i] if f.chain.limit_below(i) else None for i in range(k)
    )
    return AbstractSupportFn(f.chain, tuple(value), left)


def check_essential(f: AbstractSupportFn) -> bool:
    """The two essential-support axioms.

    Fixed-from-above: a value inside the finite stratum must equal its own
    limit from above.  Finite-quotient stability: nodes a finite dimension
    apart must share their value.
    """
    chain = f.chain
    for i in range(len(chain)):
        v = f.value[i]
        if chain.in_finite_stratum(v) and not chain.upper_limit_fixed(v):
            return False
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            if chain.quotient_dim(i, j) < INFINITE and f.value[i] != f.value[j]:
                return False
    return True


def check_pair(p: SupportPair) -> bool:
    """Pair admissibility: psi essential, and strictly below phi wherever psi
    lands in the finite stratum."""
    if not check_essential(p.psi):
        return False
    chain = p.psi.chain
    for i in range(len(chain)):
        v = p.psi.value[i]
        if chain.in_finite_stratum(v) and v >= p.phi.value[i]:
            return False
    return True


def check_p_property(chain: AbstractNest) -> bool:
    """Countable approach on both sides of every limit node."""
    for i in range(len(chain)):
        node = chain.nodes[i]
        if node.below == LIMIT and node.cofinality != COUNTABLE:
            return False
        if node.above == LIMIT and node.coinitiality != COUNTABLE:
            return False
    return True


def check_p_infinity(chain: AbstractNest) -> bool:
    """Every attained jump is infinite; equivalently the finite stratum is
    empty (see AbstractNest.finite_stratum)."""
    return not chain.finite_stratum()


# ---------------------------------------------------------------------------
# guarded predictions
# ---------------------------------------------------------------------------

def predict_me_support(psi: AbstractSupportFn) -> AbstractSupportFn:
    """Essential support of the largest operator space with essential support
    psi: the map itself, once the hypotheses hold."""
    if not check_p_property(psi.chain):
        raise PPropertyError("a limit node lacks a countable approach mark")
    if not check_essential(psi):
        raise NotEssentialError("the map fails the essential support axioms")
    return psi


def predict_max_pair(p: SupportPair) -> SupportPair:
    """Support pair of the largest operator space attached to an admissible
    pair: the pair itself, once the hypotheses hold."""
    if not check_p_property(p.phi.chain):
        raise PPropertyError("a limit node lacks a countable approach mark")
    if not check_pair(p):
        raise PairAdmissibilityError("the pair fails the admissibility axioms")
    return p


def predict_m0(psi: AbstractSupportFn) -> SupportPair:
    """Support pair of the smallest-type operator space built from psi on a
    chain whose attained jumps are all infinite: both components are the
    lower regularization of psi."""
    if not check_p_infinity(psi.chain):
        raise PInfinityError("the chain has an attained finite jump")
    if psi.value[0] != 0:
        raise NonzeroAtZeroError("the map must send node 0 to node 0")
    reg = lower_regularization(psi)
    return SupportPair(reg, reg)


def predict_m0_pair(p: SupportPair) -> SupportPair:
    """Support pair of the smallest-type operator space attached to a pair on
    a chain whose attained jumps are all infinite: phi survives and psi drops
    to its lower regularization."""
    if not check_p_infinity(p.phi.chain):
        raise PInfinityError("the chain has an attained finite jump")
    if not check_pair(p):
        raise PairAdmissibilityError("the pair fails the admissibility axioms")
    return SupportPair(p.phi, lower_regularization(p.psi))
