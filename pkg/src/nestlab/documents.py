"""Workbench documents: the versioned on-disk format the CLI consumes.

A document is JSON with an explicit ``"version": "nestlab/1"`` field.
Rationals are strings ("p/q" or "p"), matrices are row-major nested arrays,
and a document carries either a concrete nest or an abstract chain, never
both.  Serialization is canonical (sorted keys, canonical rational strings),
so parsing followed by serialization is the identity on canonical documents.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .chaincalc import (
    AbstractNest,
    AbstractSupportFn,
    ChainNode,
    SupportPair,
    validate_chain,
)
from .errors import DocumentError, JoinNotRepresentedError, NestlabError
from .nest import Nest, validate_nest
from .opspace import RankOne, SupportFn
from .ratlin import Matrix, Subspace, Vector, span

VERSION = "nestlab/1"


def _rational(raw: Any, path: str) -> Fraction:
    if not isinstance(raw, str):
        raise DocumentError(
            f"rationals are strings like '3/4' or '-2', got {raw!r}", path=path
        )
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rational {raw!r}: {exc}", path=path) from None


def _vector(raw: Any, path: str) -> Vector:
    if not isinstance(raw, list):
        raise DocumentError("expected an array of rationals", path=path)
    return tuple(_rational(x, f"{path}[{i}]") for i, x in enumerate(raw))


def _matrix(raw: Any, path: str) -> Matrix:
    if not isinstance(raw, list) or not raw:
        raise DocumentError("expected a non-empty array of rows", path=path)
    rows = [_vector(r, f"{path}[{i}]") for i, r in enumerate(raw)]
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise DocumentError("matrix rows have unequal lengths", path=f"{path}[{i}]")
    return Matrix(len(rows), width, tuple(rows))


def _fmt_rational(x: Fraction) -> str:
    return str(x)


def _fmt_vector(v: Sequence[Fraction]) -> list[str]:
    return [_fmt_rational(x) for x in v]


def _fmt_matrix(m: Matrix) -> list[list[str]]:
    return [_fmt_vector(r) for r in m.entries]


def _parse_chain(raw: Any, path: str) -> AbstractNest:
    if not isinstance(raw, dict) or "nodes" not in raw:
        raise DocumentError("a chain needs a 'nodes' array", path=path)
    nodes = []
    for i, item in enumerate(raw["nodes"]):
        npath = f"{path}.nodes[{i}]"
        if not isinstance(item, dict) or "label" not in item:
            raise DocumentError("each node needs at least a 'label'", path=npath)
        below = item.get("below")
        above = item.get("above")
        kw: dict[str, Any] = {"label": item["label"]}
        if below is not None:
            if not isinstance(below, dict) or "kind" not in below:
                raise DocumentError("'below' needs a 'kind'", path=npath)
            kw["below"] = below["kind"]
            if "gap" in below:
                gap = below["gap"]
                kw["gap"] = math.inf if gap == "inf" else gap
            if "cofinality" in below:
                kw["cofinality"] = below["cofinality"]
        if above is not None:
            if not isinstance(above, dict) or "kind" not in above:
                raise DocumentError("'above' needs a 'kind'", path=npath)
            kw["above"] = above["kind"]
            if "coinitiality" in above:
                kw["coinitiality"] = above["coinitiality"]
        nodes.append(ChainNode(**kw))
    return validate_chain(nodes)


def _fmt_chain(chain: AbstractNest) -> dict:
    nodes = []
    for node in chain.nodes:
        item: dict[str, Any] = {"label": node.label}
        if node.below is not None:
            below: dict[str, Any] = {"kind": node.below}
            if node.gap is not None:
                below["gap"] = "inf" if node.gap == math.inf else node.gap
            if node.cofinality is not None:
                below["cofinality"] = node.cofinality
            item["below"] = below
        if node.above is not None:
            above: dict[str, Any] = {"kind": node.above}
            if node.coinitiality is not None:
                above["coinitiality"] = node.coinitiality
            item["above"] = above
        nodes.append(item)
    return {"nodes": nodes}


def _parse_abstract_fn(raw: Any, chain: AbstractNest, path: str) -> AbstractSupportFn:
    if not isinstance(raw, dict) or "value" not in raw:
        raise DocumentError("an abstract map needs a 'value' table", path=path)
    labels = set(chain.labels())
    value = raw["value"]
    if not isinstance(value, dict):
        raise DocumentError("'value' must map node labels to node labels", path=path)
    for key, target in value.items():
        if key not in labels:
            raise DocumentError(f"unknown node {key!r} in value table", path=path)
        if target not in labels:
            raise DocumentError(f"unknown node {target!r} in value table", path=path)
    missing = labels - set(value)
    if missing:
        raise DocumentError(
            f"value table misses nodes {sorted(missing)}", path=path
        )
    left = raw.get("left_limit", {})
    if not isinstance(left, dict):
        raise DocumentError("'left_limit' must map node labels to node labels", path=path)
    for key, target in left.items():
        if key not in labels:
            raise DocumentError(f"unknown node {key!r} in left_limit table", path=path)
        if target not in labels:
            raise JoinNotRepresentedError(
                f"left limit at {key!r} names {target!r}, which is not a chain node"
            )
    return AbstractSupportFn.from_labels(chain, value, left)


def _fmt_abstract_fn(f: AbstractSupportFn) -> dict:
    value, left = f.as_tables()
    return {"value": value, "left_limit": left}


@dataclass
class WorkbenchDoc:
    """Parsed form of one workbench document."""

    ambient_dim: int | None = None
    nest_bases: list[list[Vector]] | None = None
    operators: dict[str, list[Matrix]] = field(default_factory=dict)
    support_values: list[int] | None = None
    rank_one: RankOne | None = None
    chain: AbstractNest | None = None
    abstract_fn: AbstractSupportFn | None = None
    abstract_pair: SupportPair | None = None

    # --- builders ---------------------------------------------------------

    def require_nest(self) -> Nest:
        if self.ambient_dim is None:
            raise DocumentError("document has no 'ambient_dim'", path="ambient_dim")
        if self.nest_bases is None:
            raise DocumentError("document has no 'nest' section", path="nest")
        subspaces = [
            span(rows, self.ambient_dim) for rows in self.nest_bases
        ]
        return validate_nest(subspaces, self.ambient_dim)

    def require_support(self, nest: Nest) -> SupportFn:
        if self.support_values is None:
            raise DocumentError("document has no 'support_fn' section", path="support_fn")
        return SupportFn(nest, tuple(self.support_values))

    def matrices(self, role: str) -> list[Matrix]:
        if role not in self.operators:
            raise DocumentError(
                f"document has no operator list named {role!r}", path="operators"
            )
        return self.operators[role]

    def require_chain(self) -> AbstractNest:
        if self.chain is None:
            raise DocumentError("document has no 'chain' section", path="chain")
        return self.chain

    def require_abstract_fn(self) -> AbstractSupportFn:
        if self.abstract_fn is None:
            raise DocumentError("document has no 'abstract_fn' section", path="abstract_fn")
        return self.abstract_fn

    def require_abstract_pair(self) -> SupportPair:
        if self.abstract_pair is None:
            raise DocumentError(
                "document has no 'abstract_pair' section", path="abstract_pair"
            )
        return self.abstract_pair


def parse_document(text: str) -> WorkbenchDoc:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise DocumentError("a document is a JSON object")
    if raw.get("version") != VERSION:
        raise DocumentError(
            f"unsupported document version {raw.get('version')!r}, expected {VERSION!r}",
            path="version",
        )
    known = {
        "version", "ambient_dim", "nest", "operators", "support_fn",
        "rank_one", "chain", "abstract_fn", "abstract_pair",
    }
    for key in raw:
        if key not in known:
            raise DocumentError(f"unknown document field {key!r}", path=key)
    if "nest" in raw and "chain" in raw:
        raise DocumentError(
            "a document carries either a concrete nest or an abstract chain, not both"
        )

    doc = WorkbenchDoc()
    if "ambient_dim" in raw:
        dim = raw["ambient_dim"]
        if not isinstance(dim, int) or dim < 1:
            raise DocumentError("'ambient_dim' must be a positive integer", path="ambient_dim")
        doc.ambient_dim = dim
    if "nest" in raw:
        if doc.ambient_dim is None:
            raise DocumentError("a nest needs 'ambient_dim'", path="nest")
        if not isinstance(raw["nest"], list):
            raise DocumentError("'nest' must be an array of bases", path="nest")
        doc.nest_bases = [
            [
                _vector(v, f"nest[{i}][{k}]")
                for k, v in enumerate(basis)
            ]
            for i, basis in enumerate(raw["nest"])
        ]
    if "operators" in raw:
        ops = raw["operators"]
        if not isinstance(ops, dict):
            raise DocumentError("'operators' must map role names to matrix lists", path="operators")
        for role, items in ops.items():
            if not isinstance(items, list):
                raise DocumentError("each operator role holds an array of matrices",
                                    path=f"operators.{role}")
            doc.operators[role] = [
                _matrix(m, f"operators.{role}[{i}]") for i, m in enumerate(items)
            ]
    if "support_fn" in raw:
        sv = raw["support_fn"]
        if not isinstance(sv, list) or not all(isinstance(x, int) for x in sv):
            raise DocumentError("'support_fn' is an array of element indices", path="support_fn")
        doc.support_values = list(sv)
    if "rank_one" in raw:
        ro = raw["rank_one"]
        if not isinstance(ro, dict) or "functional" not in ro or "vector" not in ro:
            raise DocumentError("'rank_one' needs 'functional' and 'vector'", path="rank_one")
        doc.rank_one = RankOne(
            _vector(ro["functional"], "rank_one.functional"),
            _vector(ro["vector"], "rank_one.vector"),
        )
    if "chain" in raw:
        doc.chain = _parse_chain(raw["chain"], "chain")
    if "abstract_fn" in raw:
        doc.abstract_fn = _parse_abstract_fn(
            raw["abstract_fn"], doc.require_chain(), "abstract_fn"
        )
    if "abstract_pair" in raw:
        ap = raw["abstract_pair"]
        if not isinstance(ap, dict) or "phi" not in ap or "psi" not in ap:
            raise DocumentError("'abstract_pair' needs 'phi' and 'psi'", path="abstract_pair")
        chain = doc.require_chain()
        doc.abstract_pair = SupportPair(
            _parse_abstract_fn(ap["phi"], chain, "abstract_pair.phi"),
            _parse_abstract_fn(ap["psi"], chain, "abstract_pair.psi"),
        )
    return doc


def document_payload(doc: WorkbenchDoc) -> dict:
    """The JSON object for a document, with canonical leaf encodings."""
    out: dict[str, Any] = {"version": VERSION}
    if doc.ambient_dim is not None:
        out["ambient_dim"] = doc.ambient_dim
    if doc.nest_bases is not None:
        out["nest"] = [[_fmt_vector(v) for v in basis] for basis in doc.nest_bases]
    if doc.operators:
        out["operators"] = {
            role: [_fmt_matrix(m) for m in items]
            for role, items in doc.operators.items()
        }
    if doc.support_values is not None:
        out["support_fn"] = list(doc.support_values)
    if doc.rank_one is not None:
        out["rank_one"] = {
            "functional": _fmt_vector(doc.rank_one.functional),
            "vector": _fmt_vector(doc.rank_one.vector),
        }
    if doc.chain is not None:
        out["chain"] = _fmt_chain(doc.chain)
    if doc.abstract_fn is not None:
        out["abstract_fn"] = _fmt_abstract_fn(doc.abstract_fn)
    if doc.abstract_pair is not None:
        out["abstract_pair"] = {
            "phi": _fmt_abstract_fn(doc.abstract_pair.phi),
            "psi": _fmt_abstract_fn(doc.abstract_pair.psi),
        }
    return out


def serialize_document(doc: WorkbenchDoc) -> str:
    return json.dumps(document_payload(doc), sort_keys=True, indent=2) + "\n"
