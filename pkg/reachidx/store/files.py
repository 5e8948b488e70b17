"""
Reading and writing index documents, edge lists, pairs and answers
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from reachidx.backbone.models import Backbone
from reachidx.core.errors import IndexFormatError, InputFormatError
from reachidx.graph.models import Dag
from reachidx.labeling.models import HopLabeling
from reachidx.oracle.service import compute_tc
from reachidx.query.indexes import ClosureIndex, HopIndex, MappedIndex, MultiTreeReach, OnlineIndex, ReachIndex, TreeIndex
from reachidx.query.models import GrailLabels
from reachidx.query.scarab import ScarabIndex, build_scarab
from reachidx.store.models import (
    AnyIndexDocument,
    BackboneDocument,
    ClosureDocument,
    GrailDocument,
    HopLabelDocument,
    MultiTreeDocument,
    ScarabDocument,
    TreeCoverDocument,
    TreeEntry,
    index_document_adapter,
)
from reachidx.treecover.models import CompressedTC, MultiTreeIndex, TreeCover

logger = logging.getLogger(__name__)


# ======================
# Domain -> document
# ======================
def backbone_to_document(backbone: Backbone) -> BackboneDocument:
    return BackboneDocument(
        epsilon=backbone.epsilon,
        mode=backbone.mode,
        vertices=list(backbone.vertices),
        edges=[list(e) for e in backbone.edges],
    )


def backbone_from_document(doc: BackboneDocument) -> Backbone:
    return Backbone(tuple(doc.vertices), tuple((a, b) for a, b in doc.edges), doc.epsilon, doc.mode)


def _tree_fields(tree: TreeCover, ctc: CompressedTC) -> dict:
    return {
        "parent": list(tree.parent),
        "interval": [list(iv) for iv in tree.interval],
        "ctc": [[list(iv) for iv in row] for row in ctc.lists],
    }


def index_to_document(index: ReachIndex, component_of: Optional[Sequence[int]] = None) -> AnyIndexDocument:
    mapping = None if component_of is None else list(component_of)
    n = index.n
    if isinstance(index, HopIndex):
        return HopLabelDocument(
            n=n, component_of=mapping,
            l_out=[list(r) for r in index.labels.l_out], l_in=[list(r) for r in index.labels.l_in],
        )
    if isinstance(index, TreeIndex):
        return TreeCoverDocument(n=n, component_of=mapping, weight=index.tree.weight, **_tree_fields(index.tree, index.ctc))
    if isinstance(index, MultiTreeReach):
        multi = index.index
        return MultiTreeDocument(
            n=n, component_of=mapping,
            trees=[TreeEntry(weight=t.weight, **_tree_fields(t, c)) for t, c in zip(multi.trees, multi.ctcs)],
            assignment=list(multi.assignment), objective=multi.objective, history=list(multi.history),
        )
    if isinstance(index, OnlineIndex):
        return GrailDocument(
            n=n, component_of=mapping, edges=[list(e) for e in index.graph.edges()],
            c=index.grail.c, intervals=[[list(iv) for iv in row] for row in index.grail.labels],
        )
    if isinstance(index, ClosureIndex):
        return ClosureDocument(n=n, component_of=mapping, edges=[list(e) for e in index.tc.graph.edges()])
    if isinstance(index, ScarabIndex):
        return ScarabDocument(
            n=n, component_of=mapping, edges=[list(e) for e in index.graph.edges()],
            backbone=backbone_to_document(index.backbone), c=index.grail.c,
            seed=index.seed, inner=index.inner_kind,
        )
    raise IndexFormatError(f"no document format for {type(index).__name__}")


# ======================
# Document -> domain
# ======================
def _tree_from_fields(parent, interval, ctc, weight) -> tuple[TreeCover, CompressedTC]:
    tree = TreeCover(tuple(parent), tuple((a, b) for a, b in interval), weight or 0)
    return tree, CompressedTC.from_lists(ctc)


def index_from_document(doc: AnyIndexDocument) -> ReachIndex:
    if isinstance(doc, HopLabelDocument):
        index: ReachIndex = HopIndex(HopLabeling.from_sets(doc.l_out, doc.l_in))
    elif isinstance(doc, TreeCoverDocument):
        index = TreeIndex(*_tree_from_fields(doc.parent, doc.interval, doc.ctc, doc.weight))
    elif isinstance(doc, MultiTreeDocument):
        pairs = [_tree_from_fields(t.parent, t.interval, t.ctc, t.weight) for t in doc.trees]
        index = MultiTreeReach(MultiTreeIndex(
            tuple(t for t, _ in pairs), tuple(c for _, c in pairs),
            tuple(doc.assignment), doc.objective, tuple(doc.history),
        ))
    elif isinstance(doc, GrailDocument):
        graph = Dag.from_edges(doc.n, doc.edges)
        labels = tuple(tuple((a, b) for a, b in row) for row in doc.intervals)
        index = OnlineIndex(graph, GrailLabels(doc.c, labels))
    elif isinstance(doc, ClosureDocument):
        index = ClosureIndex(compute_tc(Dag.from_edges(doc.n, doc.edges)))
    elif isinstance(doc, ScarabDocument):
        graph = Dag.from_edges(doc.n, doc.edges)
        index = build_scarab(
            graph, c=doc.c, seed=doc.seed, inner=doc.inner,
            backbone=backbone_from_document(doc.backbone),
        )
    else:
        raise IndexFormatError(f"unsupported index document {type(doc).__name__}")

    if doc.component_of is not None:
        if any(not 0 <= c < doc.n for c in doc.component_of):
            raise IndexFormatError("component_of points outside the index")
        return MappedIndex(index, tuple(doc.component_of))
    return index


# ======================
# Files
# ======================
def dump_document(doc) -> bytes:
    return doc.model_dump_json(exclude_none=True).encode("utf-8") + b"\n"


def write_document(path: str | Path, doc) -> int:
    data = dump_document(doc)
    Path(path).write_bytes(data)
    return len(data)


def read_index_document(path: str | Path) -> AnyIndexDocument:
    raw = Path(path).read_bytes()
    try:
        return index_document_adapter.validate_json(raw)
    except ValidationError as exc:
        raise IndexFormatError(f"{path}: not a recognised index document ({exc.error_count()} problem(s))") from exc


def read_backbone_document(path: str | Path) -> Backbone:
    try:
        return backbone_from_document(BackboneDocument.model_validate_json(Path(path).read_bytes()))
    except ValidationError as exc:
        raise IndexFormatError(f"{path}: not a backbone-v1 document") from exc


def read_hop_labels(path: str | Path) -> tuple[HopLabeling, Optional[list[int]]]:
    doc = read_index_document(path)
    if not isinstance(doc, HopLabelDocument):
        raise IndexFormatError(f"{path}: expected hoplabel-v1, found {doc.format}")
    return HopLabeling.from_sets(doc.l_out, doc.l_in), doc.component_of


def parse_pairs(text: str, n: int) -> list[tuple[int, int]]:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            u, v = (int(p) for p in parts)
        except ValueError as exc:
            raise InputFormatError(f"malformed pair at line {lineno}: {line!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise InputFormatError(f"id out of range at line {lineno}: {line!r} (n={n})")
        pairs.append((u, v))
    return pairs


def format_answers(answers: Sequence[bool]) -> str:
    return "".join("1\n" if a else "0\n" for a in answers)
