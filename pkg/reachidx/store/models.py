"""
Index document schemas

Every stored index is one JSON document discriminated by `format`.
`component_of`, when present, maps input vertex ids onto the DAG the index was
built on.
"""
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from reachidx.query.models import QueryStats


class IndexDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=0)
    component_of: Optional[List[int]] = None


class HopLabelDocument(IndexDocument):
    format: Literal["hoplabel-v1"] = "hoplabel-v1"
    l_out: List[List[int]]
    l_in: List[List[int]]

    @model_validator(mode="after")
    def check_shape(self):
        if len(self.l_out) != self.n or len(self.l_in) != self.n:
            raise ValueError("l_out and l_in need one row per vertex")
        for row in self.l_out + self.l_in:
            if any(b <= a for a, b in zip(row, row[1:])):
                raise ValueError("label rows must be strictly ascending")
            if row and not 0 <= row[0] <= row[-1] < self.n:
                raise ValueError("hop id outside the vertex range")
        return self


class TreeCoverDocument(IndexDocument):
    format: Literal["treecover-v1"] = "treecover-v1"
    parent: List[int]
    interval: List[Tuple[int, int]]
    ctc: List[List[Tuple[int, int]]]
    weight: Optional[int] = None


class TreeEntry(BaseModel):
    parent: List[int]
    interval: List[Tuple[int, int]]
    ctc: List[List[Tuple[int, int]]]
    weight: int = 0


class MultiTreeDocument(IndexDocument):
    format: Literal["multitree-v1"] = "multitree-v1"
    trees: List[TreeEntry]
    assignment: List[int]
    objective: int
    history: List[int]


class BackboneDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["backbone-v1"] = "backbone-v1"
    epsilon: int = Field(ge=1)
    mode: Literal["two_side", "one_side"]
    vertices: List[int]
    edges: List[Tuple[int, int]]


class GrailDocument(IndexDocument):
    format: Literal["grail-v1"] = "grail-v1"
    edges: List[Tuple[int, int]]
    c: int = Field(ge=1)
    intervals: List[List[Tuple[int, int]]]


class ClosureDocument(IndexDocument):
    format: Literal["closure-v1"] = "closure-v1"
    edges: List[Tuple[int, int]]


class ScarabDocument(IndexDocument):
    format: Literal["scarab-v1"] = "scarab-v1"
    edges: List[Tuple[int, int]]
    backbone: BackboneDocument
    c: int = Field(ge=1)
    seed: int
    inner: Literal["dl", "tree", "closure"] = "dl"


AnyIndexDocument = Annotated[
    Union[
        HopLabelDocument,
        TreeCoverDocument,
        MultiTreeDocument,
        GrailDocument,
        ClosureDocument,
        ScarabDocument,
    ],
    Field(discriminator="format"),
]

index_document_adapter = TypeAdapter(AnyIndexDocument)


class StatsRecord(QueryStats):
    """One machine-readable line per run."""

    cmd: str
    kind: Optional[str] = None
    n: int = Field(default=0, ge=0)
    m: int = Field(default=0, ge=0)
    queries: int = Field(default=0, ge=0)
