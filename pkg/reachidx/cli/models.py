"""
CLI schemas - run configuration and verification report
"""
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

IndexKind = Literal["dl", "hl", "tree", "tree-sampled", "ktree", "grail", "brute", "scarab"]


class RunConfig(BaseModel):
    """Validated before any work starts; field names mirror the --flags."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    command: Literal["build", "bench"]
    input: Path
    kind: IndexKind = "dl"
    output: Optional[Path] = None

    epsilon: int = Field(default=2, ge=1)
    theta: float = Field(default=0.05, gt=0, lt=1)
    delta: float = Field(default=0.05, gt=0, lt=1)
    group_size: int = Field(default=1024, ge=1)
    groups: Optional[int] = Field(default=None, ge=1)
    levels: int = Field(default=10, ge=0)
    core_limit: int = Field(default=10000, ge=1)
    alpha: float = Field(default=0.05, ge=0, le=1)
    c: int = Field(default=5, ge=1)
    seed: int = 0
    k: int = Field(default=2, ge=1)
    max_iters: int = Field(default=20, ge=0)
    inner: Literal["dl", "tree", "closure"] = "dl"

    workload: Literal["equal", "random"] = "equal"
    count: int = Field(default=100000, ge=1)
    verify: bool = False
    answers: Optional[Path] = None

    @field_validator("kind", mode="before")
    @classmethod
    def normalize_kind(cls, value: str) -> str:
        return (value or "dl").strip().lower()


class PropertyResult(BaseModel):
    name: str
    passed: bool
    counterexample: Optional[List[int]] = None
    detail: str = ""


class VerifyReport(BaseModel):
    n: int
    m: int
    results: List[PropertyResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, failure: Optional[tuple] = None, detail: str = "") -> None:
        self.results.append(
            PropertyResult(
                name=name,
                passed=failure is None,
                counterexample=None if failure is None else list(failure),
                detail=detail,
            )
        )
