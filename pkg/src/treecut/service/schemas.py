"""Request and response bodies for the HTTP service.

All node ids in these payloads are 1-based, matching the file formats.
Every response carries a ``schema_version`` field so clients can detect
incompatible changes.  The ``float`` JSON key is spelled via an alias
because the name shadows the Python builtin.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..exhaustive import DEFAULT_BUDGET, EnumerationBudget

SCHEMA_VERSION = 1

GraphFormat = Literal["edge-list", "adjacency-matrix"]
SamplerMode = Literal["uniform-tree", "randmst-tree"]
ReferenceLaw = Literal["closed-form", "randmst-exact"]


class ErrorBody(BaseModel):
    code: Literal["usage", "parse", "precondition", "budget", "not-found"]
    message: str


class ErrorEnvelope(BaseModel):
    error: ErrorBody


class Health(BaseModel):
    status: Literal["ok"] = "ok"
    schema_version: int = SCHEMA_VERSION
    version: str


class BudgetOverrides(BaseModel):
    """Optional overrides of the enumeration budget knobs."""

    max_nodes: Optional[int] = Field(default=None, ge=1)
    max_trees: Optional[int] = Field(default=None, ge=1)
    max_set_partitions: Optional[int] = Field(default=None, ge=1)

    def resolve(self) -> EnumerationBudget:
        base = DEFAULT_BUDGET
        return EnumerationBudget(
            max_nodes=base.max_nodes if self.max_nodes is None else self.max_nodes,
            max_trees=base.max_trees if self.max_trees is None else self.max_trees,
            max_set_partitions=(
                base.max_set_partitions
                if self.max_set_partitions is None
                else self.max_set_partitions
            ),
        )


class GraphUpload(BaseModel):
    content: str
    format: GraphFormat = "edge-list"


class GraphInfo(BaseModel):
    schema_version: int = SCHEMA_VERSION
    graph_id: str
    n: int
    edge_count: int
    connected: bool
    edges: list[tuple[int, int]]


class TreesRequest(BaseModel):
    enumerate: bool = False
    budget: BudgetOverrides = Field(default_factory=BudgetOverrides)


class TreesResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    graph_id: str
    n: int
    edge_count: int
    t_G: int
    trees: Optional[list[list[tuple[int, int]]]] = None


class SampleRequest(BaseModel):
    k: int = Field(ge=1)
    count: int = Field(default=1, ge=1)
    seed: int
    mode: SamplerMode = "uniform-tree"


class SampleItem(BaseModel):
    index: int
    blocks: list[list[int]]


class SampleResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    graph_id: str
    k: int
    mode: SamplerMode
    seed: int
    items: list[SampleItem]


class ProbabilityRequest(BaseModel):
    """Partition given either as parsed blocks or as a partition document."""

    blocks: Optional[list[list[int]]] = None
    partition_text: Optional[str] = None
    k: Optional[int] = Field(default=None, ge=1)
    digits: int = Field(default=4, ge=1, le=50)

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "ProbabilityRequest":
        if (self.blocks is None) == (self.partition_text is None):
            raise ValueError("exactly one of blocks or partition_text is required")
        return self


class ProbabilityResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = SCHEMA_VERSION
    graph_id: str
    blocks: list[list[int]]
    k: int
    rational: str
    float_value: float = Field(alias="float")
    decimal: str
    t_G: int
    t_blocks: list[int]
    t_M: int
    binom: int
    compatible_trees: int


class EnumerateRequest(BaseModel):
    k: int = Field(ge=1)
    digits: int = Field(default=4, ge=1, le=50)
    budget: BudgetOverrides = Field(default_factory=BudgetOverrides)


class EnumerateRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    blocks: list[list[int]]
    rational: str
    float_value: float = Field(alias="float")
    decimal: str


class EnumerateResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    graph_id: str
    k: int
    t_G: int
    count: int
    rows: list[EnumerateRow]
    sum_rational: str


class VerifyRequest(BaseModel):
    k: int = Field(ge=1)
    samples: int = Field(ge=1)
    seed: int
    mode: SamplerMode = "uniform-tree"
    reference: ReferenceLaw = "closed-form"
    significance: float = Field(default=0.001, gt=0.0, lt=1.0)
    z_bound: float = Field(default=6.0, gt=0.0)
    min_samples: int = Field(default=1000, ge=1)
    streams: int = Field(default=1, ge=1)
    digits: int = Field(default=4, ge=1, le=50)
    budget: BudgetOverrides = Field(default_factory=BudgetOverrides)


class VerifyRow(BaseModel):
    blocks: list[list[int]]
    expected_rational: str
    expected_float: float
    expected_decimal: str
    observed: int
    frequency: float
    z: float


class TreeLawRow(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    edges: list[tuple[int, int]]
    rational: str
    float_value: float = Field(alias="float")


class RandmstAudit(BaseModel):
    """Exact random-MST tree law versus the uniform law, as computed fact."""

    tree_count: int
    uniform_rational: str
    equals_uniform: bool
    max_abs_deviation: str
    law: list[TreeLawRow]


class VerifyResponse(BaseModel):
    schema_version: int = SCHEMA_VERSION
    graph_id: str
    k: int
    samples: int
    seed: int
    mode: SamplerMode
    reference: ReferenceLaw
    chi_square: float
    df: int
    p_value: float
    significance: float
    z_bound: float
    max_abs_z: float
    pooled_cells: int
    passed: bool
    rows: list[VerifyRow]
    randmst_audit: Optional[RandmstAudit] = None
