"""Request and response models for the HTTP service.

The response models double as the CLI's output contract; JSON Schema
copies of the response shapes ship under ``wordmap/jsonschemas/``.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

DEFAULT_SIZE_LIMIT = 10_000
DEFAULT_TUPLE_BUDGET = 10**8
DEFAULT_MAP_CAP = 10**6
DEFAULT_NODE_BUDGET = 10**6


class GroupRequest(BaseModel):
    spec: str
    size_limit: int = DEFAULT_SIZE_LIMIT


class GroupInfo(BaseModel):
    spec: str
    order: int
    exponent: int
    abelian: bool
    nilpotent: bool
    center_size: int
    derived_subgroup_size: int
    element_orders: list[int]


class DistRequest(BaseModel):
    group: str
    word: str
    vars: Optional[int] = None
    params: list[int] = Field(default_factory=list)
    size_limit: int = DEFAULT_SIZE_LIMIT
    tuple_budget: int = DEFAULT_TUPLE_BUDGET
    threads: int = 1


class DistributionOut(BaseModel):
    group_order: int
    arity: int
    counts: list[int]
    total: int
    surjective: bool
    uniform: bool


class DistsetRequest(BaseModel):
    group: str
    vars: int = 2
    size_limit: int = DEFAULT_SIZE_LIMIT
    map_cap: int = DEFAULT_MAP_CAP


class DistsetOut(BaseModel):
    group_order: int
    arity: int
    map_count: Optional[int]
    distributions: list[list[int]]


class WitnessRequest(BaseModel):
    group: str
    size_limit: int = DEFAULT_SIZE_LIMIT
    tuple_budget: int = DEFAULT_TUPLE_BUDGET


class WitnessOut(BaseModel):
    group: str
    nilpotent: bool
    word: Optional[str] = None
    p: Optional[int] = None
    q: Optional[int] = None
    k: Optional[int] = None
    pair: Optional[list[int]] = None
    r: Optional[int] = None
    s: Optional[int] = None
    distribution: Optional[DistributionOut] = None


class CheckRequest(BaseModel):
    group: str
    property: Literal["nilpotent", "abelian"]
    method: str = "auto"
    vars: int = 2
    size_limit: int = DEFAULT_SIZE_LIMIT
    map_cap: int = DEFAULT_MAP_CAP
    tuple_budget: int = DEFAULT_TUPLE_BUDGET


class CheckOut(BaseModel):
    group: str
    property: str
    method: str
    verdict: bool
    details: dict = Field(default_factory=dict)


class CompareRequest(BaseModel):
    group1: str
    group2: str
    vars: int = 1
    size_limit: int = DEFAULT_SIZE_LIMIT
    map_cap: int = DEFAULT_MAP_CAP
    node_budget: int = DEFAULT_NODE_BUDGET


class CompareOut(BaseModel):
    group1: str
    group2: str
    arity: int
    verdict: Literal["equal", "different", "inconclusive"]
    permutation: Optional[list[int]]
    reason: str


class SylowRequest(BaseModel):
    group: str
    prime: int
    vars: int = 1
    size_limit: int = DEFAULT_SIZE_LIMIT
    map_cap: int = DEFAULT_MAP_CAP


class SylowOut(BaseModel):
    group: str
    prime: int
    parent_order: int
    group_order: int
    arity: int
    map_count: Optional[int]
    distributions: list[list[int]]


class VerifyRequest(BaseModel):
    theorem: str
    group: Optional[str] = None
    catalog: bool = False
    seed: int = 0
    vars: int = 2
    samples: int = 10
    size_limit: int = DEFAULT_SIZE_LIMIT
    map_cap: int = DEFAULT_MAP_CAP
    tuple_budget: int = DEFAULT_TUPLE_BUDGET


class Report(BaseModel):
    claim: str
    group: str
    verdict: Literal["pass", "fail", "inconclusive"]
    details: dict


class VerifyOut(BaseModel):
    reports: list[Report]


class CatalogOut(BaseModel):
    specs: list[str]


class ErrorOut(BaseModel):
    error: str
    message: str
