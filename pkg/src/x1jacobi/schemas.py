"""Pydantic request/response models for the HTTP service.

Scalars travel as strings so exact rationals survive the wire: requests
accept "3", "-1/2" or "0.5" (plain JSON numbers also work), and responses
serialize every numeric value as a decimal string at the requested digit
count, rationals as "p/q".
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

Number = Union[str, int, float]


class ParamsRequest(BaseModel):
    alpha: Number
    beta: Number


class ParamsResponse(BaseModel):
    alpha: str
    beta: str
    a: str
    b: str
    c: str
    case: str


class CoeffsRequest(BaseModel):
    alpha: Number
    beta: Number
    at: list[Number]
    digits: int = 30


class CoeffRow(BaseModel):
    x: str
    p: str
    q: str
    w: str


class CoeffsResponse(BaseModel):
    rows: list[CoeffRow]


class EigenRequest(BaseModel):
    alpha: Number
    beta: Number
    n_max: int = Field(default=8, ge=0)
    normalize: Literal["monic", "unit"] = "monic"
    digits: int = 30


class EigenPairModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    lam: str = Field(alias="lambda")
    coeffs: list[str]


class EigenResponse(BaseModel):
    pairs: list[EigenPairModel]


class GramRequest(BaseModel):
    alpha: Number
    beta: Number
    n_max: int = Field(default=10, ge=0)
    rel_tol: float = 1e-12
    digits: int = 30


class GramResponse(BaseModel):
    matrix: list[list[str]]


class DensityRequest(BaseModel):
    alpha: Number
    beta: Number
    n_max: int = Field(default=20, ge=0)
    rel_tol: float = 1e-12
    digits: int = 30


class DensityPoint(BaseModel):
    n: int
    residual: str


class DensityResponse(BaseModel):
    series: list[DensityPoint]


class ClassifyRequest(BaseModel):
    alpha: Number
    beta: Number
    numeric: bool = False
    digits: int = 30


class EndpointReportModel(BaseModel):
    endpoint: str
    regular: bool
    classification: str
    analytic_exponent: str
    numeric_exponent: Optional[str] = None
    boundary_condition_required: bool


class ClassifyResponse(BaseModel):
    case: str
    plus_one: EndpointReportModel
    minus_one: EndpointReportModel


class BoundaryRequest(BaseModel):
    alpha: Number
    beta: Number
    n: int = Field(ge=0)
    digits: int = 30


class BoundaryPoint(BaseModel):
    x: str
    bracket_abs: str


class BoundaryResponse(BaseModel):
    n: int
    exp_plus: str
    exp_minus: str
    points: list[BoundaryPoint]


class SpectrumRequest(BaseModel):
    alpha: Number
    beta: Number
    k: int = Field(default=5, ge=1)
    nodes: int = 200
    digits: int = 30


class SpectrumPair(BaseModel):
    collocation: str
    pencil: str
    rel_distance: str


class SpectrumResponse(BaseModel):
    k: int
    node_count: int
    collocation: list[str]
    pencil: list[str]
    candidate_printed: list[str]
    candidate_shifted: list[str]
    pairs: list[SpectrumPair]
    unmatched_collocation: list[str]
    missing_pencil: list[str]
    printed_formula_matches: bool
    shifted_formula_matches: bool


class ReportRequest(BaseModel):
    alpha: Number
    beta: Number
    n_max: int = Field(default=8, ge=0)
    rel_tol: float = 1e-12
    output_format: Literal["json", "csv", "tsv"] = "csv"
    precision_digits: int = 30
    spectrum_k: int = 5
    spectrum_nodes: int = 200


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class ReportResponse(BaseModel):
    passed: bool
    exit_code: int
    checks: list[CheckModel]
    files: dict[str, str]


class ErrorResponse(BaseModel):
    error: str
    detail: str


class HealthResponse(BaseModel):
    status: str
    version: str
