"""FastAPI service wrapping the core package.

Every operation is a stateless request/response computation, so the CLI
runs as a thin client of this app (in-process by default, remote with
--server).  Library errors map to HTTP 400 with the exception class name;
request-shape problems surface as FastAPI's standard 422.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from mpmath import mp, mpf

from . import __version__
from . import classify as cls
from . import collocation, eigensolve, quadrature, slform
from .errors import X1JacobiError
from .params import validate
from .polycore import Polynomial
from .report import OutputFormat, RunConfig, build_report
from .scalars import DEFAULT_DPS, as_parameter, format_scalar
from .schemas import (
    BoundaryPoint,
    BoundaryRequest,
    BoundaryResponse,
    CheckModel,
    ClassifyRequest,
    ClassifyResponse,
    CoeffRow,
    CoeffsRequest,
    CoeffsResponse,
    DensityPoint,
    DensityRequest,
    DensityResponse,
    EigenPairModel,
    EigenRequest,
    EigenResponse,
    EndpointReportModel,
    GramRequest,
    GramResponse,
    HealthResponse,
    ParamsRequest,
    ParamsResponse,
    ReportRequest,
    ReportResponse,
    SpectrumPair,
    SpectrumRequest,
    SpectrumResponse,
)

app = FastAPI(
    title="x1jacobi",
    version=__version__,
    description="Exceptional Jacobi-type orthogonal polynomials built from "
                "their differential equation, with verification endpoints "
                "for orthogonality, endpoint classification and the spectrum.",
)


@app.exception_handler(X1JacobiError)
async def _library_error(_: Request, exc: X1JacobiError) -> JSONResponse:
    return JSONResponse(status_code=400,
                        content={"error": type(exc).__name__, "detail": str(exc)})


def _params(alpha, beta):
    return validate(as_parameter(alpha), as_parameter(beta))


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/params", response_model=ParamsResponse)
def params_endpoint(req: ParamsRequest) -> ParamsResponse:
    ps = _params(req.alpha, req.beta)
    return ParamsResponse(
        alpha=str(ps.alpha), beta=str(ps.beta),
        a=str(ps.a), b=str(ps.b), c=str(ps.c),
        case=ps.case_tag.value,
    )


@app.post("/coeffs", response_model=CoeffsResponse)
def coeffs_endpoint(req: CoeffsRequest) -> CoeffsResponse:
    ps = _params(req.alpha, req.beta)
    ct = slform.coefficient_triple(ps)
    rows = []
    for x in req.at:
        xv = as_parameter(x)
        rows.append(CoeffRow(
            x=format_scalar(xv, req.digits),
            p=format_scalar(slform.eval_coefficient(ct, slform.Coefficient.P, xv), req.digits),
            q=format_scalar(slform.eval_coefficient(ct, slform.Coefficient.Q, xv), req.digits),
            w=format_scalar(slform.eval_coefficient(ct, slform.Coefficient.W, xv), req.digits),
        ))
    return CoeffsResponse(rows=rows)


@app.post("/eigen", response_model=EigenResponse)
def eigen_endpoint(req: EigenRequest) -> EigenResponse:
    ps = _params(req.alpha, req.beta)
    normalization = (eigensolve.Normalization.UNIT_WEIGHTED_NORM
                     if req.normalize == "unit" else eigensolve.Normalization.MONIC)
    pairs = []
    for n in range(req.n_max + 1):
        pair = eigensolve.solve_eigenpoly(ps, n, normalization)
        pairs.append(EigenPairModel(
            n=n,
            lam=format_scalar(pair.eigenvalue, req.digits),
            coeffs=[format_scalar(c, req.digits) for c in pair.poly.coeffs],
        ))
    return EigenResponse(pairs=pairs)


@app.post("/gram", response_model=GramResponse)
def gram_endpoint(req: GramRequest) -> GramResponse:
    ps = _params(req.alpha, req.beta)
    polys = [eigensolve.solve_eigenpoly(ps, n).poly for n in range(req.n_max + 1)]
    G = quadrature.normalized_gram(ps, polys, rel_tol=mpf(req.rel_tol))
    return GramResponse(matrix=[[format_scalar(v, req.digits) for v in row] for row in G])


@app.post("/density", response_model=DensityResponse)
def density_endpoint(req: DensityRequest) -> DensityResponse:
    ps = _params(req.alpha, req.beta)
    polys = [eigensolve.solve_eigenpoly(ps, n).poly for n in range(req.n_max + 1)]
    one = Polynomial.one()
    series = []
    for N in range(req.n_max + 1):
        r = quadrature.project_residual(ps, one, polys[:N + 1], rel_tol=mpf(req.rel_tol))
        series.append(DensityPoint(n=N, residual=format_scalar(r, req.digits)))
    return DensityResponse(series=series)


def _endpoint_model(report: cls.EndpointReport, digits: int) -> EndpointReportModel:
    return EndpointReportModel(
        endpoint=report.endpoint.value,
        regular=report.regular,
        classification=report.classification.value,
        analytic_exponent=format_scalar(report.analytic_exponent, digits),
        numeric_exponent=(None if report.numeric_exponent is None
                          else format_scalar(report.numeric_exponent, digits)),
        boundary_condition_required=report.boundary_condition_required,
    )


@app.post("/classify", response_model=ClassifyResponse)
def classify_endpoint_route(req: ClassifyRequest) -> ClassifyResponse:
    ps = _params(req.alpha, req.beta)
    plus = cls.classify_endpoint(ps, cls.Endpoint.PLUS_ONE, numeric=req.numeric)
    minus = cls.classify_endpoint(ps, cls.Endpoint.MINUS_ONE, numeric=req.numeric)
    return ClassifyResponse(
        case=ps.case_tag.value,
        plus_one=_endpoint_model(plus, req.digits),
        minus_one=_endpoint_model(minus, req.digits),
    )


@app.post("/boundary", response_model=BoundaryResponse)
def boundary_endpoint(req: BoundaryRequest) -> BoundaryResponse:
    ps = _params(req.alpha, req.beta)
    poly = eigensolve.solve_eigenpoly(ps, req.n).poly
    exp_plus, exp_minus = cls.boundary_decay_check(ps, poly)
    points = []
    with mp.workdps(DEFAULT_DPS):
        for sign in (1, -1):
            for k in cls.BOUNDARY_KS:
                x = sign * (1 - mpf(2) ** (-k))
                br = abs(cls.boundary_bracket(ps, poly, x))
                points.append(BoundaryPoint(x=format_scalar(x, req.digits),
                                            bracket_abs=format_scalar(br, req.digits)))
    return BoundaryResponse(
        n=req.n,
        exp_plus=format_scalar(exp_plus, req.digits),
        exp_minus=format_scalar(exp_minus, req.digits),
        points=points,
    )


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum_endpoint(req: SpectrumRequest) -> SpectrumResponse:
    ps = _params(req.alpha, req.beta)
    cmp_ = collocation.compare_to_formula(ps, req.k, req.nodes)
    d = req.digits
    return SpectrumResponse(
        k=req.k,
        node_count=cmp_.node_count,
        collocation=[format_scalar(v, d) for v in cmp_.collocation],
        pencil=[format_scalar(v, d) for v in cmp_.pencil],
        candidate_printed=[format_scalar(v, d) for v in cmp_.formula_printed],
        candidate_shifted=[format_scalar(v, d) for v in cmp_.formula_shifted],
        pairs=[SpectrumPair(collocation=format_scalar(a, d),
                            pencil=format_scalar(b, d),
                            rel_distance=format_scalar(r, d))
               for a, b, r in cmp_.pairs_pencil],
        unmatched_collocation=[format_scalar(v, d) for v in cmp_.unmatched_collocation],
        missing_pencil=[format_scalar(v, d) for v in cmp_.missing_pencil],
        printed_formula_matches=cmp_.printed_formula_matches,
        shifted_formula_matches=cmp_.shifted_formula_matches,
    )


@app.post("/report", response_model=ReportResponse)
def report_endpoint(req: ReportRequest) -> ReportResponse:
    cfg = RunConfig(
        alpha=as_parameter(req.alpha),
        beta=as_parameter(req.beta),
        n_max=req.n_max,
        rel_tol=mpf(req.rel_tol),
        output_format=OutputFormat(req.output_format),
        precision_digits=req.precision_digits,
        spectrum_k=req.spectrum_k,
        spectrum_nodes=req.spectrum_nodes,
    )
    report, files, passed = build_report(cfg)
    return ReportResponse(
        passed=passed,
        exit_code=0 if passed else 1,
        checks=[CheckModel(**c) for c in report["checks"]],
        files=files,
    )
