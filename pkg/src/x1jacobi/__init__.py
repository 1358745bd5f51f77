"""X1-Jacobi exceptional orthogonal polynomials, built from their
second-order differential equation, with desk-scale verification of the
surrounding spectral theory: parameter constraints, divergence form,
orthogonality, endpoint classification, boundary conditions and the
eigenvalue sequence."""

from .classify import (
    Classification,
    Endpoint,
    EndpointReport,
    Phi,
    boundary_decay_check,
    classify_endpoint,
    l2_exponent_phi2,
    numeric_tail_exponent,
    one_over_p_integrable,
    phi1_eval,
    phi2_eval,
    wronskian,
)
from .collocation import CollocationProblem, compare_to_formula, solve_spectrum
from .eigensolve import (
    EigenPair,
    Normalization,
    PencilMatrix,
    build_pencil,
    discover_spectrum,
    lambda_formula,
    lambda_pencil,
    solve_eigenpoly,
    verify_no_degree_zero,
)
from .errors import (
    CaseError,
    ConvergenceError,
    DegenerateError,
    DomainError,
    EqualityError,
    NullityError,
    ParameterError,
    PrecisionError,
    RangeError,
    SignError,
    ThresholdError,
    X1JacobiError,
)
from .params import Case, ParameterSet, case_of, validate
from .polycore import Polynomial
from .quadrature import (
    QuadratureRule,
    gauss_jacobi,
    gram,
    inner_product,
    normalized_gram,
    project_residual,
    weighted_norm,
)
from .report import RunConfig, build_report, run_report
from .slform import (
    Coefficient,
    CoefficientTriple,
    OperatorImage,
    apply_operator,
    coefficient_triple,
    eval_coefficient,
    sl_identity_residual,
    symplectic_form,
)

__version__ = "0.1.0"
