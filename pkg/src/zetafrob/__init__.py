"""Zeta functions of hyperelliptic curves over odd-characteristic finite fields.

The package computes the numerator L(X) of the zeta function of
y^2 = Q(x) over F_q (q = p^n, p an odd prime) by p-adic cohomology:
lift the curve, push the basis differentials through Frobenius, reduce
back to the basis, and read the characteristic polynomial of the matrix
off at the working precision.  A brute-force point counter doubles as an
independent cross-check for small fields.
"""

from .errors import (
    BothZero,
    DegreeTooSmall,
    DivisionByZero,
    EvenCharacteristic,
    FieldMismatch,
    InputError,
    InvariantError,
    MissingModulus,
    NewtonDivisionFailure,
    NonBasisResidual,
    NonIntegralCoefficient,
    NotPrime,
    NotSeparable,
    OddDegree,
    PrecisionExhausted,
    ReducibleModulus,
    TooLarge,
    WeilBoundViolation,
    ZetaError,
)
from .gf import FieldDesc, FqElement, FqPoly, gf_make, is_separable, poly_gcd
from .kedlaya import (
    BasisChoice,
    CurveModel,
    PrecisionPlan,
    Reducer,
    ZetaResult,
    build_frobenius_matrix,
    kernel_generator,
    normalize_model,
    plan_precision,
    select_basis,
    twisted_power,
    zeta_lpoly,
)
from .oracle import count_points, lpoly_from_counts
from .zq import ZqContext, ZqElement, ZqPoly

__version__ = "0.1.0"

__all__ = [
    "BasisChoice",
    "BothZero",
    "CurveModel",
    "DegreeTooSmall",
    "DivisionByZero",
    "EvenCharacteristic",
    "FieldDesc",
    "FieldMismatch",
    "FqElement",
    "FqPoly",
    "InputError",
    "InvariantError",
    "MissingModulus",
    "NewtonDivisionFailure",
    "NonBasisResidual",
    "NonIntegralCoefficient",
    "NotPrime",
    "NotSeparable",
    "OddDegree",
    "PrecisionExhausted",
    "PrecisionPlan",
    "Reducer",
    "ReducibleModulus",
    "TooLarge",
    "WeilBoundViolation",
    "ZetaError",
    "ZetaResult",
    "ZqContext",
    "ZqElement",
    "ZqPoly",
    "build_frobenius_matrix",
    "count_points",
    "gf_make",
    "is_separable",
    "kernel_generator",
    "lpoly_from_counts",
    "normalize_model",
    "plan_precision",
    "poly_gcd",
    "select_basis",
    "twisted_power",
    "zeta_lpoly",
    "__version__",
]
