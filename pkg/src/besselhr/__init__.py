"""Fundamental Bessel functions of arbitrary rank.

Evaluation routes: ascending series at the regular singularity (series),
truncated asymptotic expansions at infinity (asympt), and a Mellin-Barnes
contour quadrature oracle (mellinbarnes); Bessel kernels and rank-n Hankel
transforms are built on top (kernel).  Exact coefficient combinatorics live
in coeffs.
"""

from ._backend import BACKEND
from .core import (
    EvalResult,
    NuIndex,
    OutOfSectorError,
    OverflowEvalError,
    PoleError,
    RootOfUnity,
    SignVector,
    SpectralIndex,
    SurfacePoint,
    ToleranceNotMetError,
    ValidityFloorError,
    genericity_gap,
    lambda_of_nu,
    log_gamma,
    nu_of_lambda,
    recip_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EvalResult",
    "NuIndex",
    "OutOfSectorError",
    "OverflowEvalError",
    "PoleError",
    "RootOfUnity",
    "SignVector",
    "SpectralIndex",
    "SurfacePoint",
    "ToleranceNotMetError",
    "ValidityFloorError",
    "genericity_gap",
    "lambda_of_nu",
    "log_gamma",
    "nu_of_lambda",
    "recip_gamma",
    "__version__",
]
