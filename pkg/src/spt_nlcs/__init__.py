"""Exact orthogonal polynomials and coherent states for the symmetric Poschl-Teller well."""

from .errors import (
    DivergenceWarning,
    DomainError,
    ExactnessError,
    MomentPositivityError,
    OutOfScopeError,
    PrecisionWarning,
    QuadratureConvergenceWarning,
)
from .hankel import OrthoSystem, build_system, monic_ops, norm_xi, recurrence_A
from .moments import (
    Convention,
    MomentSequence,
    SequenceSpec,
    cs_factorial,
    gen_factorial,
    moments_for,
    pochhammer,
    x_seq,
)
from .poly import QSqrt2, RationalPoly

__version__ = "0.1.0"
