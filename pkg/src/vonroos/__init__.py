"""Superposed-ordering kinetic energy operators for position-dependent mass.

The von Roos kinetic operator ``(m^a p m^b p m^c + m^c p m^b p m^a)/4`` with
``a + b + c = -1`` is averaged over ordering parameters with a weight
function.  The package normal-orders the operator words exactly, computes the
resulting effective coefficients for continuous and discrete weights, and
builds 1-D finite-difference Hamiltonians from them.
"""

__version__ = "0.1.0"

from ._rational import GaussianRational
from .coefficient_engine import (
    KineticCoefficients,
    McEstimate,
    QuadratureConfig,
    coefficients_continuous,
    coefficients_discrete,
    lorentz_closed_form,
    lorentz_discrepancy_report,
    lorentz_limit,
    mc_estimate,
    quadrature_nodes,
    uniform_closed_form,
)
from .errors import (
    CoefficientError,
    ConsistencyError,
    ConvergenceError,
    DegenerateSampleError,
    DomainError,
    EigenSolverError,
    ParseError,
    VonRoosError,
    WeightEvaluationError,
)
from .operator_algebra import (
    CanonicalForm,
    OperatorExpression,
    fit_ambiguity_polynomial,
    normal_order,
    parse_operator,
    vonroos_pair,
)
from .ordering_domain import OrderingPoint, Region, region
from .pdm_hamiltonian import (
    Grid,
    MassProfile,
    SampledMassProfile,
    Spectrum,
    TridiagonalHamiltonian,
    assemble,
    effective_potential,
    eigen,
)
from .weight_model import (
    KNOWN_ORDERINGS,
    DiscreteEntry,
    DiscreteWeight,
    ExpressionWeight,
    LorentzSum,
    Uniform,
    eval_rho,
    parse_rho,
    preset_orderings,
)
