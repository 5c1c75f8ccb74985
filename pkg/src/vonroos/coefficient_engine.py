"""Effective ambiguity coefficients of the superposed kinetic operator.

Averaging the symmetrized von Roos pair over orderings with a weight
``rho(alpha, beta)`` gives

    T = -1/2 [ eta1 m'^2/m^3 + eta2 m''/m^2 - m'/m^2 dx + (1/m) dx^2 ]

with the weighted means

    eta1 = <1 + alpha + beta + alpha*beta + alpha^2>,   eta2 = -<1 + beta>/2

taken over the projected triangle (continuous weights) or a finite set of
orderings (discrete weights).  This is the one coefficient convention used
throughout the package.

Four independent routes are provided: iterated Gauss-Legendre quadrature,
exact discrete sums, closed-form references for the uniform and Lorentzian
weights, and a seeded Monte Carlo estimator.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import CoefficientError, ConvergenceError, DomainError, WeightEvaluationError
from .ordering_domain import CENTER, Region
from .weight_model import ContinuousWeight, DiscreteWeight, ExpressionWeight

__all__ = [
    "KineticCoefficients",
    "QuadratureConfig",
    "McEstimate",
    "DiscrepancyRow",
    "DiscrepancyReport",
    "ambiguity_f",
    "ambiguity_g",
    "quadrature_nodes",
    "coefficients_continuous",
    "coefficients_discrete",
    "uniform_closed_form",
    "lorentz_closed_form",
    "lorentz_limit",
    "lorentz_discrepancy_report",
    "mc_estimate",
]


def ambiguity_f(alpha, beta):
    """Coefficient of m'^2/m^3 for one ordering."""
    return 1 + alpha + beta + alpha * beta + alpha * alpha


def ambiguity_g(alpha, beta):
    """Coefficient of m''/m^2 for one ordering."""
    return -(1 + beta) / 2


@dataclass(frozen=True)
class KineticCoefficients:
    eta1: float
    eta2: float
    total_weight: float

    def __iter__(self):
        return iter((self.eta1, self.eta2))

    @property
    def is_exact(self):
        return isinstance(self.eta1, Rational) and isinstance(self.eta2, Rational)


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre order per axis; with ``refine`` the order doubles until
    successive estimates of both coefficients differ by less than ``tol``."""

    order: int = 64
    tol: float = 1e-12
    refine: bool = True
    max_order: int = 2048

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 2:
            raise ValueError(f"quadrature order must be an integer >= 2, got {self.order}")
        if not self.tol > 0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        if self.max_order < self.order:
            raise ValueError("max_order must be at least order")


@dataclass(frozen=True)
class McEstimate:
    eta1: float
    eta2: float
    stderr1: float
    stderr2: float
    n: int
    seed: int
    accepted: int = field(default=0)


def _as_region(region):
    return region if isinstance(region, Region) else Region(region)


def _as_continuous(weight):
    if isinstance(weight, str):
        return ExpressionWeight.from_text(weight)
    if not isinstance(weight, ContinuousWeight):
        raise TypeError(f"continuous weight required, got {type(weight).__name__}")
    return weight


def quadrature_nodes(region, order):
    """Nodes ``(alpha, beta)`` and weights of the iterated Gauss-Legendre rule.

    The outer variable is alpha; for each outer node the inner interval
    ``[-(1 + b/2 + alpha), b/2]`` is mapped affinely onto ``[-1, 1]``.  The
    rule integrates polynomials of degree ``< 2*order - 1`` over the
    triangle exactly.
    """
    region = _as_region(region)
    x, w = np.polynomial.legendre.leggauss(order)
    b = float(region.b)
    a_lo, a_hi = -(1 + b), b / 2
    alpha = a_lo + (a_hi - a_lo) * (x + 1) / 2
    wa = w * (a_hi - a_lo) / 2
    b_lo = -(1 + b / 2 + alpha)
    half = (b / 2 - b_lo) / 2
    beta = b_lo[:, None] + half[:, None] * (x[None, :] + 1)
    weights = wa[:, None] * half[:, None] * w[None, :]
    alpha = np.broadcast_to(alpha[:, None], beta.shape)
    return alpha.ravel(), beta.ravel(), weights.ravel()


def _weighted_means(alpha, beta, weights):
    total = float(np.sum(weights))
    if not total > 0 or not math.isfinite(total):
        raise CoefficientError(f"total weight must be positive and finite, got {total}")
    eta1 = float(np.dot(weights, ambiguity_f(alpha, beta))) / total
    eta2 = float(np.dot(weights, ambiguity_g(alpha, beta))) / total
    if not (math.isfinite(eta1) and math.isfinite(eta2)):
        raise CoefficientError("weighted means are not finite")
    return KineticCoefficients(eta1, eta2, total)


def _point_coefficients(weight):
    # b = -2/3: the triangle is the single ordering alpha = beta = gamma = -1/3.
    try:
        weight.evaluate(float(CENTER.alpha), float(CENTER.beta))
    except WeightEvaluationError as exc:
        raise CoefficientError(str(exc)) from exc
    return KineticCoefficients(
        ambiguity_f(CENTER.alpha, CENTER.beta), ambiguity_g(CENTER.alpha, CENTER.beta), 0
    )


def coefficients_continuous(region, weight, cfg=None):
    """(eta1, eta2, A) for a continuous weight over the region of size ``b``.

    ``region`` is a :class:`Region` or a number ``b``.  At ``b = -2/3`` the
    exact point values are returned (as Fractions) instead of integrating.
    """
    region = _as_region(region)
    weight = _as_continuous(weight)
    cfg = cfg or QuadratureConfig()
    if region.is_degenerate:
        return _point_coefficients(weight)

    def estimate(order):
        alpha, beta, w = quadrature_nodes(region, order)
        try:
            rho = weight.evaluate(alpha, beta)
        except WeightEvaluationError as exc:
            raise CoefficientError(str(exc)) from exc
        return _weighted_means(alpha, beta, w * rho)

    order = cfg.order
    current = estimate(order)
    if not cfg.refine:
        return current
    while 2 * order <= cfg.max_order:
        order *= 2
        previous, current = current, estimate(order)
        if (
            abs(current.eta1 - previous.eta1) < cfg.tol
            and abs(current.eta2 - previous.eta2) < cfg.tol
        ):
            return current
    raise ConvergenceError(
        f"quadrature did not reach tol={cfg.tol} by order {order}", best=current
    )


def coefficients_discrete(weight):
    """Weighted means over a finite set of orderings.

    Exact Fractions are returned when every alpha, beta and c is rational.
    """
    if not isinstance(weight, DiscreteWeight):
        weight = DiscreteWeight(tuple(weight))
    entries = weight.entries
    if all(e.is_exact for e in entries):
        total = sum((e.c for e in entries), Fraction(0))
        if total == 0:
            raise CoefficientError("discrete weights sum to zero")
        eta1 = sum(e.c * ambiguity_f(e.alpha, e.beta) for e in entries) / total
        eta2 = sum(e.c * ambiguity_g(e.alpha, e.beta) for e in entries) / total
        return KineticCoefficients(eta1, eta2, total)
    alpha = np.array([float(e.alpha) for e in entries])
    beta = np.array([float(e.beta) for e in entries])
    c = np.array([float(e.c) for e in entries])
    total = float(np.sum(c))
    if total == 0:
        raise CoefficientError("discrete weights sum to zero")
    eta1 = float(np.dot(c, ambiguity_f(alpha, beta))) / total
    eta2 = float(np.dot(c, ambiguity_g(alpha, beta))) / total
    return KineticCoefficients(eta1, eta2, total)


# --------------------------------------------------------------------------
# Closed-form references
# --------------------------------------------------------------------------


def uniform_closed_form(b):
    """rho = 1: eta1 = (3b^2 + 4b + 28)/48, eta2 = -1/3, A = (2 + 3b)^2/8.

    Exact for rational ``b``.
    """
    region = Region(b)
    b = region.b
    if isinstance(b, Rational):
        return KineticCoefficients(
            (3 * b * b + 4 * b + 28) / Fraction(48), Fraction(-1, 3), region.projected_area()
        )
    return KineticCoefficients((3 * b * b + 4 * b + 28) / 48, -1 / 3, region.projected_area())


def _lorentz_parts(b):
    log_term = math.log(4 * (2 + 2 * b + b * b) / (4 + b * b))
    atan_term = math.atan(b / 2) + math.atan(1 + b)
    return log_term, atan_term


def lorentz_closed_form(b, printed=False):
    """Closed-form (eta1, eta2, A) for rho = 1/(alpha^2+1) + 1/(beta^2+1).

    With ``L = ln(4(2 + 2b + b^2)/(4 + b^2))`` and
    ``T = atan(b/2) + atan(1 + b)`` the total weight is ``A = 2(1 + b)T - L``
    and::

        eta1 = [-(3b^2+12b+20) L + 2(b^3+3b^2+12b+4) T + 15b^2+40b+20] / (24 A)
        eta2 = [(b+4) L - 2(3b+2) T - (3b+2)] / (8 A)

    ``printed=True`` returns the historically published eta2, whose T term
    carries a ``+`` sign; it disagrees with quadrature for every b and does
    not reach -1/3 as b -> -2/3.  See :func:`lorentz_discrepancy_report`.
    """
    region = Region(b)
    if region.is_degenerate:
        raise DomainError("closed form is 0/0 at b = -2/3; use lorentz_limit()")
    b = float(region.b)
    log_term, atan_term = _lorentz_parts(b)
    total = 2 * (1 + b) * atan_term - log_term
    eta1 = (
        -(3 * b**2 + 12 * b + 20) * log_term
        + 2 * (b**3 + 3 * b**2 + 12 * b + 4) * atan_term
        + 15 * b**2
        + 40 * b
        + 20
    ) / (24 * total)
    sign = 1 if printed else -1
    eta2 = ((b + 4) * log_term + sign * 2 * (3 * b + 2) * atan_term - (3 * b + 2)) / (8 * total)
    if not all(math.isfinite(v) for v in (eta1, eta2, total)):
        raise CoefficientError(f"closed form is not finite at b = {b}")
    return KineticCoefficients(eta1, eta2, total)


def lorentz_limit(printed=False):
    """Exact limit of :func:`lorentz_closed_form` as b -> -2/3 from above."""
    import sympy as sp

    b = sp.Symbol("b")
    log_term = sp.log(4 * (2 + 2 * b + b**2) / (4 + b**2))
    atan_term = sp.atan(b / 2) + sp.atan(1 + b)
    total = 2 * (1 + b) * atan_term - log_term
    eta1 = (
        -(3 * b**2 + 12 * b + 20) * log_term
        + 2 * (b**3 + 3 * b**2 + 12 * b + 4) * atan_term
        + 15 * b**2
        + 40 * b
        + 20
    ) / (24 * total)
    sign = 1 if printed else -1
    eta2 = ((b + 4) * log_term + sign * 2 * (3 * b + 2) * atan_term - (3 * b + 2)) / (8 * total)
    at = sp.Rational(-2, 3)
    values = []
    for expr in (eta1, eta2):
        lim = sp.limit(expr, b, at, "+")
        if not lim.is_Rational:
            raise CoefficientError(f"limit is not rational: {lim}")
        values.append(Fraction(int(lim.p), int(lim.q)))
    return KineticCoefficients(values[0], values[1], 0)


@dataclass(frozen=True)
class DiscrepancyRow:
    b: float
    quadrature: KineticCoefficients
    printed: KineticCoefficients
    corrected: KineticCoefficients

    def error(self, which):
        ref = getattr(self, which)
        return (abs(ref.eta1 - self.quadrature.eta1), abs(ref.eta2 - self.quadrature.eta2))


@dataclass(frozen=True)
class DiscrepancyReport:
    """Closed-form Lorentzian coefficients compared with quadrature."""

    rows: tuple
    tol: float

    def agrees(self, which="corrected"):
        return all(max(r.error(which)) < self.tol for r in self.rows)

    def mismatches(self, which="printed"):
        """``[(b, component), ...]`` where ``which`` misses quadrature by >= tol."""
        out = []
        for r in self.rows:
            for name, err in zip(("eta1", "eta2"), r.error(which)):
                if err >= self.tol:
                    out.append((r.b, name))
        return out

    def __str__(self):
        lines = [
            f"Lorentzian closed form vs quadrature (tol {self.tol:g})",
            f"{'b':>8} {'quad eta1':>14} {'quad eta2':>14} "
            f"{'|d eta1|':>10} {'|d eta2| printed':>17} {'|d eta2| corrected':>19}",
        ]
        for r in self.rows:
            e1, e2p = r.error("printed")
            _, e2c = r.error("corrected")
            lines.append(
                f"{r.b:>8g} {r.quadrature.eta1:>14.10f} {r.quadrature.eta2:>14.10f} "
                f"{e1:>10.2e} {e2p:>17.2e} {e2c:>19.2e}"
            )
        bad = self.mismatches("printed")
        if bad:
            lines.append(
                "printed form disagrees at: "
                + ", ".join(f"b={b:g} ({name})" for b, name in bad)
                + "; the sign of the 2(3b+2)T term in eta2 must be negative"
            )
        return "\n".join(lines)


def lorentz_discrepancy_report(bs=(-0.5, 0.0, 1.0, 3.0), tol=1e-8, cfg=None):
    """Check both closed-form variants against quadrature at each ``b``."""
    from .weight_model import LorentzSum

    rows = []
    for b in bs:
        rows.append(
            DiscrepancyRow(
                float(b),
                coefficients_continuous(b, LorentzSum(), cfg),
                lorentz_closed_form(b, printed=True),
                lorentz_closed_form(b),
            )
        )
    return DiscrepancyReport(tuple(rows), tol)


# --------------------------------------------------------------------------
# Monte Carlo oracle
# --------------------------------------------------------------------------


def mc_estimate(region, weight, n, seed):
    """Rejection-sampling estimate of (eta1, eta2) with standard errors.

    ``n`` points are drawn uniformly in the bounding box of the triangle and
    kept if inside it; the weighted means use the kept points.  The standard
    errors are those of a ratio estimator.  Same ``seed``, same result.
    """
    region = _as_region(region)
    weight = _as_continuous(weight)
    if n < 1000:
        raise ValueError(f"Monte Carlo needs n >= 1000 samples, got {n}")
    if region.is_degenerate:
        raise CoefficientError("region has zero area; no sample can be accepted")
    rng = np.random.default_rng(seed)
    (lo, hi), _ = region.bounding_box()
    lo, hi = float(lo), float(hi)
    alpha = rng.uniform(lo, hi, n)
    beta = rng.uniform(lo, hi, n)
    keep = region.contains_array(alpha, beta)
    if not keep.any():
        raise CoefficientError("no sample fell inside the region")
    alpha, beta = alpha[keep], beta[keep]
    try:
        w = weight.evaluate(alpha, beta)
    except WeightEvaluationError as exc:
        raise CoefficientError(str(exc)) from exc
    total = w.sum()
    if not total > 0:
        raise CoefficientError("total sampled weight is zero")
    results = []
    for h in (ambiguity_f(alpha, beta), ambiguity_g(alpha, beta)):
        mean = np.dot(w, h) / total
        stderr = math.sqrt(np.dot(w * w, (h - mean) ** 2)) / float(total)
        results.append((float(mean), stderr))
    (eta1, se1), (eta2, se2) = results
    return McEstimate(eta1, eta2, se1, se2, n, seed, int(keep.sum()))
