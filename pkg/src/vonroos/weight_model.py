"""Weight functions over orderings: continuous densities and discrete sets.

Continuous weights are callables ``rho(alpha, beta)`` that accept scalars or
numpy arrays.  A discrete weight is a list of ``(alpha, beta, c)`` entries.
Weights must be non-negative wherever they are evaluated; the coefficient
engine treats a negative or non-finite value as a hard error.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._rational import as_fraction
from .errors import CoefficientError, WeightEvaluationError
from .expression import Expr, parse_expression
from .ordering_domain import OrderingPoint

__all__ = [
    "Uniform",
    "LorentzSum",
    "ExpressionWeight",
    "DiscreteEntry",
    "DiscreteWeight",
    "KNOWN_ORDERINGS",
    "parse_rho",
    "eval_rho",
    "preset_orderings",
]

WEIGHT_VARIABLES = ("alpha", "beta")


class ContinuousWeight:
    def __call__(self, alpha, beta):
        raise NotImplementedError

    def evaluate(self, alpha, beta, nonnegative=True):
        """Evaluate and validate: finite (and non-negative) at every point."""
        alpha = np.asarray(alpha, dtype=float)
        beta = np.asarray(beta, dtype=float)
        with np.errstate(all="ignore"):
            values = np.broadcast_to(
                np.asarray(self(alpha, beta), dtype=float), np.broadcast(alpha, beta).shape
            )
        bad = ~np.isfinite(values)
        if bad.any():
            a, b = _first(alpha, beta, bad)
            raise WeightEvaluationError(f"weight {self} is not finite at (alpha, beta) = ({a}, {b})")
        negative = values < 0
        if nonnegative and negative.any():
            a, b = _first(alpha, beta, negative)
            raise WeightEvaluationError(f"weight {self} is negative at (alpha, beta) = ({a}, {b})")
        return values


def _first(alpha, beta, mask):
    idx = np.argwhere(mask)[0]
    a = np.broadcast_to(alpha, mask.shape)[tuple(idx)]
    b = np.broadcast_to(beta, mask.shape)[tuple(idx)]
    return float(a), float(b)


@dataclass(frozen=True)
class Uniform(ContinuousWeight):
    def __call__(self, alpha, beta):
        return np.ones(np.broadcast(alpha, beta).shape)

    def __str__(self):
        return "1"


@dataclass(frozen=True)
class LorentzSum(ContinuousWeight):
    """``1/(alpha^2 + 1) + 1/(beta^2 + 1)``, symmetric under alpha <-> beta."""

    def __call__(self, alpha, beta):
        return 1 / (np.square(alpha) + 1) + 1 / (np.square(beta) + 1)

    def __str__(self):
        return "1/(alpha^2 + 1) + 1/(beta^2 + 1)"


@dataclass(frozen=True)
class ExpressionWeight(ContinuousWeight):
    expr: Expr

    @classmethod
    def from_text(cls, text):
        return cls(parse_rho(text))

    def __call__(self, alpha, beta):
        return self.expr(alpha=alpha, beta=beta)

    def __str__(self):
        return str(self.expr)


@dataclass(frozen=True)
class DiscreteEntry:
    """One ordering with weight ``c``; rational inputs are kept exact."""

    alpha: Fraction
    beta: Fraction
    c: float

    def __post_init__(self):
        for name in ("alpha", "beta", "c"):
            value = getattr(self, name)
            if isinstance(value, float):
                if not np.isfinite(value):
                    raise ValueError(f"{name} must be finite, got {value}")
            else:
                object.__setattr__(self, name, as_fraction(value))

    @property
    def is_exact(self):
        return not any(isinstance(v, float) for v in (self.alpha, self.beta, self.c))

    @property
    def point(self):
        return OrderingPoint(self.alpha, self.beta)


@dataclass(frozen=True)
class DiscreteWeight:
    """Finite set of orderings with real weights ``c`` (the sum must be nonzero)."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(
            e if isinstance(e, DiscreteEntry) else DiscreteEntry(*e) for e in self.entries
        )
        if not entries:
            raise ValueError("a discrete weight needs at least one entry")
        if sum(e.c for e in entries) == 0:
            raise CoefficientError("discrete weights sum to zero")
        object.__setattr__(self, "entries", entries)

    @property
    def total(self):
        return sum(e.c for e in self.entries)

    def __len__(self):
        return len(self.entries)


# Named ordering-parameter sets as (alpha, beta); gamma = -1 - alpha - beta.
KNOWN_ORDERINGS = {
    "gora_williams": (Fraction(-1), Fraction(0)),
    "bendaniel_duke": (Fraction(0), Fraction(-1)),
    "zhu_kroemer": (Fraction(-1, 2), Fraction(0)),
    "li_kuhn": (Fraction(0), Fraction(-1, 2)),
    "mustafa_mazharimousavi": (Fraction(-1, 4), Fraction(-1, 2)),
}


def preset_orderings():
    """The five named orderings, each with weight 1."""
    return DiscreteWeight(tuple(DiscreteEntry(a, b, 1) for a, b in KNOWN_ORDERINGS.values()))


def parse_rho(text):
    """Parse a weight expression over ``alpha`` and ``beta``."""
    return parse_expression(text, WEIGHT_VARIABLES)


def eval_rho(spec, alpha, beta):
    """Value of a continuous weight at one point or an array of points."""
    if isinstance(spec, DiscreteWeight):
        raise TypeError("eval_rho needs a continuous weight")
    if isinstance(spec, (Expr, str)):
        spec = ExpressionWeight(parse_rho(spec) if isinstance(spec, str) else spec)
    values = spec.evaluate(alpha, beta, nonnegative=False)
    return float(values) if values.ndim == 0 else values
