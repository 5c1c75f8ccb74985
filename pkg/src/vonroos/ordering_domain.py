"""Ordering parameters on the plane alpha + beta + gamma = -1.

The symmetric region family is the set of points with
``alpha, beta, gamma <= b/2``; projected onto the (alpha, beta) plane it is

    -(1 + b) <= alpha <= b/2,    -(1 + b/2 + alpha) <= beta <= b/2,

a right triangle with legs ``(2 + 3b)/2``.  ``b = -2/3`` collapses it to the
single point alpha = beta = gamma = -1/3.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from numbers import Rational, Real

from .errors import DomainError

__all__ = ["OrderingPoint", "Region", "region", "B_MIN", "CENTER"]

B_MIN = Fraction(-2, 3)


@dataclass(frozen=True)
class OrderingPoint:
    """A point (alpha, beta) with ``gamma = -1 - alpha - beta`` derived."""

    alpha: Real
    beta: Real

    @property
    def gamma(self):
        return -1 - self.alpha - self.beta

    def as_triple(self):
        return (self.alpha, self.beta, self.gamma)

    def permutations(self):
        """All points obtained by permuting (alpha, beta, gamma)."""
        return [OrderingPoint(a, b) for a, b, _ in permutations(self.as_triple())]


CENTER = OrderingPoint(Fraction(-1, 3), Fraction(-1, 3))


def _is_exact(*values):
    return all(isinstance(v, Rational) for v in values)


@dataclass(frozen=True)
class Region:
    """Projected triangle of size ``b``; construct with :func:`region`."""

    b: Real

    def __post_init__(self):
        if isinstance(self.b, Rational):
            object.__setattr__(self, "b", Fraction(self.b))
        elif not math.isfinite(self.b):
            raise DomainError(f"b must be finite, got {self.b}")
        elif math.isclose(self.b, -2 / 3, rel_tol=0, abs_tol=4e-16):
            # Nearest float to -2/3 stands for the exact degenerate value.
            object.__setattr__(self, "b", B_MIN)
        if self.b < B_MIN:
            raise DomainError(f"region size b must be >= -2/3, got {self.b}")

    @property
    def is_degenerate(self):
        return self.b == B_MIN

    @property
    def alpha_bounds(self):
        return (-(1 + self.b), self.b / 2)

    def beta_bounds(self, alpha):
        return (-(1 + self.b / 2 + alpha), self.b / 2)

    def bounding_box(self):
        lo, hi = self.alpha_bounds
        return (lo, hi), (lo, hi)

    def contains(self, alpha, beta, tol=None):
        """Closed-region membership test.

        Exact (Fraction/int) inputs are tested exactly.  Float inputs get a
        tolerance of ``1e-12 * (1 + |b|)`` unless ``tol`` is given.
        """
        if tol is None:
            tol = 0 if _is_exact(self.b, alpha, beta) else 1e-12 * (1 + abs(float(self.b)))
        a_lo, a_hi = self.alpha_bounds
        b_lo, b_hi = self.beta_bounds(alpha)
        return (a_lo - tol <= alpha <= a_hi + tol) and (b_lo - tol <= beta <= b_hi + tol)

    def contains_array(self, alpha, beta):
        """Vectorized :meth:`contains` for numpy arrays (no tolerance)."""
        b = float(self.b)
        return (
            (alpha >= -(1 + b))
            & (alpha <= b / 2)
            & (beta >= -(1 + b / 2 + alpha))
            & (beta <= b / 2)
        )

    def vertices(self):
        half, low = self.b / 2, -1 - self.b
        return (
            OrderingPoint(half, half),
            OrderingPoint(half, low),
            OrderingPoint(low, half),
        )

    def projected_area(self):
        return (2 + 3 * self.b) ** 2 / 8


def region(b):
    """Region of size ``b >= -2/3``; raises :class:`DomainError` below that."""
    return Region(b)
