"""Exact rational and Gaussian-rational scalars."""

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

RATIONAL_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?")


def parse_rational(text):
    """Parse ``-1/2``, ``0.25`` or ``3`` into an exact :class:`Fraction`.

    Decimals are converted exactly (``0.1`` is ``1/10``, not the nearest float).
    Raises ValueError for anything else, including a zero denominator.
    """
    text = text.strip()
    if not RATIONAL_RE.fullmatch(text):
        raise ValueError(f"not a rational literal: {text!r}")
    num, _, den = text.partition("/")
    value = Fraction(num)
    if den:
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value /= int(den)
    return value


def as_fraction(value):
    """Coerce ints, Fractions and rational strings to Fraction; reject floats."""
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"exact rational required, got {type(value).__name__}")


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(as_fraction(value))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self):
        return self.im == 0

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{format_rational(self.im)}i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{format_rational(self.re)}{sign}{im}"

    def __repr__(self):
        return f"GaussianRational({self})"


I = GaussianRational(0, 1)
ONE = GaussianRational(1)
ZERO = GaussianRational(0)
