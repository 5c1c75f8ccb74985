"""Normal ordering of products of momentum operators and mass powers.

An operator word such as ``m^(-1/2) p m^0 p m^(-1/2)`` acts on a wave
function from the right.  :func:`normal_order` pushes every derivative to the
right of every multiplicative factor using the product rule

    d/dx . F = F . d/dx + F'

with ``p = -i d/dx`` (hbar = 1).  The result is a :class:`CanonicalForm`, a
sum of terms ``c * prod_n (m^(n))^e_n * d^k/dx^k`` with exact Gaussian
rational coefficients ``c``.  No floating point is used anywhere here.

Grammar accepted by :func:`parse_operator`::

    operator := [rational "*"] atom {atom}
    atom     := "m" ["^" exponent] | "p" | "dx"
    exponent := rational | "(" rational ")"
    rational := ["+"|"-"] digits ["." digits] ["/" digits]
"""

import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ._rational import (
    I,
    ONE,
    RATIONAL_RE,
    GaussianRational,
    as_fraction,
    format_rational,
)
from .errors import ConsistencyError, DegenerateSampleError, ParseError

__all__ = [
    "MassPower",
    "Momentum",
    "Derivative",
    "MOMENTUM",
    "DERIVATIVE",
    "OperatorExpression",
    "Term",
    "CanonicalForm",
    "VonRoosPairCoeffs",
    "AmbiguityPolynomial",
    "parse_operator",
    "normal_order",
    "vonroos_word",
    "vonroos_pair",
    "fit_ambiguity_polynomial",
]


# --------------------------------------------------------------------------
# Atoms and expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MassPower:
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", as_fraction(self.exponent))

    def __str__(self):
        return _format_mass_factor(0, self.exponent, keep_zero=True)


@dataclass(frozen=True)
class Momentum:
    def __str__(self):
        return "p"


@dataclass(frozen=True)
class Derivative:
    def __str__(self):
        return "dx"


MOMENTUM = Momentum()
DERIVATIVE = Derivative()


@dataclass(frozen=True)
class OperatorExpression:
    """A product of atoms times an exact scalar, read left to right."""

    atoms: tuple
    scalar: GaussianRational = ONE

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "scalar", GaussianRational.coerce(self.scalar))
        if not self.atoms:
            raise ValueError("an operator expression needs at least one atom")

    def __mul__(self, other):
        if isinstance(other, OperatorExpression):
            return OperatorExpression(self.atoms + other.atoms, self.scalar * other.scalar)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def scaled(self, factor):
        return OperatorExpression(self.atoms, self.scalar * factor)

    def __str__(self):
        body = " ".join(str(a) for a in self.atoms)
        if self.scalar == ONE:
            return body
        return f"{self.scalar}*{body}"


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rational>" + RATIONAL_RE.pattern + r")|(?P<name>[A-Za-z_]\w*)|(?P<op>[\^()*]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", text, col)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind) + 1))
        pos = match.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


def parse_operator(text):
    """Parse an operator word into an :class:`OperatorExpression`.

    >>> str(parse_operator("m^(-1/2) p m^0 p m^(-1/2)"))
    'm^(-1/2) p m^0 p m^(-1/2)'
    """
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    scalar = ONE
    if peek()[0] == "rational":
        kind, value, col = take()
        if peek()[1] != "*":
            raise ParseError("expected '*' after leading scalar", text, peek()[2])
        take()
        scalar = GaussianRational(_rational(value, text, col))

    atoms = []
    while peek()[0] != "end":
        kind, value, col = take()
        if kind == "name" and value == "p":
            atoms.append(MOMENTUM)
        elif kind == "name" and value == "dx":
            atoms.append(DERIVATIVE)
        elif kind == "name" and value == "m":
            exponent = Fraction(1)
            if peek()[1] == "^":
                take()
                exponent = _parse_exponent(text, take, peek)
            atoms.append(MassPower(exponent))
        elif kind == "op" and value in "()":
            raise ParseError(f"unbalanced parenthesis {value!r}", text, col)
        else:
            raise ParseError(f"unknown atom {value!r}", text, col)
    if not atoms:
        raise ParseError("empty operator", text, peek()[2])
    return OperatorExpression(tuple(atoms), scalar)


def _parse_exponent(text, take, peek):
    kind, value, col = take()
    if kind == "rational":
        return _rational(value, text, col)
    if value == "(":
        kind, value, col = take()
        if kind != "rational":
            raise ParseError(f"malformed exponent {value!r}", text, col)
        exponent = _rational(value, text, col)
        kind, value, col = take()
        if value != ")":
            raise ParseError("unbalanced parenthesis in exponent", text, col)
        return exponent
    raise ParseError(f"malformed exponent {value!r}", text, col)


def _rational(value, text, col):
    try:
        return as_fraction(value)
    except ValueError as exc:
        raise ParseError(str(exc), text, col) from None


# --------------------------------------------------------------------------
# Canonical form
# --------------------------------------------------------------------------


class Term(NamedTuple):
    coefficient: GaussianRational
    mass_word: tuple  # ((order, exponent), ...) sorted by derivative order of m
    derivative_order: int


_PRIME_NAMES = {0: "m", 1: "m'", 2: "m''", 3: "m'''"}


def _format_mass_factor(order, exponent, keep_zero=False):
    base = _PRIME_NAMES.get(order, f"m({order})")
    if exponent == 1:
        return base
    if exponent == 0 and not keep_zero:
        return ""
    if Fraction(exponent).denominator == 1:
        return f"{base}^{format_rational(exponent)}"
    return f"{base}^({format_rational(exponent)})"


def _format_term(coefficient, word, k):
    parts = [f"({coefficient})"]
    parts += [_format_mass_factor(n, e) for n, e in sorted(word, reverse=True)]
    if k:
        parts.append(f"dx^{k}")
    return " ".join(parts)


class CanonicalForm:
    """Normal-ordered operator: derivatives stand to the right of all factors.

    Terms with equal ``(mass_word, derivative_order)`` are collected and zero
    coefficients dropped, so two forms compare equal iff they are the same
    operator on smooth functions.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc = defaultdict(GaussianRational)
        if isinstance(terms, dict):
            terms = [(c, w, k) for (w, k), c in terms.items()]
        for coefficient, word, k in terms:
            word = tuple(sorted((int(n), Fraction(e)) for n, e in word if e != 0))
            acc[word, int(k)] += GaussianRational.coerce(coefficient)
        self._terms = tuple(
            sorted(
                (Term(c, w, k) for (w, k), c in acc.items() if c),
                key=lambda t: (t.derivative_order, t.mass_word),
            )
        )

    @property
    def terms(self):
        return self._terms

    def coefficient(self, mass_word, derivative_order):
        word = tuple(sorted((n, Fraction(e)) for n, e in dict(mass_word).items() if e != 0))
        for term in self._terms:
            if term.mass_word == word and term.derivative_order == derivative_order:
                return term.coefficient
        return GaussianRational(0)

    def __add__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return CanonicalForm(self._terms + other._terms)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, CanonicalForm):
            return NotImplemented
        scalar = GaussianRational.coerce(scalar)
        return CanonicalForm((scalar * c, w, k) for c, w, k in self._terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __len__(self):
        return len(self._terms)

    def max_mass_derivative(self):
        return max((n for t in self._terms for n, _ in t.mass_word), default=0)

    def constant_mass_part(self):
        """Drop every term containing a derivative of m (m' = m'' = ... = 0)."""
        return CanonicalForm(
            t for t in self._terms if all(n == 0 for n, _ in t.mass_word)
        )

    def format(self, factor=None):
        """Render the form; with ``factor`` it is pulled out as ``factor * [ ... ]``."""
        if factor is None:
            terms = self._terms
        else:
            factor = GaussianRational.coerce(factor)
            if factor.im:
                raise ValueError("only real factors can be pulled out")
            inv = GaussianRational(1 / factor.re)
            terms = [Term(c * inv, w, k) for c, w, k in self._terms]
        body = " + ".join(_format_term(*t) for t in terms) or "0"
        if factor is None:
            return body
        return f"{factor} * [ {body} ]"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CanonicalForm({self.format()!r})"


# --------------------------------------------------------------------------
# Normal ordering
# --------------------------------------------------------------------------


def _differentiate(word):
    """d/dx of a mass word, as a list of (coefficient, word) pairs."""
    out = []
    powers = dict(word)
    for n, e in word:
        new = dict(powers)
        new[n] = e - 1
        new[n + 1] = new.get(n + 1, 0) + 1
        out.append((e, tuple((m, x) for m, x in new.items() if x != 0)))
    return out


def normal_order(expr):
    """Move every derivative to the right of every mass factor.

    >>> print(normal_order(parse_operator("p m")))
    (-i) m' + (-i) m dx^1
    """
    # Apply atoms right to left, i.e. left-multiply the accumulated operator.
    terms = {((), 0): ONE}
    for atom in reversed(expr.atoms):
        new = defaultdict(GaussianRational)
        if isinstance(atom, MassPower):
            for (word, k), c in terms.items():
                powers = dict(word)
                powers[0] = powers.get(0, 0) + atom.exponent
                new[_key(powers), k] += c
        else:
            unit = -I if isinstance(atom, Momentum) else ONE
            for (word, k), c in terms.items():
                new[word, k + 1] += unit * c
                for d, dword in _differentiate(word):
                    new[_key(dict(dword)), k] += unit * c * d
        terms = {key: c for key, c in new.items() if c}
    return CanonicalForm(terms) * expr.scalar


def _key(powers):
    return tuple(sorted((n, Fraction(e)) for n, e in powers.items() if e != 0))


# --------------------------------------------------------------------------
# von Roos pair
# --------------------------------------------------------------------------


def vonroos_word(alpha, beta, gamma):
    """The word ``m^alpha p m^beta p m^gamma``."""
    return OperatorExpression(
        (MassPower(alpha), MOMENTUM, MassPower(beta), MOMENTUM, MassPower(gamma))
    )


# Template of the symmetrized pair: -2 [ f m'^2/m^3 + g m''/m^2 - m'/m^2 dx + dx^2/m ]
_F_KEY = (((0, Fraction(-3)), (1, Fraction(2))), 0)
_G_KEY = (((0, Fraction(-2)), (2, Fraction(1))), 0)
_FIXED = {
    (((0, Fraction(-2)), (1, Fraction(1))), 1): GaussianRational(2),
    (((0, Fraction(-1)),), 2): GaussianRational(-2),
}


@dataclass(frozen=True)
class VonRoosPairCoeffs:
    """``pair = -2 [ f m'^2/m^3 + g m''/m^2 - m'/m^2 dx + dx^2/m ]``."""

    f: Fraction
    g: Fraction
    alpha: Fraction
    beta: Fraction
    form: CanonicalForm

    @property
    def gamma(self):
        return -1 - self.alpha - self.beta

    def __eq__(self, other):
        if not isinstance(other, VonRoosPairCoeffs):
            return NotImplemented
        return (self.f, self.g) == (other.f, other.g)

    def __hash__(self):
        return hash((self.f, self.g))

    def __str__(self):
        return self.form.format(factor=-2)


def vonroos_pair(alpha, beta):
    """Normal-order ``m^a p m^b p m^c + m^c p m^b p m^a`` and read off (f, g).

    ``alpha`` and ``beta`` must be exact rationals; ``gamma = -1 - alpha - beta``.
    The summed form is checked term by term against the four-term template;
    any stray term raises :class:`ConsistencyError`.
    """
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    gamma = -1 - alpha - beta
    form = normal_order(vonroos_word(alpha, beta, gamma)) + normal_order(
        vonroos_word(gamma, beta, alpha)
    )
    found = {(t.mass_word, t.derivative_order): t.coefficient for t in form.terms}
    for key, expected in _FIXED.items():
        if found.pop(key, None) != expected:
            raise ConsistencyError(f"derivative terms of the pair at ({alpha}, {beta}) are wrong")
    f = found.pop(_F_KEY, GaussianRational(0)) * Fraction(-1, 2)
    g = found.pop(_G_KEY, GaussianRational(0)) * Fraction(-1, 2)
    if found:
        raise ConsistencyError(f"unexpected terms in the pair at ({alpha}, {beta}): {found}")
    if not (f.is_real and g.is_real):
        raise ConsistencyError("ambiguity coefficients must be real")
    return VonRoosPairCoeffs(f.re, g.re, alpha, beta, form)


# --------------------------------------------------------------------------
# Recovering the quadratic dependence on (alpha, beta)
# --------------------------------------------------------------------------


class AmbiguityPolynomial(NamedTuple):
    """``const + alpha*a + beta*b + alpha*beta*ab + alpha^2*a2 + beta^2*b2``."""

    const: Fraction
    alpha: Fraction
    beta: Fraction
    alpha_beta: Fraction
    alpha_sq: Fraction
    beta_sq: Fraction

    def __call__(self, a, b):
        return sum(c * m for c, m in zip(self, _monomials(a, b)))


def _monomials(a, b):
    return (Fraction(1), a, b, a * b, a * a, b * b)


def fit_ambiguity_polynomial(samples, coefficient="f"):
    """Interpolate a bivariate quadratic through engine values at ``samples``.

    ``samples`` are (alpha, beta) pairs or objects with ``alpha``/``beta``
    attributes, all exact rationals.  ``coefficient`` selects ``"f"`` or
    ``"g"`` from :func:`vonroos_pair`, or is a callable ``(alpha, beta) ->
    Fraction``.  With more than six samples every one must be interpolated
    exactly, otherwise :class:`ConsistencyError` is raised.
    """
    points = []
    for s in samples:
        a, b = (s.alpha, s.beta) if hasattr(s, "alpha") else s
        points.append((as_fraction(a), as_fraction(b)))
    if len(set(points)) < 6:
        raise DegenerateSampleError("at least 6 distinct samples are needed")
    points = list(dict.fromkeys(points))

    if callable(coefficient):
        value = coefficient
    elif coefficient in ("f", "g"):
        def value(a, b):
            return getattr(vonroos_pair(a, b), coefficient)
    else:
        raise ValueError(f"unknown coefficient {coefficient!r}")

    rows = [list(_monomials(a, b)) + [Fraction(value(a, b))] for a, b in points]
    solution = _solve_exact(rows, 6)
    poly = AmbiguityPolynomial(*solution)
    for (a, b), row in zip(points, rows):
        if poly(a, b) != row[-1]:
            raise ConsistencyError(f"samples are not interpolated by a quadratic at ({a}, {b})")
    return poly


def _solve_exact(rows, ncols):
    """Gauss-Jordan on augmented rows; returns the unique solution."""
    m = [list(r) for r in rows]
    pivot_row = 0
    for col in range(ncols):
        pivot = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            raise DegenerateSampleError(
                "sample set does not determine a quadratic; add samples in general position"
            )
        m[pivot_row], m[pivot] = m[pivot], m[pivot_row]
        pr = m[pivot_row]
        inv = 1 / Fraction(pr[col])
        pr[:] = [x * inv for x in pr]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], pr)]
        pivot_row += 1
    return [m[i][ncols] for i in range(ncols)]
