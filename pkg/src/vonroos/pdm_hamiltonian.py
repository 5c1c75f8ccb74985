"""Finite-difference Hamiltonians for a 1-D position-dependent mass.

The derivative part of the averaged kinetic operator is

    -1/2 [ -m'/m^2 dx + (1/m) dx^2 ] = -1/2 dx (1/m) dx

so it is discretized in flux form with ``w = 1/m`` taken at cell midpoints.
The ordering enters only through the multiplicative effective potential

    U_eff = -1/2 (eta1 m'^2/m^3 + eta2 m''/m^2),

which lands on the diagonal.  Boundaries are Dirichlet; hbar = 1.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import DomainError, EigenSolverError

__all__ = [
    "Grid",
    "MassProfile",
    "SampledMassProfile",
    "TridiagonalHamiltonian",
    "Spectrum",
    "effective_potential",
    "assemble",
    "eigen",
]


@dataclass(frozen=True)
class Grid:
    """``n`` interior points on ``[x_min, x_max]``; the end points are Dirichlet nodes."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise DomainError(f"need x_max > x_min, got [{self.x_min}, {self.x_max}]")
        if self.n < 3:
            raise DomainError(f"need at least 3 interior points, got {self.n}")

    @property
    def h(self):
        return (self.x_max - self.x_min) / (self.n + 1)

    @property
    def x(self):
        return self.x_min + self.h * np.arange(1, self.n + 1)

    @property
    def nodes(self):
        """All ``n + 2`` points including both boundaries."""
        return self.x_min + self.h * np.arange(self.n + 2)

    @property
    def midpoints(self):
        return self.x_min + self.h * (np.arange(self.n + 1) + 0.5)


@dataclass(frozen=True)
class MassProfile:
    """Analytic mass ``m(x)`` with its first two derivatives."""

    m: object
    dm: object
    d2m: object
    name: str = "custom"

    @classmethod
    def constant(cls, m0=1.0):
        return cls(
            lambda x: np.full_like(np.asarray(x, dtype=float), m0),
            lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            lambda x: np.zeros_like(np.asarray(x, dtype=float)),
            f"constant(m0={m0})",
        )

    @classmethod
    def exponential(cls, m0=1.0, kappa=1.0):
        """``m0 exp(kappa x)``."""

        def m(x):
            return m0 * np.exp(kappa * np.asarray(x, dtype=float))

        return cls(m, lambda x: kappa * m(x), lambda x: kappa**2 * m(x),
                   f"exponential(m0={m0}, kappa={kappa})")

    @classmethod
    def rational(cls, m0=1.0, lam=1.0):
        """``m0 / (1 + lam x^2)``."""

        def m(x):
            x = np.asarray(x, dtype=float)
            return m0 / (1 + lam * x * x)

        def dm(x):
            x = np.asarray(x, dtype=float)
            return -2 * m0 * lam * x / (1 + lam * x * x) ** 2

        def d2m(x):
            x = np.asarray(x, dtype=float)
            u = 1 + lam * x * x
            return m0 * lam * (6 * lam * x * x - 2) / u**3

        return cls(m, dm, d2m, f"rational(m0={m0}, lam={lam})")

    def inverse_mass_at_midpoints(self, grid):
        return 1 / self.m(grid.midpoints)


class SampledMassProfile(MassProfile):
    """Mass given by samples on ``grid.nodes``; derivatives by central differences.

    Midpoint values of ``1/m`` are averages of the two neighbouring samples.
    Evaluating away from the sample points interpolates linearly.
    """

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n + 2,):
            raise ValueError(f"expected {grid.n + 2} samples including boundaries")
        nodes = grid.nodes
        dm = np.gradient(values, grid.h, edge_order=2)
        d2m = np.gradient(dm, grid.h, edge_order=2)
        d2m[1:-1] = (values[2:] - 2 * values[1:-1] + values[:-2]) / grid.h**2
        object.__setattr__(self, "m", lambda x: np.interp(x, nodes, values))
        object.__setattr__(self, "dm", lambda x: np.interp(x, nodes, dm))
        object.__setattr__(self, "d2m", lambda x: np.interp(x, nodes, d2m))
        object.__setattr__(self, "name", "sampled")
        object.__setattr__(self, "_grid", grid)
        object.__setattr__(self, "_values", values)

    def inverse_mass_at_midpoints(self, grid):
        if grid != self._grid:
            return super().inverse_mass_at_midpoints(grid)
        w = 1 / self._values
        return (w[1:] + w[:-1]) / 2


def effective_potential(profile, coeffs, x):
    """``-1/2 (eta1 m'^2/m^3 + eta2 m''/m^2)`` at ``x`` (scalar or array)."""
    x = np.asarray(x, dtype=float)
    m = profile.m(x)
    if np.any(m <= 0):
        bad = np.broadcast_to(x, np.shape(m))[np.asarray(m <= 0)]
        raise DomainError(f"mass must be positive, m <= 0 at x = {bad.ravel()[0]}")
    eta1, eta2 = float(coeffs.eta1), float(coeffs.eta2)
    dm, d2m = profile.dm(x), profile.d2m(x)
    u = -0.5 * (eta1 * dm**2 / m**3 + eta2 * d2m / m**2)
    return float(u) if u.ndim == 0 else u


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: Grid

    def to_dense(self):
        return (
            np.diag(self.diagonal)
            + np.diag(self.off_diagonal, 1)
            + np.diag(self.off_diagonal, -1)
        )


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = None


def assemble(grid, profile, potential, coeffs):
    """Symmetric tridiagonal matrix of ``T + V`` on ``grid``.

    ``potential`` is a callable of x (or None for V = 0).
    """
    w = profile.inverse_mass_at_midpoints(grid)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise DomainError("mass must be positive and finite at every midpoint")
    x = grid.x
    h2 = grid.h**2
    u_eff = effective_potential(profile, coeffs, x)
    if potential is None:
        v = np.zeros_like(x)
    else:
        with np.errstate(all="ignore"):
            v = np.broadcast_to(np.asarray(potential(x), dtype=float), x.shape)
    if not np.all(np.isfinite(v)):
        bad = x[~np.isfinite(v)][0]
        raise DomainError(f"potential is not finite at x = {bad}")
    diagonal = (w[1:] + w[:-1]) / (2 * h2) + u_eff + v
    off_diagonal = -w[1:-1] / (2 * h2)
    if not np.all(np.isfinite(diagonal)):
        raise DomainError("assembled diagonal is not finite")
    return TridiagonalHamiltonian(diagonal, off_diagonal, grid)


def eigen(hamiltonian, k, vectors=False):
    """Lowest ``k`` eigenvalues (ascending), optionally with eigenvectors.

    Eigenvalues only use LAPACK bisection on Sturm sequences (``stebz``);
    eigenvectors use ``stemr``.  Vectors are normalized so that
    ``h * sum(psi**2) = 1``.
    """
    n = hamiltonian.grid.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    try:
        if vectors:
            values, vecs = eigh_tridiagonal(
                hamiltonian.diagonal,
                hamiltonian.off_diagonal,
                select="i",
                select_range=(0, k - 1),
                lapack_driver="stemr",
            )
            vecs = vecs / np.sqrt(hamiltonian.grid.h)
        else:
            values = eigh_tridiagonal(
                hamiltonian.diagonal,
                hamiltonian.off_diagonal,
                eigvals_only=True,
                select="i",
                select_range=(0, k - 1),
                lapack_driver="stebz",
            )
            vecs = None
    except LinAlgError as exc:
        raise EigenSolverError(f"tridiagonal eigensolver failed: {exc}") from exc
    return Spectrum(np.asarray(values), vecs)
