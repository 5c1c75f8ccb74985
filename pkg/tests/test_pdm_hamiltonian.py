import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vonroos import (
    DomainError,
    Grid,
    KineticCoefficients,
    MassProfile,
    SampledMassProfile,
    assemble,
    coefficients_discrete,
    effective_potential,
    eigen,
)
from vonroos.operator_algebra import vonroos_pair
from vonroos.weight_model import KNOWN_ORDERINGS


def coeffs_for(name):
    a, b = KNOWN_ORDERINGS[name]
    return coefficients_discrete([(a, b, 1)])


CENTER = KineticCoefficients(F(5, 9), F(-1, 3), 0)
ZERO = KineticCoefficients(0, 0, 0)
etas = st.floats(-3, 3, allow_nan=False)


def test_grid_geometry():
    g = Grid(0.0, 4.0, 3)
    assert g.h == 1.0
    assert g.x.tolist() == [1.0, 2.0, 3.0]
    assert g.nodes.tolist() == [0.0, 1.0, 2.0, 3.0, 4.0]
    assert g.midpoints.tolist() == [0.5, 1.5, 2.5, 3.5]


@pytest.mark.parametrize("args", [(1.0, 0.0, 10), (0.0, 0.0, 10), (0.0, 1.0, 2)])
def test_grid_rejects_invalid(args):
    with pytest.raises(DomainError):
        Grid(*args)


def test_three_point_stencil():
    g = Grid(0.0, 4 * 0.25, 3)
    h = assemble(g, MassProfile.constant(1.0), None, CENTER)
    assert h.diagonal.tolist() == [1 / g.h**2] * 3
    assert h.off_diagonal.tolist() == [-1 / (2 * g.h**2)] * 2
    dense = h.to_dense()
    assert np.array_equal(dense, dense.T)


def test_named_orderings_give_expected_pair_sums():
    sums = {name: coeffs_for(name).eta1 + coeffs_for(name).eta2 for name in KNOWN_ORDERINGS}
    assert sums["gora_williams"] == F(1, 2)
    assert sums["zhu_kroemer"] == F(1, 4)
    assert sums["li_kuhn"] == F(1, 4)
    assert coeffs_for("bendaniel_duke").eta1 == coeffs_for("bendaniel_duke").eta2 == 0


@given(etas, etas, st.floats(-5, 5))
def test_constant_mass_has_no_effective_potential(e1, e2, x):
    assert effective_potential(MassProfile.constant(2.5), KineticCoefficients(e1, e2, 1), x) == 0


@pytest.mark.parametrize("profile", [MassProfile.exponential(1.3, 0.7), MassProfile.rational(2.0, 0.4)])
def test_bendaniel_duke_has_no_effective_potential(profile):
    x = np.linspace(-3, 3, 41)
    assert np.all(effective_potential(profile, coeffs_for("bendaniel_duke"), x) == 0)


@settings(deadline=None)
@given(etas, etas, st.floats(0.1, 3), st.floats(-2, 2), st.floats(-4, 4))
def test_exponential_closed_form(e1, e2, m0, kappa, x):
    profile = MassProfile.exponential(m0, kappa)
    u = effective_potential(profile, KineticCoefficients(e1, e2, 1), x)
    expected = -(kappa**2) * (e1 + e2) / (2 * m0 * math.exp(kappa * x))
    assert u == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_rational_profile_derivatives_by_finite_differences():
    p = MassProfile.rational(1.7, 0.6)
    x = np.linspace(-3, 3, 25)
    d = 1e-5
    assert p.dm(x) == pytest.approx((p.m(x + d) - p.m(x - d)) / (2 * d), abs=1e-8)
    assert p.d2m(x) == pytest.approx((p.dm(x + d) - p.dm(x - d)) / (2 * d), abs=1e-8)


def test_non_positive_mass_rejected():
    bad = MassProfile(lambda x: 1 - np.asarray(x, dtype=float), lambda x: -np.ones_like(x),
                      lambda x: np.zeros_like(x))
    with pytest.raises(DomainError, match="positive"):
        effective_potential(bad, CENTER, 2.0)
    with pytest.raises(DomainError):
        assemble(Grid(0.0, 3.0, 10), bad, None, CENTER)


def test_non_finite_potential_rejected():
    with pytest.raises(DomainError, match="potential"):
        assemble(Grid(-1.0, 1.0, 9), MassProfile.constant(), lambda x: 1 / x, CENTER)


def test_only_diagonal_depends_on_coefficients():
    g = Grid(-2.0, 2.0, 50)
    p = MassProfile.exponential(1.0, 0.8)
    gw = assemble(g, p, lambda x: x**2, coeffs_for("gora_williams"))
    zk = assemble(g, p, lambda x: x**2, coeffs_for("zhu_kroemer"))
    bdd = assemble(g, p, lambda x: x**2, coeffs_for("bendaniel_duke"))
    assert np.array_equal(gw.off_diagonal, zk.off_diagonal)
    # U_eff is proportional to eta1 + eta2 for exponential mass: 1/2 versus 1/4.
    ratio = (gw.diagonal - bdd.diagonal) / (zk.diagonal - bdd.diagonal)
    assert ratio == pytest.approx(np.full(g.n, 2.0), rel=1e-9)


def test_particle_in_a_box():
    g = Grid(0.0, math.pi, 2000)
    spectrum = eigen(assemble(g, MassProfile.constant(), None, CENTER), 3)
    assert spectrum.eigenvalues == pytest.approx([0.5, 2.0, 4.5], rel=1e-3)
    assert np.all(np.diff(spectrum.eigenvalues) > 0)


def test_harmonic_oscillator():
    g = Grid(-12.0, 12.0, 3000)
    spectrum = eigen(assemble(g, MassProfile.constant(), lambda x: x**2 / 2, CENTER), 3)
    assert spectrum.eigenvalues == pytest.approx([0.5, 1.5, 2.5], abs=1e-4)


def test_constant_mass_spectra_identical_across_coefficients():
    g = Grid(-6.0, 6.0, 400)
    a = eigen(assemble(g, MassProfile.constant(1.4), lambda x: x**2 / 2, CENTER), 5)
    b = eigen(assemble(g, MassProfile.constant(1.4), lambda x: x**2 / 2, coeffs_for("li_kuhn")), 5)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)


def test_second_order_convergence():
    errors = []
    for n in (99, 199, 399):
        g = Grid(0.0, math.pi, n)
        e1 = eigen(assemble(g, MassProfile.constant(), None, ZERO), 1).eigenvalues[0]
        errors.append(abs(e1 - 0.5))
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
    assert orders == pytest.approx([2.0, 2.0], abs=0.2)


def test_eigenvectors_normalized_on_grid():
    g = Grid(-8.0, 8.0, 500)
    spectrum = eigen(assemble(g, MassProfile.rational(1.0, 0.2), lambda x: x**2 / 2, CENTER), 4, vectors=True)
    gram = g.h * spectrum.eigenvectors.T @ spectrum.eigenvectors
    assert gram == pytest.approx(np.eye(4), abs=1e-10)


def test_eigen_k_range():
    h = assemble(Grid(0.0, 1.0, 5), MassProfile.constant(), None, CENTER)
    with pytest.raises(ValueError):
        eigen(h, 0)
    with pytest.raises(ValueError):
        eigen(h, 6)
    assert len(eigen(h, 5).eigenvalues) == 5


def test_sampled_profile_matches_analytic():
    g = Grid(-2.0, 2.0, 400)
    analytic = MassProfile.exponential(1.0, 0.5)
    sampled = SampledMassProfile(g, analytic.m(g.nodes))
    u_a = effective_potential(analytic, CENTER, g.x)
    u_s = effective_potential(sampled, CENTER, g.x)
    assert u_s == pytest.approx(u_a, rel=1e-4)
    ea = eigen(assemble(g, analytic, lambda x: x**2, CENTER), 3).eigenvalues
    es = eigen(assemble(g, sampled, lambda x: x**2, CENTER), 3).eigenvalues
    assert es == pytest.approx(ea, rel=1e-4)
    with pytest.raises(ValueError):
        SampledMassProfile(g, np.ones(g.n))


def test_pair_coefficients_feed_effective_potential():
    pair = vonroos_pair(F(-1, 2), 0)
    c = KineticCoefficients(pair.f, pair.g, 1)
    u = effective_potential(MassProfile.exponential(1.0, 1.0), c, 0.0)
    assert u == pytest.approx(-0.5 * (0.75 - 0.5))
