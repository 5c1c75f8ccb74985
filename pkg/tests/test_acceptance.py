"""Acceptance criteria 1-9, one test per criterion.

Each test records a PASS/FAIL line that is printed in the
"acceptance criteria" section of the pytest terminal summary.
"""

import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from vonroos import (
    ExpressionWeight,
    Grid,
    KineticCoefficients,
    LorentzSum,
    MassProfile,
    Uniform,
    assemble,
    coefficients_continuous,
    coefficients_discrete,
    eigen,
    fit_ambiguity_polynomial,
    lorentz_discrepancy_report,
    lorentz_limit,
    mc_estimate,
    preset_orderings,
    region,
    uniform_closed_form,
    vonroos_pair,
)
from vonroos.weight_model import DiscreteWeight

MC_SEED = 20240601


def random_rationals(seed, count):
    rng = random.Random(seed)
    return [
        (F(rng.randint(-60, 60), rng.randint(1, 12)), F(rng.randint(-60, 60), rng.randint(1, 12)))
        for _ in range(count)
    ]


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.mark.criterion("AC1 ambiguity polynomials recovered exactly by fitting")
def test_ac1_fit(criterion):
    with Clock() as clock:
        points = random_rationals(1, 10)
        f = fit_ambiguity_polynomial(points, coefficient="f")
        g = fit_ambiguity_polynomial(points, coefficient="g")
    criterion["detail"] = f"f={tuple(map(str, f))} g={tuple(map(str, g))} {clock.elapsed:.2f}s"
    assert tuple(f) == (1, 1, 1, 1, 1, 0)
    assert tuple(g) == (F(-1, 2), 0, F(-1, 2), 0, 0, 0)
    assert all(isinstance(c, F) for c in (*f, *g))
    assert clock.elapsed < 1


@pytest.mark.criterion("AC2 alpha/gamma exchange symmetry on 100 rational points")
def test_ac2_symmetry(criterion):
    with Clock() as clock:
        mismatches = [
            (a, b) for a, b in random_rationals(2, 100)
            if vonroos_pair(a, b) != vonroos_pair(-1 - a - b, b)
        ]
    criterion["detail"] = f"{len(mismatches)} mismatches, {clock.elapsed:.2f}s"
    assert mismatches == []
    assert clock.elapsed < 1


@pytest.mark.criterion("AC3 uniform weight: quadrature matches closed form to 1e-10")
def test_ac3_uniform(criterion):
    bs = [-0.6, -1 / 3, 0, 0.5, 1, 2, 4]
    with Clock() as clock:
        errors = []
        for b in bs:
            got = coefficients_continuous(b, Uniform())
            ref = uniform_closed_form(b)
            errors.append(max(abs(got.eta1 - float(ref.eta1)), abs(got.eta2 - float(ref.eta2))))
    criterion["detail"] = f"max error {max(errors):.2e}, {clock.elapsed:.2f}s"
    assert max(errors) < 1e-10
    assert clock.elapsed < 5


@pytest.mark.criterion("AC4 reported point values")
def test_ac4_point_values(criterion):
    with Clock() as clock:
        center = F(5, 9), F(-1, 3)
        point_uniform = tuple(coefficients_continuous(F(-2, 3), Uniform()))
        point_lorentz = tuple(coefficients_continuous(F(-2, 3), LorentzSum()))
        limit = lorentz_limit()
        uni = coefficients_continuous(0, Uniform())
        lor = coefficients_continuous(0, LorentzSum())
    criterion["detail"] = (
        f"lorentz b=0: eta1={lor.eta1:.7f} (|d|={abs(lor.eta1 - 0.58966):.1e}), "
        f"eta2={lor.eta2:.7f} (|d|={abs(lor.eta2 + 0.33746):.1e}); tol 5e-5"
    )
    assert point_uniform == center
    assert point_lorentz == center
    assert tuple(limit) == center
    assert uni.eta1 == pytest.approx(7 / 12, abs=1e-10)
    assert uni.eta2 == pytest.approx(-1 / 3, abs=1e-10)
    assert clock.elapsed < 5
    assert lor.eta1 == pytest.approx(0.58966, abs=5e-5)
    assert lor.eta2 == pytest.approx(-0.33746, abs=5e-5)


@pytest.mark.criterion("AC5 Lorentzian closed forms vs quadrature, with discrepancy report")
def test_ac5_lorentz_closed_forms(criterion):
    with Clock() as clock:
        report = lorentz_discrepancy_report((-0.5, 0, 1, 3), tol=1e-8)
    worst = max(max(r.error("corrected")) for r in report.rows)
    criterion["detail"] = (
        f"corrected max error {worst:.1e}; printed eta2 disagrees at "
        f"{len(report.mismatches('printed'))}/4 b values (reported)"
    )
    print(report)
    assert report.agrees("corrected")
    # As printed, the eta2 expression is off; the report must say so rather than hide it.
    assert report.mismatches("printed")
    assert "sign" in str(report)
    assert clock.elapsed < 5


@pytest.mark.criterion("AC6 five named orderings: exact discrete coefficients")
def test_ac6_discrete(criterion):
    with Clock() as clock:
        weight = preset_orderings()
        c = coefficients_discrete(weight)
    criterion["detail"] = f"({c.eta1}, {c.eta2}), total {c.total_weight}"
    assert (c.eta1, c.eta2) == (F(43, 80), F(-3, 10))
    assert c.total_weight == 5 == weight.total
    assert clock.elapsed < 0.1


@pytest.mark.criterion("AC7 Monte Carlo oracle within 3 standard errors")
def test_ac7_monte_carlo(criterion):
    with Clock() as clock:
        est = mc_estimate(region(0), Uniform(), 10**6, MC_SEED)
    z1 = (est.eta1 - 7 / 12) / est.stderr1
    z2 = (est.eta2 + 1 / 3) / est.stderr2
    criterion["detail"] = f"z1={z1:+.2f} z2={z2:+.2f} seed={MC_SEED} {clock.elapsed:.2f}s"
    assert est.n == 10**6
    assert abs(z1) < 3 and abs(z2) < 3
    assert clock.elapsed < 10


@pytest.mark.criterion("AC8 spectral sanity")
def test_ac8_spectra(criterion):
    center = KineticCoefficients(F(5, 9), F(-1, 3), 0)
    other = coefficients_discrete([(-1, 0, 1)])
    unit = MassProfile.constant(1.0)
    with Clock() as clock:
        box = eigen(assemble(Grid(0.0, math.pi, 2000), unit, None, center), 3).eigenvalues
        ho_grid = Grid(-12.0, 12.0, 3000)
        ho = eigen(assemble(ho_grid, unit, lambda x: x**2 / 2, center), 3).eigenvalues
        ho_other = eigen(assemble(ho_grid, unit, lambda x: x**2 / 2, other), 3).eigenvalues
        errors = []
        for n in (199, 399, 799):
            e1 = eigen(assemble(Grid(0.0, math.pi, n), unit, None, center), 1).eigenvalues[0]
            errors.append(abs(e1 - 0.5))
        orders = [math.log2(errors[i] / errors[i + 1]) for i in range(2)]
    box_rel = np.abs(box - [0.5, 2.0, 4.5]) / [0.5, 2.0, 4.5]
    ho_abs = np.abs(ho - [0.5, 1.5, 2.5])
    criterion["detail"] = (
        f"box rel {box_rel.max():.1e}, oscillator abs {ho_abs.max():.1e}, "
        f"orders {orders[0]:.3f}/{orders[1]:.3f}, {clock.elapsed:.2f}s"
    )
    assert np.all(box_rel < 1e-3)
    assert np.all(ho_abs < 1e-4)
    assert np.array_equal(ho, ho_other)
    assert all(abs(p - 2.0) <= 0.2 for p in orders)
    assert clock.elapsed < 30


@pytest.mark.criterion("AC9 normalization invariance under weight scaling")
def test_ac9_scale_invariance(criterion):
    with Clock() as clock:
        base = preset_orderings()
        drift_exact = []
        for k in (F(1, 7), 3, F(1000, 3)):
            scaled = DiscreteWeight(tuple((e.alpha, e.beta, e.c * k) for e in base.entries))
            drift_exact.append(tuple(coefficients_discrete(scaled)) != tuple(coefficients_discrete(base)))
        drift = 0.0
        for b in (-0.5, 0, 2):
            ref = coefficients_continuous(b, LorentzSum())
            for k in ("0.001", "3.7", "250"):
                w = ExpressionWeight.from_text(f"{k}*(1/(alpha^2+1) + 1/(beta^2+1))")
                got = coefficients_continuous(b, w)
                drift = max(drift, abs(got.eta1 - ref.eta1), abs(got.eta2 - ref.eta2))
    criterion["detail"] = f"discrete exact, quadrature drift {drift:.1e}, {clock.elapsed:.2f}s"
    assert not any(drift_exact)
    assert drift <= 1e-12
    assert clock.elapsed < 1
