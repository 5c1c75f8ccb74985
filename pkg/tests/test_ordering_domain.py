from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.integrate import quad

from vonroos import DomainError, OrderingPoint, region

bs = st.floats(min_value=-2 / 3 + 1e-6, max_value=20, allow_nan=False)
exact_bs = st.fractions(min_value=F(-2, 3), max_value=20, max_denominator=1000)


def area_by_integration(b):
    lo, hi = -(1 + b), b / 2
    return quad(lambda a: b / 2 + (1 + b / 2 + a), lo, hi)[0]


def test_valid_regions():
    assert not region(0).is_degenerate
    assert region(F(-2, 3)).is_degenerate
    assert region(-2 / 3).is_degenerate
    with pytest.raises(DomainError):
        region(-1)
    with pytest.raises(DomainError):
        region(F(-2, 3) - F(1, 10**9))


def test_gamma_is_derived():
    p = OrderingPoint(F(-1, 4), F(-1, 2))
    assert p.gamma == F(-1, 4)
    assert p.as_triple() == (F(-1, 4), F(-1, 2), F(-1, 4))


@pytest.mark.parametrize(
    "b, point, inside",
    [
        (0, (F(-1, 2), F(-1, 4)), True),
        (0, (F(-1, 2), F(-3, 4)), False),
        (F(-2, 3), (F(-1, 3), F(-1, 3)), True),
        (F(-2, 3), (F(-1, 3), F(-1, 3) + F(1, 10**12)), False),
        (0, (0, 0), True),
        (0, (F(1, 100), 0), False),
    ],
)
def test_contains(b, point, inside):
    assert region(b).contains(*point) is inside


def test_contains_float_degenerate_center():
    assert region(-2 / 3).contains(-1 / 3, -1 / 3)


@pytest.mark.parametrize(
    "b, expected",
    [
        (0, [(0, 0), (0, -1), (-1, 0)]),
        (F(-2, 3), [(F(-1, 3), F(-1, 3))] * 3),
        (2, [(1, 1), (1, -3), (-3, 1)]),
    ],
)
def test_vertices(b, expected):
    verts = region(b).vertices()
    assert [(v.alpha, v.beta) for v in verts] == expected
    assert all(region(b).contains(v.alpha, v.beta) for v in verts)


@pytest.mark.parametrize("b, area", [(0, F(1, 2)), (F(-2, 3), 0), (2, 8)])
def test_projected_area(b, area):
    assert region(b).projected_area() == area
    assert region(b).projected_area() == pytest.approx(area_by_integration(float(b)), abs=1e-12)


@given(bs, st.floats(0, 1), st.floats(0, 1))
def test_permutation_symmetry(b, u, v):
    # Uniform point in the triangle via the reflection trick on barycentric coordinates.
    if u + v > 1:
        u, v = 1 - u, 1 - v
    r = region(b)
    p0, p1, p2 = (np.array([float(q.alpha), float(q.beta)]) for q in r.vertices())
    a, bb = p0 + u * (p1 - p0) + v * (p2 - p0)
    assert r.contains(a, bb)
    for q in OrderingPoint(a, bb).permutations():
        assert r.contains(q.alpha, q.beta)


@given(bs)
def test_center_always_inside(b):
    assert region(b).contains(-1 / 3, -1 / 3)


@given(exact_bs)
def test_center_always_inside_exact(b):
    assert region(b).contains(F(-1, 3), F(-1, 3))
    assert (region(b).projected_area() == 0) == (b == F(-2, 3))


@given(exact_bs, exact_bs)
def test_area_monotone(b1, b2):
    assume(b1 < b2)
    assert region(b1).projected_area() < region(b2).projected_area()


def test_contains_array_agrees_with_scalar():
    r = region(0.5)
    rng = np.random.default_rng(0)
    a, b = rng.uniform(-2, 1, (2, 500))
    mask = r.contains_array(a, b)
    assert [r.contains(x, y, tol=0) for x, y in zip(a, b)] == mask.tolist()
