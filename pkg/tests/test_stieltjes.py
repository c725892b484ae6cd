import cmath
import fractions
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from baththerm.errors import AsymptoticDivergenceError, BranchCutError, DomainError, InvalidParameterError
from baththerm.model import JMethod
from baththerm.stieltjes import (
    BERNOULLI_TABLE,
    LANCZOS_ERROR,
    LOG_SQRT_2PI,
    bernoulli,
    j_asymptotic,
    j_auto,
    j_continue_left,
    j_evaluate,
    j_lanczos,
    j_loggamma,
    j_quadrature,
    j_regional,
    j_series_small,
    log_gamma,
    zeta,
    zeta_minus_one,
)


def exact_j(z: complex) -> complex:
    with mpmath.workdps(40):
        w = mpmath.mpc(z.real, z.imag)
        value = mpmath.loggamma(w + 1) - mpmath.log(mpmath.sqrt(2 * mpmath.pi)) - (w + 0.5) * mpmath.log(w) + w
        return complex(value)


def close(a: complex, b: complex, tolerance: float) -> bool:
    return abs(a - b) <= tolerance * max(abs(b), 1.0)


def right_half_plane(count: int, seed: int):
    rng = np.random.default_rng(seed)
    return [complex(x, y) for x, y in zip(rng.uniform(0.1, 50.0, count), rng.uniform(-50.0, 50.0, count))]


def left_half_plane(count: int, seed: int):
    rng = np.random.default_rng(seed)
    re = rng.uniform(-10.0, -0.1, count)
    im = rng.uniform(0.1, 10.0, count) * rng.choice([-1.0, 1.0], count)
    return [complex(x, y) for x, y in zip(re, im)]


#--- Routes against each other

def test_routes_agree_in_right_half_plane():
    for z in right_half_plane(200, seed=0):
        quadrature = j_quadrature(z)
        loggamma = j_loggamma(z)
        lanczos = j_lanczos(z)
        assert close(quadrature, loggamma, 1e-9), z
        assert close(quadrature, lanczos, 1e-9), z
        assert close(loggamma, lanczos, 1e-9), z
        assert close(quadrature, exact_j(z), 1e-10), z


def test_lanczos_error_bound():
    for z in right_half_plane(100, seed=1):
        assert abs(j_lanczos(z) - exact_j(z)) <= LANCZOS_ERROR, z


def test_lanczos_needs_open_right_half_plane():
    for z in (0.0, 2j, -2j, -1 + 1j):
        with pytest.raises(DomainError):
            j_lanczos(z)


@pytest.mark.parametrize('z', [1j, -1j, 2j, 0.3j, 12j])
def test_imaginary_axis_uses_continuation(z):
    evaluation = j_evaluate(z)
    assert evaluation.method is JMethod.CONTINUATION
    assert close(evaluation.value, exact_j(z), 1e-12), z
    assert close(j_auto(z), exact_j(z), 1e-12), z


def test_series_small_matches_log_gamma():
    rng = np.random.default_rng(2)
    radius = 0.9 * np.sqrt(rng.uniform(0.01, 1.0, 50))
    angle = rng.uniform(-3.0, 3.0, 50)
    for z in radius * np.exp(1j * angle):
        z = complex(z)
        assert close(j_series_small(z), j_loggamma(z), 1e-10), z
        assert close(j_series_small(z), exact_j(z), 1e-13), z


def test_series_small_partial_sum():
    z = 0.5 + 0.2j
    assert close(j_series_small(z, n_terms=60), exact_j(z), 1e-12)
    # two terms leave the z^3 term out
    assert abs(j_series_small(z, n_terms=2) - exact_j(z)) > 1e-3


def test_asymptotic_within_its_bound():
    rng = np.random.default_rng(3)
    radius = rng.uniform(8.0, 100.0, 50)
    angle = rng.uniform(-1.5, 1.5, 50)
    for z in radius * np.exp(1j * angle):
        z = complex(z)
        value, bound = j_asymptotic(z)
        assert bound < 1e-15
        assert abs(value - exact_j(z)) <= bound + 1e-14, z


def test_asymptotic_explicit_terms():
    value, bound = j_asymptotic(10.0, n_terms=3)
    # 1/12z - 1/360z^3 + 1/1260z^5
    assert value.real == pytest.approx(1 / 120 - 1 / 360e3 + 1 / 1260e5, rel=1e-15)
    assert bound == pytest.approx(1 / 1680e7, rel=1e-12)
    assert abs(value - exact_j(10.0)) <= bound


def test_asymptotic_divergence():
    with pytest.raises(AsymptoticDivergenceError):
        j_asymptotic(1.0, n_terms=11)
    with pytest.raises(InvalidParameterError):
        j_asymptotic(10.0, n_terms=0)
    with pytest.raises(DomainError):
        j_asymptotic(-10.0 + 1j)


def test_continuation_matches_closed_form():
    for w in left_half_plane(50, seed=4):
        assert close(j_continue_left(w), j_loggamma(w), 1e-8), w
        assert close(j_continue_left(w), exact_j(w), 1e-8), w


def test_continuation_rejects_right_half_plane():
    with pytest.raises(DomainError):
        j_continue_left(1 + 1j)
    with pytest.raises(BranchCutError):
        j_continue_left(-2.0)


#--- Regional route

def test_regional_full_precision():
    points = right_half_plane(100, seed=5) + left_half_plane(100, seed=6)
    points += [0.3 + 0.1j, 0.95, 2.0 + 3.0j, 7.9, 8.0, 1j, -0.5 + 0.5j, 3j, -3j]
    for z in points:
        assert close(j_regional(z), exact_j(z), 1e-12), z


@settings(max_examples=100, deadline=None)
@given(
    x=st.floats(min_value=-20.0, max_value=20.0),
    y=st.floats(min_value=0.05, max_value=20.0),
)
def test_conjugation_symmetry(x, y):
    z = complex(x, y)
    assert close(j_regional(z.conjugate()), j_regional(z).conjugate(), 1e-12)


@settings(max_examples=100, deadline=None)
@given(
    x=st.floats(min_value=0.05, max_value=30.0),
    y=st.floats(min_value=-30.0, max_value=30.0),
)
def test_unit_step_recurrence(x, y):
    z = complex(x, y)
    step = (z + 0.5) * cmath.log((z + 1) / z) - 1
    assert close(j_regional(z) - j_regional(z + 1), step, 1e-11)


def test_regional_rejects_cut():
    with pytest.raises(BranchCutError):
        j_regional(-2.0)
    with pytest.raises(BranchCutError):
        j_regional(0.0)


#--- Real axis and the cut

def test_positive_on_positive_real_axis():
    for x in np.geomspace(1e-3, 1e3, 61):
        value = j_regional(float(x))
        assert value.real > 0.0, x
        assert abs(value.imag) <= 1e-15, x


def test_decreasing_beyond_one():
    values = [j_regional(float(x)).real for x in np.geomspace(1.0, 1e3, 60)]
    assert all(np.diff(values) < 0.0)


def test_small_argument_behaviour():
    # J(z) + log sqrt(2 pi) + log(z)/2 = z (1 - euler_gamma - log z) + O(z^2)
    for z in (1e-2, 1e-4, 1e-6, 1e-8):
        remainder = j_series_small(z).real + LOG_SQRT_2PI + 0.5 * math.log(z)
        assert remainder == pytest.approx(z * (1.0 - np.euler_gamma - math.log(z)), abs=z * z + 1e-13), z


def test_either_side_of_the_cut():
    upper = j_regional(-0.5 + 1e-4j)
    lower = j_regional(-0.5 - 1e-4j)
    for value in (upper, lower):
        assert math.isfinite(value.real) and math.isfinite(value.imag)
    assert close(upper, lower.conjugate(), 1e-12)
    assert upper != lower
    assert abs(upper.imag) > 1e-6
    assert close(upper, exact_j(-0.5 + 1e-4j), 1e-12)
    assert close(j_continue_left(-0.5 + 1e-4j), upper, 1e-8)
    assert close(j_continue_left(-0.5 - 1e-4j), lower, 1e-8)


#--- Dispatch

def test_auto_reports_route():
    assert j_evaluate(2 + 1j).method is JMethod.LANCZOS
    assert j_evaluate(-1 + 1j).method is JMethod.CONTINUATION
    assert j_evaluate(-1 + 1j, JMethod.AUTO).value == j_auto(-1 + 1j)


def test_evaluate_by_name():
    assert j_evaluate(1.0, JMethod('loggamma')).value.real == pytest.approx(1.0 - LOG_SQRT_2PI, abs=LANCZOS_ERROR)
    assert j_evaluate(1.0, JMethod.LOG_GAMMA).value.real == pytest.approx(0.081061466795, abs=1e-12 + LANCZOS_ERROR)
    result = j_evaluate(10.0, JMethod.ASYMPTOTIC, n_terms=3)
    assert result.bound is not None
    assert j_evaluate(0.5, JMethod.SERIES_SMALL).bound is None


@pytest.mark.parametrize('name, member', [
    ('loggamma', JMethod.LOG_GAMMA),
    ('log_gamma', JMethod.LOG_GAMMA),
    ('series', JMethod.SERIES_SMALL),
    ('series-small', JMethod.SERIES_SMALL),
    ('AUTO', JMethod.AUTO),
])
def test_method_spellings(name, member):
    assert JMethod(name) is member


def test_domain_errors():
    with pytest.raises(DomainError):
        j_quadrature(-1 + 1j)
    with pytest.raises(DomainError):
        j_series_small(1.5)
    with pytest.raises(DomainError):
        j_regional(complex('nan'))


#--- Special values

def test_bernoulli_table():
    for n, value in BERNOULLI_TABLE.items():
        assert bernoulli(n) == value
    assert bernoulli(24) == fractions.Fraction(-236364091, 2730)
    assert bernoulli(3) == 0


def test_zeta():
    assert zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)
    assert zeta(3) == pytest.approx(1.2020569031595942, rel=1e-15)
    assert zeta(4) == pytest.approx(math.pi ** 4 / 90, rel=1e-15)
    for n in (5, 10, 30, 59):
        assert zeta_minus_one(n) == pytest.approx(float(mpmath.zeta(n) - 1), rel=1e-13)
    assert zeta_minus_one(70) == 2.0 ** -70 + 3.0 ** -70
    with pytest.raises(DomainError):
        zeta(1)


def test_log_gamma():
    for w in [0.5, 1.0, 2.0, 10.5, -0.5 + 2j, -7.3 - 0.4j, 0.2 + 30j]:
        expected = complex(mpmath.loggamma(mpmath.mpc(complex(w).real, complex(w).imag)))
        assert abs(log_gamma(w) - expected) <= LANCZOS_ERROR * 5, w
    with pytest.raises(BranchCutError):
        log_gamma(-3.0)
