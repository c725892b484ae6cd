"""
Thermodynamic functions of the oscillator.

Everything here works in reduced units: hbar = k = 1, frequencies in units
of omega0 and theta = kT / (hbar omega0). F and U come out in units of
hbar omega0, S and C in units of k. Baths given in other units are reduced
first.

Two exact routes give the free energy,

    F = theta [J(Omega/2pi theta) - J(Omega'/2pi theta) - J(z1/2pi theta) - J(z1*/2pi theta)]

and the spectral integral it came from. Entropy and heat capacity of the
exact routes are logarithmic derivatives taken numerically. The series
routes are the closed low and high temperature expansions.
"""

from __future__ import annotations

import math
import typing

from ._auto import auto
from .baths import canonicalize, free_energy_integrand, omega1_arccos, roots
from .errors import DivergenceError, DomainError, InvalidParameterError, PrecisionError
from .model import (
    BathSpec,
    CanonicalBath,
    ExpansionSpec,
    JMethod,
    QuadratureSpec,
    TemperatureRegime,
    ThermoMethod,
    ThermoPoint,
)
from .quadrature import integrate_semi_infinite
from .stieltjes import EULER_GAMMA, j_evaluate, zeta
from .util import log1mexp, reciprocal


__all__ = [
    'free_energy_exact',
    'free_energy_quadrature',
    'thermo_point',
    'uncoupled_point',
    'ohmic_low_T',
    'ohmic_high_T',
    'printed_high_T_terms',
    'qed_low_T',
    'qed_high_T',
    'qed_high_T_consistent',
    'srt_correction',
    'cutoff_corrected_free_energy',
    'series_point',
    'zero_point',
    'zero_point_quadrature',
    'zero_point_ohmic_asymptotic',
    'DEFAULT_TERMS',
]


_EPS = 2.220446049250313e-16
_PI = math.pi

_STEP = 1e-3
_OUTER_STEP = 1e-2

# below this reduced gamma the resonance is narrower than the quadrature can resolve;
# the uncoupled oscillator is then within O(gamma)
_WEAK_COUPLING = 1e-8

DEFAULT_TERMS: typing.Mapping[tuple[str, TemperatureRegime], int] = {
    ('ohmic', TemperatureRegime.LOW_T): 3,
    ('srt', TemperatureRegime.LOW_T): 3,
    ('qed', TemperatureRegime.LOW_T): 2,
    ('ohmic', TemperatureRegime.HIGH_T): 6,
    ('srt', TemperatureRegime.HIGH_T): 6,
    ('qed', TemperatureRegime.HIGH_T): 2,
}


def _check_theta(theta: float) -> None:
    if not (math.isfinite(theta) and theta > 0.0):
        raise DomainError(f'theta must be positive and finite, got {theta!r}; use zero_point for theta = 0')


#--- Exact routes

def _free_energy_j(bath: CanonicalBath, theta: float, method: JMethod) -> tuple[float, float]:
    """F and the magnitude of the terms it was summed from."""
    _check_theta(theta)
    bath = bath.reduced()
    pair = roots(1.0, bath.gamma)
    scale = 2.0 * _PI * theta

    arguments = [(-1.0, pair.z1 / scale), (-1.0, pair.z1_conj / scale)]
    if math.isfinite(bath.omega):
        arguments.append((1.0, complex(bath.omega / scale)))
    if math.isfinite(bath.omega_prime):
        arguments.append((-1.0, complex(bath.omega_prime / scale)))

    for _, z in arguments:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise PrecisionError(
                f'J argument overflows at theta = {theta!r}; use the low temperature series'
            )

    values = [sign * j_evaluate(z, method).value for sign, z in arguments]
    total = complex(
        math.fsum(v.real for v in values),
        math.fsum(v.imag for v in values),
    )
    magnitude = math.fsum(abs(v) for v in values)

    residue = 1e-12 * max(1.0, magnitude)
    if method is JMethod.QUADRATURE:
        residue = 10.0 * QuadratureSpec().relative_tolerance * max(1.0, magnitude)
    if abs(total.imag) > residue:
        raise PrecisionError(f'free energy has imaginary part {total.imag!r} at theta = {theta!r}')

    return theta * total.real, theta * magnitude


def free_energy_exact(bath: CanonicalBath, theta: float, /, *, method: JMethod = JMethod.REGIONAL) -> float:
    """Free energy from the J-function combination; zero-point term omitted."""
    value, _ = _free_energy_j(bath, theta, method)
    return value


def _breakpoints(bath: CanonicalBath, theta: float) -> list[float]:
    pair = roots(1.0, bath.gamma)
    points = [theta, 1.0, bath.gamma, abs(pair.z1), abs(pair.z1_conj), bath.omega, bath.omega_prime]
    if bath.gamma < 2.0:
        points += [1.0 - 0.5 * bath.gamma, 1.0 + 0.5 * bath.gamma]
    return [p for p in points if math.isfinite(p) and p > 0.0]


def _zero_point_check(bath: CanonicalBath) -> None:
    if bath.is_ohmic:
        raise DivergenceError(
            'zero-point energy diverges logarithmically for the Ohmic model; '
            'use zero_point_ohmic_asymptotic with a finite relaxation time',
            model='ohmic',
        )
    if math.isinf(bath.omega_prime) or not math.isclose(bath.omega, bath.omega_prime + bath.gamma, rel_tol=1e-12):
        raise DivergenceError(
            'zero-point energy diverges for the QED model, whatever the cutoff',
            model='qed',
        )


def free_energy_quadrature(
    bath: CanonicalBath,
    theta: float,
    /,
    *,
    spec: QuadratureSpec | None = None,
    zero_point: bool = False,
) -> float:
    """Free energy by quadrature of the spectral integral.

    With ``zero_point`` the single-oscillator free energy includes hbar omega/2.
    Below a reduced gamma of 1e-8 the uncoupled oscillator is returned.
    """
    np = auto.np
    _check_theta(theta)
    bath = bath.reduced()
    if zero_point:
        _zero_point_check(bath)

    if bath.gamma < _WEAK_COUPLING:
        log = auto.structlog.get_logger(__name__)
        log.debug('weak coupling, uncoupled free energy used', gamma=bath.gamma, theta=theta)
        return uncoupled_point(theta).F + (0.5 if zero_point else 0.0)
    if spec is None:
        spec = QuadratureSpec()

    def integrand(omega):
        f = theta * log1mexp(omega / theta)
        if zero_point:
            f = f + 0.5 * omega
        return f * free_energy_integrand(bath, omega) / np.pi

    return integrate_semi_infinite(integrand, spec, breakpoints=_breakpoints(bath, theta)).value


def _log_derivative(function: typing.Callable[[float], float], u: float, h: float) -> float:
    # d/du by central differences, one Richardson level
    def central(step: float) -> float:
        return (function(u + step) - function(u - step)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def thermo_point(
    bath: CanonicalBath,
    theta: float,
    /,
    *,
    method: ThermoMethod = ThermoMethod.EXACT_J,
    j_method: JMethod = JMethod.REGIONAL,
    spec: QuadratureSpec | None = None,
) -> ThermoPoint:
    """F, S, U and C from an exact free-energy route.

    S = -dF/dtheta and C = theta dS/dtheta are taken in u = log theta with
    central differences and one Richardson level (steps 1e-3 and 1e-2).
    """
    _check_theta(theta)

    match method:
        case ThermoMethod.EXACT_J:
            def measured(t: float) -> tuple[float, float]:
                return _free_energy_j(bath, t, j_method)
        case ThermoMethod.EXACT_QUADRATURE:
            def measured(t: float) -> tuple[float, float]:
                value = free_energy_quadrature(bath, t, spec=spec)
                return value, abs(value)
        case _:
            raise InvalidParameterError(f'thermo_point computes exact routes only, not {method.value!r}')

    def free_energy(u: float) -> float:
        return measured(math.exp(u))[0]

    def entropy(u: float) -> float:
        return -_log_derivative(free_energy, u, _STEP) / math.exp(u)

    u = math.log(theta)
    F, magnitude = measured(theta)

    spread = abs(free_energy(u + _STEP) - free_energy(u - _STEP))
    if spread <= 1e6 * _EPS * magnitude:
        raise PrecisionError(
            f'free energy differences at theta = {theta!r} are below rounding '
            f'({spread!r} against magnitude {magnitude!r}); use the low temperature series'
        )

    S = entropy(u)
    C = _log_derivative(entropy, u, _OUTER_STEP)
    return ThermoPoint(theta=theta, F=F, S=S, U=F + theta * S, C=C, method=method)


def uncoupled_point(theta: float, /) -> ThermoPoint:
    """Closed forms for the free oscillator, theta log(1 - e^{-1/theta}) and its derivatives."""
    _check_theta(theta)
    x = 1.0 / theta
    occupation = 1.0 / math.expm1(x) if x < 700.0 else math.exp(-x)
    F = theta * log1mexp(x)
    S = -log1mexp(x) + x * occupation
    C = x * x * occupation * (1.0 + occupation)
    return ThermoPoint(theta=theta, F=F, S=S, U=occupation, C=C, method=ThermoMethod.UNCOUPLED)


#--- Series routes

def _check_terms(n_terms: int, limit: int, name: str) -> None:
    if not 0 <= n_terms <= limit:
        raise InvalidParameterError(f'{name} has {limit} printed orders; n_terms must lie in 0..{limit}, got {n_terms!r}')


def _low_T_orders(theta: float, gamma: float) -> list[tuple[float, float, float, float]]:
    # (F, S, U, C) contributions of theta^2, theta^4, theta^6
    g2 = gamma * gamma
    a = [
        _PI * gamma / 6.0,
        _PI ** 3 * gamma * (3.0 - g2) / 45.0,
        8.0 * _PI ** 5 * gamma * (5.0 - 5.0 * g2 + g2 * g2) / 315.0,
    ]
    orders = []
    for k, coefficient in enumerate(a, start=1):
        power = 2 * k
        term = coefficient * theta ** power
        # F = -a t^p, S = p a t^(p-1), U = (p - 1) a t^p, C = p (p - 1) a t^(p-1)
        orders.append((
            -term,
            power * term / theta,
            (power - 1) * term,
            power * (power - 1) * term / theta,
        ))
    return orders


def _summed(theta: float, orders: typing.Iterable[tuple[float, float, float, float]], method: ThermoMethod) -> ThermoPoint:
    columns = list(zip(*orders)) or [(), (), (), ()]
    F, S, U, C = (math.fsum(column) for column in columns)
    return ThermoPoint(theta=theta, F=F, S=S, U=U, C=C, method=method)


def ohmic_low_T(theta: float, gamma: float, /, n_terms: int = 3) -> ThermoPoint:
    _check_theta(theta)
    _check_terms(n_terms, 3, 'the Ohmic low temperature series')
    return _summed(theta, _low_T_orders(theta, gamma)[:n_terms], ThermoMethod.LOW_T_SERIES)


def qed_low_T(theta: float, gamma: float, /, n_terms: int = 2) -> ThermoPoint:
    """The Ohmic low temperature series without its theta^2 order."""
    _check_theta(theta)
    _check_terms(n_terms, 2, 'the QED low temperature series')
    return _summed(theta, _low_T_orders(theta, gamma)[1:1 + n_terms], ThermoMethod.LOW_T_SERIES)


def ohmic_high_T(theta: float, gamma: float, /, n_terms: int = 6) -> ThermoPoint:
    """High temperature series of the Ohmic bath, orders theta^{1-n} for n = 2..n_terms+1.

    The n-th order carries a_n = (-1)^n zeta(n)/n (2 pi)^{-n} T_n(gamma/2)
    with T_n the Chebyshev polynomial, which continues cos(n arccos x)
    past x = 1 for the overdamped bath.
    """
    np = auto.np
    _check_theta(theta)
    if n_terms < 0:
        raise InvalidParameterError(f'n_terms must be non-negative, got {n_terms!r}')

    x = 0.5 * gamma
    A = omega1_arccos(1.0, gamma)
    log_theta = math.log(theta)
    log_2pi_theta = math.log(2.0 * _PI * theta)

    F = [-theta * log_theta, -gamma / (2.0 * _PI) * log_2pi_theta, -A / _PI, -gamma / (2.0 * _PI) * (1.0 - EULER_GAMMA)]
    S = [log_theta, 1.0, gamma / (2.0 * _PI * theta)]
    U = [theta, -gamma / (2.0 * _PI) * (log_2pi_theta - EULER_GAMMA), -A / _PI]
    C = [1.0, -gamma / (2.0 * _PI * theta)]

    for n in range(2, n_terms + 2):
        chebyshev = float(np.polynomial.chebyshev.chebval(x, [0.0] * n + [1.0]))
        a = (-1) ** n * zeta(n) / n * (2.0 * _PI * theta) ** -n * chebyshev
        F.append(-2.0 * theta * a)
        S.append(-2.0 * (n - 1) * a)
        U.append(-2.0 * theta * n * a)
        C.append(2.0 * n * (n - 1) * a)

    return ThermoPoint(
        theta=theta,
        F=math.fsum(F),
        S=math.fsum(S),
        U=math.fsum(U),
        C=math.fsum(C),
        method=ThermoMethod.HIGH_T_SERIES,
    )


def printed_high_T_terms(theta: float, gamma: float, /) -> ThermoPoint:
    """The explicit high temperature truncations through theta^{-2} in F."""
    _check_theta(theta)
    A = omega1_arccos(1.0, gamma)
    g = gamma
    z3 = zeta(3)
    p3 = _PI ** 3
    two_minus = 2.0 - g * g
    three_minus = g * (3.0 - g * g)
    log_2pi_theta = math.log(2.0 * _PI * theta)

    F = (
        -theta * math.log(theta) - g / (2.0 * _PI) * log_2pi_theta - A / _PI - g / (2.0 * _PI) * (1.0 - EULER_GAMMA)
        + two_minus / (48.0 * theta) - z3 * three_minus / (24.0 * p3 * theta ** 2)
    )
    S = (
        math.log(theta) + 1.0 + g / (2.0 * _PI * theta)
        + two_minus / (48.0 * theta ** 2) - z3 / (12.0 * p3) * three_minus / theta ** 3
    )
    U = (
        theta - g / (2.0 * _PI) * (log_2pi_theta - EULER_GAMMA) - A / _PI
        + two_minus / (24.0 * theta) - z3 / (8.0 * p3) * three_minus / theta ** 2
    )
    C = (
        1.0 - g / (2.0 * _PI * theta)
        - two_minus / (24.0 * theta ** 2) + z3 / (4.0 * p3) * three_minus / theta ** 3
    )
    return ThermoPoint(theta=theta, F=F, S=S, U=U, C=C, method=ThermoMethod.HIGH_T_SERIES)


def _qed_high_T_orders(theta: float, gamma: float, n_terms: int, energy: float) -> ThermoPoint:
    _check_theta(theta)
    _check_terms(n_terms, 2, 'the QED high temperature series')
    log_theta = math.log(theta)
    orders = [(-theta * log_theta, log_theta + 1.0, theta, 1.0)]
    a = _PI * gamma / 6.0
    # F = a t^2, S = -2 a t, U = -e a t^2, C = -2 e a t
    orders.append((a * theta ** 2, -2.0 * a * theta, -energy * a * theta ** 2, -2.0 * energy * a * theta))
    return _summed(theta, orders[:n_terms], ThermoMethod.HIGH_T_SERIES)


def qed_high_T(theta: float, gamma: float, /, n_terms: int = 2) -> ThermoPoint:
    """Classical leading order plus the theta^2 gamma correction.

    F = -theta log theta + a theta^2 and S = -dF/dtheta with a = pi gamma / 6;
    U = theta - 2 a theta^2 and C = dU/dtheta. This U is not F + theta S at
    the correction order; ``qed_high_T_consistent`` gives that form.
    """
    return _qed_high_T_orders(theta, gamma, n_terms, 2.0)


def qed_high_T_consistent(theta: float, gamma: float, /, n_terms: int = 2) -> ThermoPoint:
    """As ``qed_high_T`` with U = F + theta S and C = dU/dtheta of the same truncation."""
    return _qed_high_T_orders(theta, gamma, n_terms, 1.0)


def srt_correction(bath: CanonicalBath, theta: float, /) -> float:
    """pi theta^2 / 6 (1/Omega - 1/Omega') in reduced units; cutoffs large against theta."""
    _check_theta(theta)
    bath = bath.reduced()
    return _PI * theta ** 2 / 6.0 * (reciprocal(bath.omega) - reciprocal(bath.omega_prime))


def cutoff_corrected_free_energy(bath: CanonicalBath, theta: float, /, *, method: JMethod = JMethod.REGIONAL) -> float:
    """Ohmic free energy plus the leading cutoff correction."""
    ohmic = CanonicalBath(omega0=bath.omega0, gamma=bath.gamma)
    return free_energy_exact(ohmic, theta, method=method) + srt_correction(bath, theta)


def _with_cutoff_correction(point: ThermoPoint, bath: CanonicalBath) -> ThermoPoint:
    theta = point.theta
    a = srt_correction(bath, theta) / theta ** 2
    return ThermoPoint(
        theta=theta,
        F=point.F + a * theta ** 2,
        S=point.S - 2.0 * a * theta,
        U=point.U - a * theta ** 2,
        C=point.C - 2.0 * a * theta,
        method=point.method,
    )


def series_point(spec: BathSpec, theta: float, expansion: ExpansionSpec, /) -> ThermoPoint:
    """The closed expansion for ``spec``'s model at theta.

    The single relaxation time bath takes the Ohmic series plus the
    leading cutoff correction.
    """
    log = auto.structlog.get_logger(__name__)
    _check_theta(theta)
    if expansion.model != spec.model:
        raise InvalidParameterError(f'expansion for {expansion.model!r} applied to a {spec.model!r} bath')

    bath = canonicalize(spec).reduced()
    crossover = 1.0 / (2.0 * _PI)
    if expansion.regime is TemperatureRegime.LOW_T and theta >= crossover:
        log.warning('low temperature series outside its regime', theta=theta, crossover=crossover)
    if expansion.regime is TemperatureRegime.HIGH_T and theta <= crossover:
        log.warning('high temperature series outside its regime', theta=theta, crossover=crossover)

    match expansion.regime, expansion.model:
        case TemperatureRegime.LOW_T, 'qed':
            return qed_low_T(theta, bath.gamma, expansion.n_terms)
        case TemperatureRegime.HIGH_T, 'qed':
            return qed_high_T(theta, bath.gamma, expansion.n_terms)
        case TemperatureRegime.LOW_T, _:
            point = ohmic_low_T(theta, bath.gamma, expansion.n_terms)
        case TemperatureRegime.HIGH_T, _:
            point = ohmic_high_T(theta, bath.gamma, expansion.n_terms)

    if expansion.model == 'srt':
        return _with_cutoff_correction(point, bath)
    return point


#--- Zero point

def zero_point(bath: CanonicalBath, /) -> float:
    """Zero-point free energy of the single relaxation time bath, in units of hbar omega0."""
    bath = bath.reduced()
    _zero_point_check(bath)
    gamma, omega_prime = bath.gamma, bath.omega_prime
    return (
        omega_prime * math.log1p(gamma / omega_prime)
        + gamma * math.log(omega_prime + gamma)
        + 2.0 * omega1_arccos(1.0, gamma)
    ) / (2.0 * _PI)


def zero_point_quadrature(bath: CanonicalBath, /, spec: QuadratureSpec | None = None) -> float:
    """(1/2 pi) int omega times the spectral factor, by quadrature."""
    bath = bath.reduced()
    _zero_point_check(bath)
    if spec is None:
        spec = QuadratureSpec(relative_tolerance=1e-10)

    def integrand(omega):
        return omega * free_energy_integrand(bath, omega) / (2.0 * _PI)

    return integrate_semi_infinite(integrand, spec, breakpoints=_breakpoints(bath, 1.0)).value


def zero_point_ohmic_asymptotic(omega0: float, gamma: float, tau: float, /) -> float:
    """Small-tau form of the zero-point energy, logarithmically divergent as tau -> 0."""
    if not (omega0 > 0 and gamma > 0 and tau > 0):
        raise InvalidParameterError(f'need omega0, gamma, tau > 0, got {omega0!r}, {gamma!r}, {tau!r}')
    g = gamma / omega0
    return (g * (1.0 - math.log(omega0 * tau)) + 2.0 * omega1_arccos(1.0, g)) / (2.0 * _PI)
