"""
Heat-bath models and the oscillator response.

Every model reduces to the combined susceptibility

    alpha(z) = (z + i Omega) / (-m (z + i Omega') (z^2 + i gamma z - omega0^2))

with m the bare mass. Ohmic has both cutoffs infinite. The single
relaxation time model has Omega = Omega' + gamma = 1/tau. QED has
1/Omega = 1/Omega' + gamma/omega0^2, and its large-cutoff limit
Omega' -> inf leaves Omega = omega0^2/gamma with vanishing bare mass.

Masses enter only the response functions; ``mass`` arguments are the
observed (renormalized) mass M and default to 1.
"""

from __future__ import annotations

import math
import typing

from ._auto import auto
from .errors import DomainError, InvalidParameterError, PoleError
from .model import (
    QED,
    BathSpec,
    CanonicalBath,
    ComplexValue,
    Ohmic,
    Regime,
    RootPair,
    SingleRelaxationTime,
    as_complex,
)
from .util import dispatch, not_implemented, reciprocal


__all__ = [
    'TAU_E_SECONDS',
    'canonicalize',
    'roots',
    'omega1_arccos',
    'srt_friction_ratio',
    'restoring_ratio',
    'mass_ratio',
    'bare_mass',
    'qed_gamma_from_tau_e',
    'mu_tilde',
    'susceptibility',
    'langevin_susceptibility',
    'free_energy_integrand',
]


# 2 e^2 / (3 M c^3) for the electron
TAU_E_SECONDS = 6e-24


#--- Canonical form

@dispatch
def canonicalize(spec: BathSpec, /) -> CanonicalBath:
    """Map a bath model to its (omega0, gamma, Omega, Omega') quadruple."""
    return not_implemented(spec)


def _checked(spec: BathSpec) -> None:
    log = auto.structlog.get_logger(__name__)
    for advisory in spec.validate():
        log.warning('bath parameters', model=spec.model, advisory=advisory)


@canonicalize.register
def _(spec: Ohmic, /) -> CanonicalBath:
    _checked(spec)
    return CanonicalBath(omega0=spec.omega0, gamma=spec.gamma)


@canonicalize.register
def _(spec: SingleRelaxationTime, /) -> CanonicalBath:
    _checked(spec)
    omega = 1.0 / spec.tau
    return CanonicalBath(
        omega0=spec.omega0,
        gamma=spec.gamma,
        omega=omega,
        omega_prime=omega - spec.gamma,
    )


@canonicalize.register
def _(spec: QED, /) -> CanonicalBath:
    _checked(spec)
    omega_prime = spec.omega_prime
    omega = 1.0 / (reciprocal(omega_prime) + spec.gamma / spec.omega0 ** 2)
    return CanonicalBath(
        omega0=spec.omega0,
        gamma=spec.gamma,
        omega=omega,
        omega_prime=omega_prime,
    )


#--- Characteristic roots

def roots(omega0: float, gamma: float, /) -> RootPair:
    """Roots z1, z1* of z^2 - gamma z + omega0^2.

    Critical damping is an exact comparison and shares the overdamped
    formulas with |omega1| = 0.
    """
    if not (omega0 > 0 and gamma > 0):
        raise InvalidParameterError(f'roots need omega0 > 0 and gamma > 0, got {omega0!r}, {gamma!r}')

    half = 0.5 * gamma
    # omega0^2 - gamma^2/4 without cancellation near critical damping
    discriminant = (omega0 - half) * (omega0 + half)

    if discriminant > 0.0:
        omega1 = math.sqrt(discriminant)
        return RootPair(complex(half, omega1), complex(half, -omega1), omega1, Regime.UNDERDAMPED)

    if discriminant == 0.0:
        return RootPair(complex(half), complex(half), 0.0, Regime.CRITICAL)

    omega1 = math.sqrt(-discriminant)
    upper = half + omega1
    return RootPair(complex(omega0 * omega0 / upper), complex(upper), omega1, Regime.OVERDAMPED)


def omega1_arccos(omega0: float, gamma: float, /) -> float:
    """omega1 arccos(gamma / 2 omega0), continued past critical damping.

    Overdamped, the product becomes |omega1| log(gamma/2omega0 - |omega1|/omega0),
    which is -|omega1| arccosh(gamma/2omega0).
    """
    pair = roots(omega0, gamma)
    x = gamma / (2.0 * omega0)
    match pair.regime:
        case Regime.UNDERDAMPED:
            return pair.omega1 * math.acos(x)
        case Regime.CRITICAL:
            return 0.0
        case Regime.OVERDAMPED:
            return -pair.omega1 * math.acosh(x)


#--- Physical parameters

def srt_friction_ratio(bath: CanonicalBath, /) -> float:
    """zeta/m of the single relaxation time model, in the units of ``bath``."""
    w0, gamma, omega_prime = bath.omega0, bath.gamma, bath.omega_prime
    if math.isinf(omega_prime):
        return gamma
    return gamma * (omega_prime ** 2 + gamma * omega_prime + w0 ** 2) / (omega_prime + gamma) ** 2


def restoring_ratio(bath: CanonicalBath, /) -> float:
    """K/M, the spring constant over the observed mass."""
    if math.isinf(bath.omega_prime):
        return bath.omega0 ** 2
    return bath.omega0 ** 2 * bath.omega_prime / (bath.omega_prime + bath.gamma)


def mass_ratio(bath: CanonicalBath, /) -> float:
    """M/m, observed over bare mass. Infinite when the bare mass vanishes."""
    if bath.is_ohmic:
        return 1.0
    if math.isinf(bath.omega_prime):
        return math.inf
    return (bath.omega_prime + bath.gamma) / bath.omega


def bare_mass(bath: CanonicalBath, mass: float = 1.0, /) -> float:
    return mass / mass_ratio(bath)


def qed_gamma_from_tau_e(omega0: float, tau_e: float = TAU_E_SECONDS, /) -> float:
    """gamma = omega0^2 tau_e of the large-cutoff QED bath (omega0 in s^-1)."""
    return omega0 * omega0 * tau_e


#--- Response functions

@dispatch
def _memory(spec: BathSpec, bath: CanonicalBath, z: ComplexValue, mass: float) -> ComplexValue:
    return not_implemented(spec)


@_memory.register
def _(spec: Ohmic, bath: CanonicalBath, z: ComplexValue, mass: float) -> ComplexValue:
    return complex(mass * bath.gamma)


@_memory.register
def _(spec: SingleRelaxationTime, bath: CanonicalBath, z: ComplexValue, mass: float) -> ComplexValue:
    tau = 1.0 / bath.omega
    return mass * srt_friction_ratio(bath) / (1.0 - 1j * z * tau)


@_memory.register
def _(spec: QED, bath: CanonicalBath, z: ComplexValue, mass: float) -> ComplexValue:
    # 2e^2/3c^3 = (M - m)/Omega
    kappa = (mass - bare_mass(bath, mass)) / bath.omega
    return kappa * z * bath.omega ** 2 / (z + 1j * bath.omega)


def mu_tilde(spec: BathSpec, z: typing.SupportsComplex, /, mass: float = 1.0) -> ComplexValue:
    """Memory-function transform of the bath, analytic for Im z >= 0."""
    z = as_complex(z)
    if z.imag < 0.0:
        raise DomainError(f'mu_tilde is defined on the closed upper half-plane, got {z!r}')
    return _memory(spec, canonicalize(spec), z, mass)


def _cutoff_factor(bath: CanonicalBath, z: ComplexValue) -> ComplexValue:
    # m/M times (z + i Omega')/(z + i Omega), with m/M = Omega/(Omega' + gamma)
    if bath.is_ohmic:
        return complex(1.0)
    if math.isinf(bath.omega_prime):
        return 1j * bath.omega / (z + 1j * bath.omega)
    return bath.omega * (z + 1j * bath.omega_prime) / ((bath.omega_prime + bath.gamma) * (z + 1j * bath.omega))


def susceptibility(bath: CanonicalBath, mass_scale: float, z: typing.SupportsComplex, /) -> ComplexValue:
    """Combined susceptibility alpha(z) for observed mass ``mass_scale``."""
    z = as_complex(z)
    if not math.isinf(bath.omega) and z == -1j * bath.omega:
        return 0j

    oscillator = z * z + 1j * bath.gamma * z - bath.omega0 ** 2
    denominator = -mass_scale * _cutoff_factor(bath, z) * oscillator
    if denominator == 0.0:
        raise PoleError(f'alpha(z) has a pole at {z!r}')
    return 1.0 / denominator


def langevin_susceptibility(spec: BathSpec, z: typing.SupportsComplex, /, mass: float = 1.0) -> ComplexValue:
    """alpha(z) = 1 / (-m z^2 - i z mu(z) + K) from the model's own kernel."""
    z = as_complex(z)
    bath = canonicalize(spec)
    m = bare_mass(bath, mass)
    K = mass * restoring_ratio(bath)

    denominator = -m * z * z - 1j * z * mu_tilde(spec, z, mass) + K
    if denominator == 0.0:
        raise PoleError(f'alpha(z) has a pole at {z!r}')
    return 1.0 / denominator


def free_energy_integrand(bath: CanonicalBath, omega, /):
    """Spectral factor Im d log alpha(omega + i0)/d omega.

    Scalars or arrays of omega > 0. Infinite cutoffs contribute nothing.
    """
    np = auto.np
    omega = np.asarray(omega, dtype=float)
    w0, gamma = bath.omega0, bath.gamma
    w2 = omega * omega

    total = gamma * (w2 + w0 * w0) / (((omega - w0) * (omega + w0)) ** 2 + gamma * gamma * w2)
    if math.isfinite(bath.omega):
        total = total - bath.omega / (w2 + bath.omega ** 2)
    if math.isfinite(bath.omega_prime):
        total = total + bath.omega_prime / (w2 + bath.omega_prime ** 2)

    if total.ndim == 0:
        return float(total)
    return total
