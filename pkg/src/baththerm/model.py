"""
Value types shared across the package.

Frequencies are plain floats in one consistent unit (reduced units set
omega0 = 1); temperatures are theta = kT / (hbar omega0).
"""

from __future__ import annotations

import cmath
import dataclasses
import enum
import math
import typing

from ._auto import auto
from .errors import DomainError, InvalidParameterError


__all__ = [
    'ComplexValue',
    'as_complex',
    'JMethod',
    'TailCut',
    'QuadratureSpec',
    'QuadratureResult',
    'BathSpec',
    'Ohmic',
    'SingleRelaxationTime',
    'QED',
    'CanonicalBath',
    'Regime',
    'RootPair',
    'ThermoMethod',
    'ThermoPoint',
    'TemperatureRegime',
    'ExpansionSpec',
    'ThetaGrid',
    'Units',
    'SweepConfig',
]


#--- Complex arguments

ComplexValue: typing.TypeAlias = complex


def as_complex(z: typing.SupportsComplex, /) -> ComplexValue:
    z = complex(z)
    if not cmath.isfinite(z):
        raise DomainError(f'non-finite argument {z!r}')
    return z


class JMethod(enum.Enum):
    QUADRATURE = 'quadrature'
    LOG_GAMMA = 'log_gamma'
    LANCZOS = 'lanczos'
    SERIES_SMALL = 'series_small'
    ASYMPTOTIC = 'asymptotic'
    CONTINUATION = 'continuation'
    REGIONAL = 'regional'
    AUTO = 'auto'

    @classmethod
    def _missing_(cls, value):
        if not isinstance(value, str):
            return None
        name = value.lower().replace('-', '_')
        # command-line spellings
        name = {'loggamma': 'log_gamma', 'series': 'series_small'}.get(name, name)
        for member in cls:
            if member.value == name:
                return member
        return None


#--- Quadrature

class TailCut(enum.Enum):
    MAP = 'map'
    TRUNCATE = 'truncate'


@dataclasses.dataclass(frozen=True)
class QuadratureSpec:
    relative_tolerance: float = 1e-12
    absolute_tolerance: float = 1e-15
    max_subdivisions: int = 4000
    tail_cut_policy: TailCut = TailCut.MAP

    def __post_init__(self):
        if not self.relative_tolerance > 0:
            raise InvalidParameterError(f'relative_tolerance must be positive, got {self.relative_tolerance!r}')
        if not self.absolute_tolerance > 0:
            raise InvalidParameterError(f'absolute_tolerance must be positive, got {self.absolute_tolerance!r}')
        if self.max_subdivisions < 1:
            raise InvalidParameterError(f'max_subdivisions must be at least 1, got {self.max_subdivisions!r}')

    def tightened(self, factor: float = 10.0) -> QuadratureSpec:
        return dataclasses.replace(self, relative_tolerance=self.relative_tolerance / factor)


@dataclasses.dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float
    evaluations: int
    panels: int


#--- Bath models

@dataclasses.dataclass(frozen=True)
class BathSpec:
    gamma: float
    omega0: float = 1.0

    model: typing.ClassVar[str] = ''

    def validate(self) -> list[str]:
        """Raise on invalid parameters; return advisory messages."""
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise InvalidParameterError(f'omega0 must be positive and finite, got {self.omega0!r}')
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidParameterError(f'gamma must be positive and finite, got {self.gamma!r}')
        return []


@dataclasses.dataclass(frozen=True)
class Ohmic(BathSpec):
    model: typing.ClassVar[str] = 'ohmic'


@dataclasses.dataclass(frozen=True)
class SingleRelaxationTime(BathSpec):
    tau_scaled: float = 0.01  # tau * omega0

    model: typing.ClassVar[str] = 'srt'

    @property
    def tau(self) -> float:
        return self.tau_scaled / self.omega0

    def validate(self) -> list[str]:
        advisories = super().validate()
        if not (math.isfinite(self.tau_scaled) and self.tau_scaled > 0):
            raise InvalidParameterError(f'tau_scaled must be positive and finite, got {self.tau_scaled!r}')
        if 1.0 / self.tau <= self.gamma:
            raise InvalidParameterError(
                f'single relaxation time needs 1/tau > gamma (1/tau = {1.0 / self.tau!r}, gamma = {self.gamma!r}); '
                f'the cutoff Omega\' = 1/tau - gamma would not be positive'
            )
        # small relaxation time, read as tau*gamma << 1
        if self.tau * self.gamma > 0.1:
            advisories.append(
                f'relaxation time is not small: tau*gamma = {self.tau * self.gamma:.3g} '
                f'(assumed tau << zeta/m, i.e. tau*gamma << 1)'
            )
        return advisories


@dataclasses.dataclass(frozen=True)
class QED(BathSpec):
    omega_prime_scaled: float = math.inf  # Omega' / omega0
    large_cutoff_limit: bool = False

    model: typing.ClassVar[str] = 'qed'

    @property
    def omega_prime(self) -> float:
        if self.large_cutoff_limit:
            return math.inf
        return self.omega_prime_scaled * self.omega0

    def validate(self) -> list[str]:
        advisories = super().validate()
        if not self.omega_prime_scaled > 0:
            raise InvalidParameterError(f'omega_prime_scaled must be positive, got {self.omega_prime_scaled!r}')
        if self.large_cutoff_limit and math.isfinite(self.omega_prime_scaled):
            advisories.append(
                f'large_cutoff_limit overrides omega_prime_scaled = {self.omega_prime_scaled!r} with infinity'
            )
        return advisories


@dataclasses.dataclass(frozen=True)
class CanonicalBath:
    """The (omega0, gamma, Omega, Omega') quadruple of the combined susceptibility.

    ``omega`` is the numerator cutoff Omega, ``omega_prime`` the denominator
    cutoff Omega'. Either may be ``math.inf``.
    """

    omega0: float
    gamma: float
    omega: float = math.inf
    omega_prime: float = math.inf

    def __post_init__(self):
        if not (math.isfinite(self.omega0) and self.omega0 > 0):
            raise InvalidParameterError(f'omega0 must be positive and finite, got {self.omega0!r}')
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InvalidParameterError(f'gamma must be positive and finite, got {self.gamma!r}')
        for name in ('omega', 'omega_prime'):
            value = getattr(self, name)
            if math.isnan(value) or not value > 0:
                raise InvalidParameterError(f'{name} must be positive or infinite, got {value!r}')
        if math.isinf(self.omega) and math.isfinite(self.omega_prime):
            raise InvalidParameterError('a finite Omega\' requires a finite Omega')

    @property
    def is_ohmic(self) -> bool:
        return math.isinf(self.omega) and math.isinf(self.omega_prime)

    def reduced(self) -> CanonicalBath:
        """Same bath with frequencies measured in units of omega0."""
        w = self.omega0
        return CanonicalBath(
            omega0=1.0,
            gamma=self.gamma / w,
            omega=self.omega / w,
            omega_prime=self.omega_prime / w,
        )


class Regime(enum.Enum):
    UNDERDAMPED = 'underdamped'
    CRITICAL = 'critical'
    OVERDAMPED = 'overdamped'


@dataclasses.dataclass(frozen=True)
class RootPair:
    """Characteristic roots z1, z1* with z1 + z1* = gamma and z1 z1* = omega0**2.

    ``omega1`` is the real frequency sqrt(omega0**2 - gamma**2/4) when
    underdamped and its magnitude |omega1| otherwise.
    """

    z1: ComplexValue
    z1_conj: ComplexValue
    omega1: float
    regime: Regime


#--- Thermodynamics

class ThermoMethod(enum.Enum):
    EXACT_J = 'exact_j'
    EXACT_QUADRATURE = 'exact_quadrature'
    LOW_T_SERIES = 'low_T_series'
    HIGH_T_SERIES = 'high_T_series'
    UNCOUPLED = 'uncoupled'


@dataclasses.dataclass(frozen=True)
class ThermoPoint:
    """F and U in units of hbar omega0, S and C in units of k."""

    theta: float
    F: float
    S: float
    U: float
    C: float
    method: ThermoMethod


class TemperatureRegime(enum.Enum):
    LOW_T = 'low_T'
    HIGH_T = 'high_T'


@dataclasses.dataclass(frozen=True)
class ExpansionSpec:
    regime: TemperatureRegime
    n_terms: int
    model: str = 'ohmic'

    def __post_init__(self):
        if self.n_terms < 0:
            raise InvalidParameterError(f'n_terms must be non-negative, got {self.n_terms!r}')
        if self.model not in ('ohmic', 'srt', 'qed'):
            raise InvalidParameterError(f'unknown model {self.model!r}')


#--- Sweeps

@dataclasses.dataclass(frozen=True)
class ThetaGrid:
    min: float
    max: float
    count: int
    spacing: typing.Literal['linear', 'log'] = 'log'

    def __post_init__(self):
        if not self.min > 0:
            raise InvalidParameterError(f'theta_min must be positive, got {self.min!r}')
        if self.count < 1:
            raise InvalidParameterError(f'count must be at least 1, got {self.count!r}')
        if self.max < self.min:
            raise InvalidParameterError(f'theta_max {self.max!r} is below theta_min {self.min!r}')
        if self.spacing not in ('linear', 'log'):
            raise InvalidParameterError(f'unknown spacing {self.spacing!r}')

    def values(self):
        np = auto.np
        if self.count == 1:
            return np.array([self.min])
        if self.spacing == 'log':
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


@dataclasses.dataclass(frozen=True)
class Units:
    system: typing.Literal['reduced', 'si'] = 'reduced'
    omega0_hz: float | None = None  # angular frequency omega0 in s^-1

    def __post_init__(self):
        if self.system not in ('reduced', 'si'):
            raise InvalidParameterError(f'unknown unit system {self.system!r}')
        if self.system == 'si' and not (self.omega0_hz is not None and self.omega0_hz > 0):
            raise InvalidParameterError('si units require a positive omega0_hz')


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    model: BathSpec
    theta_grid: ThetaGrid
    methods: tuple[ThermoMethod, ...] = (ThermoMethod.EXACT_J,)
    output_format: typing.Literal['csv', 'json'] = 'csv'
    units: Units = Units()
    n_terms: int | None = None
    j_method: JMethod = JMethod.REGIONAL
    include_zero_point: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.methods:
            raise InvalidParameterError('at least one method is required')
        if self.output_format not in ('csv', 'json'):
            raise InvalidParameterError(f'unknown output format {self.output_format!r}')
        if self.workers < 1:
            raise InvalidParameterError(f'workers must be at least 1, got {self.workers!r}')
