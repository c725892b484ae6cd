"""
The Stieltjes J-function

    J(z) = log Gamma(z+1) - log sqrt(2 pi) - (z + 1/2) log z + z

evaluated by several independent routes:

- ``quadrature``: the defining integral
  J(z) = -(1/pi) int_0^inf log(1 - exp(-2 pi t)) z / (z^2 + t^2) dt, Re z > 0;
- ``log_gamma``: the closed form above with a principal-branch log Gamma;
- ``lanczos``: the Lanczos formula (g = 5, six terms);
- ``series_small``: the Taylor-type series in z with zeta(n) coefficients, |z| < 1;
- ``asymptotic``: the Bernoulli-number series in 1/z, large |z|;
- ``continuation``: reflection into the left half-plane,
  J(z e^{+-i pi}) = -J(z) - log(1 - exp(-+2 pi i z));
- ``regional``: series near the origin, asymptotic far out and asymptotic
  after upward recurrence in between. This is the route with full double
  precision and the one the thermodynamics uses.

All logarithms are principal. The function is defined on the plane cut
along the non-positive real axis; the imaginary axis is a natural boundary
of the integral representation but not of the closed form.
"""

from __future__ import annotations

import cmath
import dataclasses
import fractions
import functools
import math
import typing

from ._auto import auto
from .errors import AsymptoticDivergenceError, BranchCutError, DomainError, InvalidParameterError
from .model import ComplexValue, JMethod, QuadratureSpec, as_complex
from .quadrature import integrate_semi_infinite
from .util import clog1mexp, log1mexp


__all__ = [
    'LanczosCoefficients',
    'LANCZOS',
    'LANCZOS_ERROR',
    'BERNOULLI_TABLE',
    'EULER_GAMMA',
    'LOG_SQRT_2PI',
    'bernoulli',
    'zeta',
    'zeta_minus_one',
    'log_gamma',
    'j_quadrature',
    'j_loggamma',
    'j_lanczos',
    'j_series_small',
    'j_asymptotic',
    'j_continue_left',
    'j_auto',
    'j_regional',
    'JEvaluation',
    'j_evaluate',
]


@dataclasses.dataclass(frozen=True)
class LanczosCoefficients:
    d: tuple[float, ...]
    gamma_shift: float = 5.0
    n: int = 6

    def __post_init__(self):
        if len(self.d) != self.n + 1:
            raise InvalidParameterError(f'expected {self.n + 1} coefficients, got {len(self.d)}')


LANCZOS = LanczosCoefficients(
    d=(
        1.000000000190015,
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.001208650973866179,
        -0.000005395239384953,
    ),
)

# Absolute error of the Lanczos formula in log Gamma, hence in J. It does not
# vanish as |z| grows because d0 - 1 = 1.9e-10.
LANCZOS_ERROR = 2e-10

BERNOULLI_TABLE: typing.Mapping[int, fractions.Fraction] = {
    2: fractions.Fraction(1, 6),
    4: fractions.Fraction(-1, 30),
    6: fractions.Fraction(1, 42),
    8: fractions.Fraction(-1, 30),
    10: fractions.Fraction(5, 66),
    12: fractions.Fraction(-691, 2730),
    14: fractions.Fraction(7, 6),
    16: fractions.Fraction(-3617, 510),
    18: fractions.Fraction(43867, 798),
    20: fractions.Fraction(-174611, 330),
    22: fractions.Fraction(854513, 138),
}

EULER_GAMMA = 0.57721566490153286061
LOG_SQRT_2PI = 0.91893853320467274178

_SERIES_RADIUS = 0.9
_ASYMPTOTIC_RADIUS = 8.0
_MAX_ASYMPTOTIC_TERMS = 11
_ZETA_TABLE_MAX = 60


#--- Bernoulli numbers and zeta

@functools.lru_cache(maxsize=None)
def bernoulli(n: int, /) -> fractions.Fraction:
    """Bernoulli number B_n as an exact rational (Akiyama-Tanigawa).

    The algorithm yields B_1 = +1/2; only even indices are used here.
    """
    if n < 0:
        raise InvalidParameterError(f'Bernoulli index must be non-negative, got {n!r}')
    a = [fractions.Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = fractions.Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def _euler_maclaurin_zeta_minus_one(s: int, cut: int = 16, order: int = 6) -> float:
    # sum_{k>=2} k^-s: direct head plus Euler-Maclaurin tail from k = cut
    head = [k ** -float(s) for k in range(cut - 1, 1, -1)]
    tail = [cut ** (1.0 - s) / (s - 1), 0.5 * cut ** -float(s)]
    rising = float(s)
    for j in range(1, order + 1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        coefficient = float(bernoulli(2 * j)) / math.factorial(2 * j)
        tail.append(coefficient * rising * cut ** (-float(s) - 2 * j + 1))
    return math.fsum(head + tail)


@functools.cache
def _zeta_minus_one_table() -> tuple[float, ...]:
    return tuple(
        _euler_maclaurin_zeta_minus_one(n) if n >= 2 else math.nan
        for n in range(_ZETA_TABLE_MAX + 1)
    )


def zeta_minus_one(n: int, /) -> float:
    """zeta(n) - 1 for integer n >= 2, without cancellation."""
    if n < 2:
        raise DomainError(f'zeta(n) needs n >= 2, got {n!r}')
    if n <= _ZETA_TABLE_MAX:
        return _zeta_minus_one_table()[n]
    return 2.0 ** -n + 3.0 ** -n


def zeta(n: int, /) -> float:
    return 1.0 + zeta_minus_one(n)


#--- log Gamma

def _check_cut(z: ComplexValue, /) -> None:
    if z.imag == 0.0 and z.real <= 0.0:
        raise BranchCutError(f'{z!r} lies on the branch cut along the non-positive real axis')


def _lanczos_sum(z: ComplexValue, coefficients: LanczosCoefficients) -> ComplexValue:
    d = coefficients.d
    total = complex(d[0])
    for n in range(1, coefficients.n + 1):
        total += d[n] / (z + n)
    return total


def _log_gamma_lanczos(z: ComplexValue, coefficients: LanczosCoefficients = LANCZOS) -> ComplexValue:
    # log Gamma(z + 1), Re z >= 0
    shifted = z + coefficients.gamma_shift + 0.5
    return (z + 0.5) * cmath.log(shifted) - shifted + LOG_SQRT_2PI + cmath.log(_lanczos_sum(z, coefficients))


def log_gamma(w: typing.SupportsComplex, /) -> ComplexValue:
    """Principal branch of log Gamma(w) on the plane cut along (-inf, 0].

    Uses the Lanczos core for Re w >= 1 and the upward recurrence
    log Gamma(w) = log Gamma(w + n) - sum_k log(w + k) elsewhere, which
    keeps the analytic branch in both half-planes.
    """
    w = as_complex(w)
    _check_cut(w)

    if w.real >= 1.0:
        return _log_gamma_lanczos(w - 1.0)

    n = math.ceil(1.0 - w.real)
    logs = [cmath.log(w + k) for k in range(n)]
    correction = complex(math.fsum(x.real for x in logs), math.fsum(x.imag for x in logs))
    return _log_gamma_lanczos(w + n - 1.0) - correction


#--- J routes

def j_quadrature(z: typing.SupportsComplex, /, spec: QuadratureSpec | None = None) -> ComplexValue:
    """J(z) from its integral representation. Needs Re z > 0."""
    np = auto.np
    z = as_complex(z)
    if not z.real > 0.0:
        raise DomainError(f'the J integral converges only for Re z > 0, got {z!r}')
    if spec is None:
        spec = QuadratureSpec()

    def kernel(t):
        return z / (z * z + t * t)

    def thermal(t):
        return -log1mexp(2.0 * np.pi * t) / np.pi

    scales = [abs(z.imag), abs(z), 1.0]
    if abs(z.imag) > z.real:
        scales += [abs(z.imag) - z.real, abs(z.imag) + z.real]
    breakpoints = [s for s in scales if s > 0.0]

    real = integrate_semi_infinite(lambda t: thermal(t) * kernel(t).real, spec, breakpoints=breakpoints)
    if z.imag == 0.0:
        return complex(real.value, 0.0)

    imag = integrate_semi_infinite(lambda t: thermal(t) * kernel(t).imag, spec, breakpoints=breakpoints)
    return complex(real.value, imag.value)


def j_loggamma(z: typing.SupportsComplex, /) -> ComplexValue:
    z = as_complex(z)
    _check_cut(z)
    return log_gamma(z + 1.0) - LOG_SQRT_2PI - (z + 0.5) * cmath.log(z) + z


def j_lanczos(z: typing.SupportsComplex, /, coefficients: LanczosCoefficients = LANCZOS) -> ComplexValue:
    """Lanczos formula for J on the open right half-plane."""
    z = as_complex(z)
    if not z.real > 0.0:
        raise DomainError(f'the Lanczos formula needs Re z > 0, got {z!r}')

    g = coefficients.gamma_shift
    return (
        (z + 0.5) * cmath.log((z + g + 0.5) / z)
        - g - 0.5
        + cmath.log(_lanczos_sum(z, coefficients))
    )


def j_series_small(z: typing.SupportsComplex, /, n_terms: int | None = None) -> ComplexValue:
    """Small-|z| series.

    With an explicit ``n_terms`` the literal partial sum over n = 2..n_terms
    of (-1)^n zeta(n) z^n / n is returned. Without it the series is summed
    to double precision in the form with zeta(n) - 1 coefficients, the
    remaining sum being z - log(1 + z).
    """
    np = auto.np
    z = as_complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f'the small-z series diverges for |z| >= 1, got |z| = {abs(z)!r}')
    _check_cut(z)

    head = -LOG_SQRT_2PI - (z + 0.5) * cmath.log(z) + z - EULER_GAMMA * z

    if n_terms is not None:
        if n_terms < 2:
            raise InvalidParameterError(f'n_terms must be at least 2, got {n_terms!r}')
        terms = [(-1) ** n * zeta(n) / n * z ** n for n in range(2, n_terms + 1)]
    else:
        terms = [z - complex(np.log1p(z))]
        terms += [(-1) ** n * zeta_minus_one(n) / n * z ** n for n in range(2, _ZETA_TABLE_MAX + 1)]

    # smallest terms first
    terms.reverse()
    return head + complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def _asymptotic_term(n: int, z: ComplexValue) -> ComplexValue:
    b = BERNOULLI_TABLE.get(2 * n + 2) or bernoulli(2 * n + 2)
    return float(b) / ((2 * n + 1) * (2 * n + 2)) * (1 / z) ** (2 * n + 1)


def j_asymptotic(z: typing.SupportsComplex, /, n_terms: int | None = None) -> tuple[ComplexValue, float]:
    """Partial sum of the asymptotic series and the size of the first omitted term.

    ``n_terms=None`` truncates optimally: terms are added while they keep
    shrinking, up to eleven.
    """
    z = as_complex(z)
    if not z.real > 0.0:
        raise DomainError(f'the asymptotic series is used only for Re z > 0, got {z!r}')
    if n_terms is not None and not 1 <= n_terms <= _MAX_ASYMPTOTIC_TERMS:
        raise InvalidParameterError(
            f'n_terms must lie in 1..{_MAX_ASYMPTOTIC_TERMS}, got {n_terms!r}'
        )

    terms = [_asymptotic_term(0, z)]
    if n_terms is None:
        while len(terms) < _MAX_ASYMPTOTIC_TERMS:
            nxt = _asymptotic_term(len(terms), z)
            if abs(nxt) >= abs(terms[-1]):
                break
            terms.append(nxt)
    else:
        terms += [_asymptotic_term(n, z) for n in range(1, n_terms)]

    omitted = abs(_asymptotic_term(len(terms), z))
    if n_terms is not None and omitted > abs(terms[-1]):
        raise AsymptoticDivergenceError(
            f'asymptotic series diverges at |z| = {abs(z):.6g} with {len(terms)} terms '
            f'(first omitted term {omitted:.3g} exceeds last kept {abs(terms[-1]):.3g}); '
            f'use fewer terms or another method'
        )

    terms.reverse()
    value = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return value, omitted


def j_continue_left(w: typing.SupportsComplex, /, *, method: JMethod = JMethod.AUTO) -> ComplexValue:
    """J in the left half-plane by reflection.

    With w = z e^{+i pi} (Im w > 0) or w = z e^{-i pi} (Im w < 0) and
    Re z >= 0, J(w) = -J(z) - log(1 - exp(-+2 pi i z)). ``method`` picks the
    right-half-plane route used for J(z).
    """
    w = as_complex(w)
    if w.real > 0.0:
        raise DomainError(f'continuation applies to Re w <= 0, got {w!r}')
    _check_cut(w)

    z = -w
    if method in (JMethod.AUTO, JMethod.CONTINUATION):
        # Lanczos needs Re z > 0; the imaginary axis goes through the regional route
        method = JMethod.LANCZOS if z.real > 0.0 else JMethod.REGIONAL
    inner = j_evaluate(z, method).value

    if w.imag > 0.0:
        return -inner - clog1mexp(2j * cmath.pi * w)
    return -inner - clog1mexp(-2j * cmath.pi * w)


def j_auto(z: typing.SupportsComplex, /) -> ComplexValue:
    z = as_complex(z)
    if z.real > 0.0:
        return j_lanczos(z)
    return j_continue_left(z)


def _j_recurrence(z: ComplexValue, shift: int) -> ComplexValue:
    far = z + shift
    value, _ = j_asymptotic(far)
    logs = [(far + 0.5) * cmath.log(far), -(z + 0.5) * cmath.log(z)]
    logs += [-cmath.log(z + k) for k in range(1, shift + 1)]
    logs.reverse()
    return value - shift + complex(math.fsum(x.real for x in logs), math.fsum(x.imag for x in logs))


def j_regional(z: typing.SupportsComplex, /) -> ComplexValue:
    """J to double precision anywhere off the cut."""
    z = as_complex(z)
    _check_cut(z)

    if abs(z) < _SERIES_RADIUS:
        return j_series_small(z)
    if z.real < 0.0:
        return j_continue_left(z, method=JMethod.REGIONAL)
    if abs(z) >= _ASYMPTOTIC_RADIUS and z.real > 0.0:
        value, _ = j_asymptotic(z)
        return value
    return _j_recurrence(z, max(1, math.ceil(_ASYMPTOTIC_RADIUS - z.real)))


class JEvaluation(typing.NamedTuple):
    value: ComplexValue
    method: JMethod
    bound: float | None = None


def j_evaluate(
    z: typing.SupportsComplex,
    method: JMethod = JMethod.AUTO,
    /,
    *,
    n_terms: int | None = None,
    spec: QuadratureSpec | None = None,
) -> JEvaluation:
    """Evaluate J by ``method`` and report the route actually taken.

    ``bound`` is the truncation bound of the asymptotic route and None
    elsewhere.
    """
    z = as_complex(z)
    match method:
        case JMethod.AUTO:
            if z.real > 0.0:
                return JEvaluation(j_lanczos(z), JMethod.LANCZOS)
            return JEvaluation(j_continue_left(z), JMethod.CONTINUATION)
        case JMethod.QUADRATURE:
            return JEvaluation(j_quadrature(z, spec), method)
        case JMethod.LOG_GAMMA:
            return JEvaluation(j_loggamma(z), method)
        case JMethod.LANCZOS:
            return JEvaluation(j_lanczos(z), method)
        case JMethod.SERIES_SMALL:
            return JEvaluation(j_series_small(z, n_terms), method)
        case JMethod.ASYMPTOTIC:
            value, bound = j_asymptotic(z, n_terms)
            return JEvaluation(value, method, bound)
        case JMethod.CONTINUATION:
            return JEvaluation(j_continue_left(z), method)
        case JMethod.REGIONAL:
            return JEvaluation(j_regional(z), method)

    raise NotImplementedError(method)
