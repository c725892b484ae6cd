"""
Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.

The 7/15-point pair never evaluates the integrand at a panel endpoint, so
integrable logarithmic singularities at the lower limit need no special
treatment: repeated bisection of the worst panel isolates them.

Integrands are vectorised: they take a 1-d float array of abscissae and
return an array of the same shape. Scalar-only callables are accepted and
evaluated point by point.
"""

from __future__ import annotations

import heapq
import math
import typing

from ._auto import auto
from .errors import QuadratureError
from .model import QuadratureResult, QuadratureSpec, TailCut


__all__ = [
    'integrate_interval',
    'integrate_semi_infinite',
]


Integrand: typing.TypeAlias = typing.Callable[[typing.Any], typing.Any]

_EPS = 2.220446049250313e-16

# Kronrod abscissae on [0, 1]; odd entries are the 7-point Gauss abscissae.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)

_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)

_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


class _Rule:
    def __init__(self):
        np = auto.np
        xgk = np.array(_XGK)
        wgk = np.array(_WGK)
        wg = np.zeros(8)
        wg[1::2] = _WG

        self.nodes = np.concatenate([-xgk[:-1], xgk[::-1]])
        self.kronrod = np.concatenate([wgk[:-1], wgk[::-1]])
        self.gauss = np.concatenate([wg[:-1], wg[::-1]])


_rule: _Rule | None = None


def _get_rule() -> _Rule:
    global _rule
    if _rule is None:
        _rule = _Rule()
    return _rule


def _evaluate(f: Integrand, x):
    np = auto.np
    try:
        y = np.asarray(f(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([float(f(xi)) for xi in x])

    bad = ~np.isfinite(y)
    if bad.any():
        where = float(x[bad][0])
        raise QuadratureError(
            f'integrand returned {y[bad][0]!r} at abscissa {where!r}',
            abscissa=where,
        )
    return y


class _Panel(typing.NamedTuple):
    # heapq is a min-heap; panels are keyed on negative error
    key: float
    serial: int
    a: float
    b: float
    value: float
    error: float
    f: Integrand


def _gauss_kronrod(f: Integrand, a: float, b: float, serial: int = 0) -> _Panel:
    np = auto.np
    rule = _get_rule()

    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    y = _evaluate(f, center + half * rule.nodes)

    resk = float(np.dot(rule.kronrod, y))
    resg = float(np.dot(rule.gauss, y))
    resabs = float(np.dot(rule.kronrod, np.abs(y)))
    resasc = float(np.dot(rule.kronrod, np.abs(y - 0.5 * resk)))

    value = resk * half
    error = abs((resk - resg) * half)
    resabs *= abs(half)
    resasc *= abs(half)

    if resasc != 0.0 and error != 0.0:
        error = resasc * min(1.0, (200.0 * error / resasc) ** 1.5)
    if resabs > 1e-290:
        error = max(50.0 * _EPS * resabs, error)

    return _Panel(-error, serial, a, b, value, error, f)


def _adapt(
    pieces: list[tuple[Integrand, float, float]],
    spec: QuadratureSpec,
    /,
    *,
    extra_error: float = 0.0,
) -> QuadratureResult:
    log = auto.structlog.get_logger(__name__)

    heap = [_gauss_kronrod(f, a, b, i) for i, (f, a, b) in enumerate(pieces)]
    heapq.heapify(heap)
    serial = len(heap)
    evaluations = 15 * len(heap)
    value = math.fsum(p.value for p in heap)
    error = math.fsum(p.error for p in heap) + extra_error

    while True:
        tolerance = max(spec.absolute_tolerance, spec.relative_tolerance * abs(value))
        if error <= tolerance:
            # running totals drift; confirm with exact sums
            value = math.fsum(p.value for p in heap)
            error = math.fsum(p.error for p in heap) + extra_error
            tolerance = max(spec.absolute_tolerance, spec.relative_tolerance * abs(value))
            if error <= tolerance:
                return QuadratureResult(value=value, error=error, evaluations=evaluations, panels=len(heap))

        if len(heap) >= spec.max_subdivisions:
            log.debug('quadrature did not converge', estimate=value, error=error, panels=len(heap))
            raise QuadratureError(
                f'no convergence after {len(heap)} panels: estimate {value!r} with error {error!r} '
                f'exceeds tolerance {tolerance!r}',
                estimate=value,
                error=error,
            )

        worst = heapq.heappop(heap)
        mid = 0.5 * (worst.a + worst.b)
        if not worst.a < mid < worst.b:
            log.debug('quadrature panel below resolution', a=worst.a, b=worst.b)
            raise QuadratureError(
                f'panel [{worst.a!r}, {worst.b!r}] cannot be bisected further: estimate {value!r} '
                f'with error {error!r}',
                estimate=value,
                error=error,
                abscissa=mid,
            )

        left = _gauss_kronrod(worst.f, worst.a, mid, serial)
        right = _gauss_kronrod(worst.f, mid, worst.b, serial + 1)
        serial += 2
        heapq.heappush(heap, left)
        heapq.heappush(heap, right)
        evaluations += 30

        value += left.value + right.value - worst.value
        error += left.error + right.error - worst.error


def _split(a: float, b: float, breakpoints: typing.Iterable[float]) -> list[float]:
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    return [a, *inner, b]


def integrate_interval(
    f: Integrand,
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
    /,
    *,
    breakpoints: typing.Iterable[float] = (),
) -> QuadratureResult:
    """Integrate f over the finite interval [a, b]."""
    if not (math.isfinite(a) and math.isfinite(b)):
        raise QuadratureError(f'interval [{a!r}, {b!r}] is not finite')
    if a == b:
        return QuadratureResult(value=0.0, error=0.0, evaluations=0, panels=0)
    if b < a:
        result = integrate_interval(f, b, a, spec, breakpoints=breakpoints)
        return QuadratureResult(-result.value, result.error, result.evaluations, result.panels)

    edges = _split(a, b, breakpoints)
    return _adapt([(f, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])], spec)


def _mapped_tail(f: Integrand, c: float) -> Integrand:
    def g(s):
        one_minus = 1.0 - s
        return f(c + s / one_minus) / (one_minus * one_minus)
    return g


def _truncation_point(f: Integrand, c: float, spec: QuadratureSpec) -> tuple[float, float]:
    np = auto.np
    scale = max(c, 1.0)
    for _ in range(200):
        scale *= 2.0
        value = float(np.asarray(f(np.array([scale])), dtype=float).reshape(-1)[0])
        if not math.isfinite(value):
            raise QuadratureError(f'integrand returned {value!r} at abscissa {scale!r}', abscissa=scale)
        bound = abs(value) * scale
        if bound < spec.absolute_tolerance:
            return scale, bound
    raise QuadratureError(f'integrand tail does not fall below {spec.absolute_tolerance!r}')


def integrate_semi_infinite(
    f: Integrand,
    spec: QuadratureSpec = QuadratureSpec(),
    /,
    *,
    lower: float = 0.0,
    breakpoints: typing.Iterable[float] = (),
) -> QuadratureResult:
    """Integrate f over [lower, inf).

    ``breakpoints`` are characteristic scales of the integrand; the largest
    one separates the finite part from the tail. The tail is either mapped
    onto [0, 1) or truncated, as ``spec.tail_cut_policy`` says.
    """
    points = [float(p) for p in breakpoints if math.isfinite(p) and p > lower]
    c = max(points) if points else lower + 1.0

    edges = _split(lower, c, points)
    pieces = [(f, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]

    match spec.tail_cut_policy:
        case TailCut.MAP:
            pieces.append((_mapped_tail(f, c), 0.0, 1.0))
            return _adapt(pieces, spec)

        case TailCut.TRUNCATE:
            cut, bound = _truncation_point(f, c, spec)
            pieces.append((f, c, cut))
            return _adapt(pieces, spec, extra_error=bound)

    raise NotImplementedError(spec.tail_cut_policy)
