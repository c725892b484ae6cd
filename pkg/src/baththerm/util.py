from __future__ import annotations

import functools
import math
import typing

from ._auto import auto


__all__ = [
    'not_implemented',
    'dispatch',
    'reciprocal',
    'log1mexp',
    'clog1mexp',
]


def not_implemented(*args, **kwargs):
    kind = type(args[0]).__name__ if args else 'call'
    raise NotImplementedError(f'no implementation registered for {kind}')


def dispatch(default_func: typing.Callable, /):
    """Single dispatch on the first positional argument.

    Calls with no positional arguments go straight to ``default_func``.
    """
    dispatcher = functools.singledispatch(default_func)

    @functools.wraps(default_func)
    def wrapper(*args, **kwargs):
        if args:
            return dispatcher(*args, **kwargs)

        return default_func(*args, **kwargs)

    wrapper.register = dispatcher.register
    wrapper.registry = dispatcher.registry
    return wrapper


def reciprocal(x: float, /) -> float:
    """1/x with 1/inf = 0."""
    if math.isinf(x):
        return 0.0
    return 1.0 / x


def log1mexp(x, /):
    """log(1 - exp(-x)) for x > 0, accurate at both ends. Scalars or arrays."""
    np = auto.np
    x = np.asarray(x, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        near = np.log(-np.expm1(-x))
        far = np.log1p(-np.exp(-x))
    out = np.where(x < 0.7, near, far)
    if out.ndim == 0:
        return float(out)
    return out


def clog1mexp(w: complex, /) -> complex:
    """Principal log(1 - exp(w)) for complex w with Re w <= 0."""
    np = auto.np
    if w.real > -0.7:
        # exp(w) near the unit circle: reduce Im w so expm1 sees a small argument near 2 pi k
        turns = round(w.imag / (2.0 * math.pi))
        w = complex(w.real, w.imag - 2.0 * math.pi * turns)
        return complex(np.log(-np.expm1(w)))
    return complex(np.log1p(-np.exp(w)))
