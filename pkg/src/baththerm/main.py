"""
Command-line surface: temperature sweeps, J-function probes and the
zero-point energy.

    baththerm sweep --model srt --gamma 1 --tau 0.01 --theta-min 0.01 --theta-max 10 --points 50
    baththerm jfun 1 0 --method loggamma
    baththerm zeropoint --model srt --gamma 1 --tau 0.01

Data goes to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import typing

from ._auto import auto
from . import config as conf
from .baths import canonicalize
from .errors import BathThermError
from .model import (
    BathSpec,
    ExpansionSpec,
    JMethod,
    Ohmic,
    SweepConfig,
    TemperatureRegime,
    ThermoMethod,
    ThermoPoint,
)
from .stieltjes import j_evaluate
from .thermo import (
    DEFAULT_TERMS,
    series_point,
    thermo_point,
    uncoupled_point,
    zero_point,
    zero_point_ohmic_asymptotic,
)


__all__ = [
    'HBAR',
    'BOLTZMANN',
    'COLUMNS',
    'configure_logger',
    'sweep_table',
    'run_sweep',
    'jfun_probe',
    'zero_point_report',
    'build_parser',
    'main',
    'cli',
]


# CODATA 2018, exact in the 2019 SI for k
HBAR = 1.054571817e-34  # J s
BOLTZMANN = 1.380649e-23  # J / K

COLUMNS = ('theta', 'F', 'S', 'U', 'C', 'method', 'model')


#--- Logging

def configure_logger(level: str = 'WARNING', enable_json_logs: bool = False, logfile: str | None = None):
    structlog = auto.structlog
    timestamper = structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S")

    shared_processors = [
        timestamper,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.contextvars.merge_contextvars,
        structlog.processors.CallsiteParameterAdder(
            {
                structlog.processors.CallsiteParameter.MODULE,
                structlog.processors.CallsiteParameter.FUNC_NAME,
                structlog.processors.CallsiteParameter.THREAD_NAME,
            }
        ),
        structlog.stdlib.ExtraAdder(),
    ]

    structlog.configure(
        processors=shared_processors
        + [structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logs_render = (
        structlog.processors.JSONRenderer()
        if enable_json_logs
        else structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())
    )

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    # stdout carries data
    root.addHandler(_handler(logging.StreamHandler(sys.stderr), shared_processors, logs_render))
    if logfile is not None:
        file_render = (
            structlog.processors.JSONRenderer()
            if enable_json_logs
            else structlog.dev.ConsoleRenderer(colors=False)
        )
        root.addHandler(_handler(logging.FileHandler(logfile, encoding="utf-8"), shared_processors, file_render))
    root.setLevel(getattr(logging, level.upper()))


def _handler(handler: logging.Handler, shared_processors, logs_render) -> logging.Handler:
    structlog = auto.structlog

    # Use `ProcessorFormatter` to format all `logging` entries.
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=shared_processors,
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            logs_render,
        ],
    )
    handler.setFormatter(formatter)
    return handler


#--- Sweep

def _compute(config: SweepConfig, theta: float, method: ThermoMethod) -> ThermoPoint:
    spec = config.model
    match method:
        case ThermoMethod.EXACT_J | ThermoMethod.EXACT_QUADRATURE:
            return thermo_point(canonicalize(spec), theta, method=method, j_method=config.j_method)
        case ThermoMethod.LOW_T_SERIES | ThermoMethod.HIGH_T_SERIES:
            regime = TemperatureRegime.LOW_T if method is ThermoMethod.LOW_T_SERIES else TemperatureRegime.HIGH_T
            n_terms = config.n_terms
            if n_terms is None:
                n_terms = DEFAULT_TERMS[spec.model, regime]
            return series_point(spec, theta, ExpansionSpec(regime=regime, n_terms=n_terms, model=spec.model))
        case ThermoMethod.UNCOUPLED:
            return uncoupled_point(theta)
    raise NotImplementedError(method)


def sweep_table(config: SweepConfig, /):
    """One row per (theta, method), ordered by theta index then method."""
    log = auto.structlog.get_logger(__name__)
    spec = config.model
    bath = canonicalize(spec)

    offset = 0.0
    if config.include_zero_point:
        # F and U gain the zero-point term; S and C do not
        offset = zero_point(bath)

    thetas = [float(t) for t in config.theta_grid.values()]
    tasks = [(theta, method) for theta in thetas for method in config.methods]
    log.info('sweep', model=spec.model, points=len(thetas), methods=[m.value for m in config.methods], workers=config.workers)

    def compute(task):
        return _compute(config, *task)

    if config.workers == 1:
        points = [compute(task) for task in tasks]
    else:
        with auto.futures.ThreadPoolExecutor(max_workers=config.workers) as executor:
            points = list(executor.map(compute, tasks))

    table = auto.pd.DataFrame.from_records(
        [
            (p.theta, p.F + offset, p.S, p.U + offset, p.C, p.method.value, spec.model)
            for p in points
        ],
        columns=list(COLUMNS),
    )

    if config.units.system == 'si':
        energy = HBAR * config.units.omega0_hz
        table['T_kelvin'] = table['theta'] * energy / BOLTZMANN
        table['F'] *= energy
        table['U'] *= energy
        table['S'] *= BOLTZMANN
        table['C'] *= BOLTZMANN

    log.info('sweep done', rows=len(table))
    return table


def _json_number(x: float) -> str:
    x = float(x)
    # JSON has no NaN or Infinity
    if not math.isfinite(x):
        return 'null'
    # 17 significant digits round-trip every double
    return format(x, '.16e')


def _write_json(table, stream: typing.TextIO) -> None:
    numeric = [c for c in table.columns if c not in ('method', 'model')]
    rows = []
    for record in table.to_dict(orient='records'):
        fields = []
        for column in table.columns:
            value = record[column]
            text = _json_number(value) if column in numeric else json.dumps(value)
            fields.append(f'{json.dumps(column)}: {text}')
        rows.append('  {' + ', '.join(fields) + '}')
    stream.write('[\n' + ',\n'.join(rows) + '\n]\n')


def run_sweep(config: SweepConfig, /, stream: typing.TextIO | None = None):
    """Compute the sweep and write it to ``stream`` (stdout by default)."""
    if stream is None:
        stream = sys.stdout
    table = sweep_table(config)
    match config.output_format:
        case 'csv':
            table.to_csv(stream, index=False, float_format='%.11e', lineterminator='\n')
        case 'json':
            _write_json(table, stream)
    return table


#--- Probes

def jfun_probe(z: complex, method: JMethod = JMethod.AUTO, /, *, n_terms: int | None = None, stream: typing.TextIO | None = None):
    """Print J(z) to 15 significant digits with the route that computed it."""
    if stream is None:
        stream = sys.stdout
    result = j_evaluate(z, method, n_terms=n_terms)
    value = result.value
    sign = '-' if math.copysign(1.0, value.imag) < 0 else '+'
    print(f'J({z.real:.15g}{z.imag:+.15g}j) = {value.real:.15g} {sign} {abs(value.imag):.15g}j', file=stream)
    print(f'method: {result.method.value}', file=stream)
    if result.bound is not None:
        print(f'truncation bound: {result.bound:.3e}', file=stream)
    return result


def zero_point_report(spec: BathSpec, /, *, tau_scaled: float = 0.01, stream: typing.TextIO | None = None) -> float:
    """Zero-point free energy in units of hbar omega0.

    The Ohmic value diverges as tau -> 0 and is reported from its small-tau
    form at ``tau_scaled`` = tau omega0; QED raises DivergenceError.
    """
    if stream is None:
        stream = sys.stdout
    if isinstance(spec, Ohmic):
        canonicalize(spec)
        value = zero_point_ohmic_asymptotic(spec.omega0, spec.gamma, tau_scaled / spec.omega0)
        print(f'zero_point = {value:.15g} hbar*omega0 (ohmic, small-tau form, tau*omega0 = {tau_scaled:.6g})', file=stream)
        return value

    value = zero_point(canonicalize(spec))
    print(f'zero_point = {value:.15g} hbar*omega0 ({spec.model})', file=stream)
    return value


#--- Command line

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', default=None, help='TOML file; flags override it')
    parser.add_argument('--log-level', default=None, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], type=str.upper)
    parser.add_argument('--json-logs', action='store_const', const=True, default=None)


def _add_model(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--model', default=None, choices=['ohmic', 'srt', 'qed'])
    parser.add_argument('--gamma', type=float, default=None, help='friction, in units of omega0')
    parser.add_argument('--omega0', type=float, default=None)
    parser.add_argument('--tau', type=float, default=None, help='relaxation time tau*omega0 (srt; ohmic zero point)')
    parser.add_argument('--omega-prime', type=float, default=None, help='QED cutoff Omega\'/omega0')
    parser.add_argument('--large-cutoff', action='store_const', const=True, default=None, help='QED with Omega\' -> infinity')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='baththerm', description='Thermodynamics of an oscillator in a heat bath.')
    commands = parser.add_subparsers(dest='command', required=True)

    sweep = commands.add_parser('sweep', help='F, S, U, C over a temperature grid')
    _add_common(sweep)
    _add_model(sweep)
    sweep.add_argument('--theta-min', type=float, default=None)
    sweep.add_argument('--theta-max', type=float, default=None)
    sweep.add_argument('--points', type=int, default=None)
    spacing = sweep.add_mutually_exclusive_group()
    spacing.add_argument('--log', dest='spacing', action='store_const', const='log', default=None)
    spacing.add_argument('--linear', dest='spacing', action='store_const', const='linear')
    sweep.add_argument('--method', default=None, help='comma-separated: exact_j, exact_quadrature, low_T_series, high_T_series, uncoupled')
    sweep.add_argument('--format', default=None, choices=['csv', 'json'])
    sweep.add_argument('--units', default=None, choices=['reduced', 'si'])
    sweep.add_argument('--omega0-hz', type=float, default=None, help='angular frequency omega0 in s^-1 (si units)')
    sweep.add_argument('--j-method', default=None, help='J-function route for exact_j')
    sweep.add_argument('--terms', type=int, default=None, help='series orders')
    sweep.add_argument('--include-zero-point', action='store_const', const=True, default=None)
    sweep.add_argument('--workers', type=int, default=None)

    jfun = commands.add_parser('jfun', help='evaluate J(re + i im)')
    _add_common(jfun)
    jfun.add_argument('re', type=float)
    jfun.add_argument('im', type=float)
    jfun.add_argument('--method', type=JMethod, default=JMethod.AUTO, metavar='{' + ','.join(m.value for m in JMethod) + '}')
    jfun.add_argument('--terms', type=int, default=None)

    zeropoint = commands.add_parser('zeropoint', help='zero-point free energy')
    _add_common(zeropoint)
    _add_model(zeropoint)

    return parser


def _overrides(args: argparse.Namespace) -> dict:
    def get(name):
        return getattr(args, name, None)

    return {
        'model': {
            'name': get('model'),
            'gamma': get('gamma'),
            'omega0': get('omega0'),
            'tau': get('tau'),
            'omega_prime': get('omega_prime'),
            'large_cutoff_limit': get('large_cutoff'),
        },
        'grid': {
            'theta_min': get('theta_min'),
            'theta_max': get('theta_max'),
            'points': get('points'),
            'spacing': get('spacing'),
        },
        'output': {
            'format': get('format'),
            'units': get('units'),
            'omega0_hz': get('omega0_hz'),
            'methods': get('method') if args.command == 'sweep' else None,
            'j_method': get('j_method'),
            'terms': get('terms') if args.command == 'sweep' else None,
            'include_zero_point': get('include_zero_point'),
            'workers': get('workers'),
        },
        'logging': {
            'level': get('log_level'),
            'json_logs': get('json_logs'),
        },
    }


def main(argv: typing.Sequence[str] | None = None, /) -> int:
    args = build_parser().parse_args(argv)

    try:
        config = conf.Config(conf.merge(conf.load(args.config), _overrides(args)))
    except BathThermError as e:
        print(f'baththerm: error: {e}', file=sys.stderr)
        return e.exit_code

    configure_logger(config.logging.level, config.logging.json_logs, config.logging.logfile)
    log = auto.structlog.get_logger(__name__)

    try:
        match args.command:
            case 'sweep':
                run_sweep(config.sweep_config())
            case 'jfun':
                jfun_probe(complex(args.re, args.im), args.method, n_terms=args.terms)
            case 'zeropoint':
                zero_point_report(config.model.spec(), tau_scaled=config.model.tau)
    except BathThermError as e:
        log.error('failed', command=args.command, error=type(e).__name__)
        print(f'baththerm: error: {e}', file=sys.stderr)
        return e.exit_code

    return 0


def cli():
    sys.exit(main())
