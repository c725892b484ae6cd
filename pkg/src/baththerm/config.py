"""
TOML configuration for sweeps.

Sections ``[model]``, ``[grid]``, ``[output]`` and ``[logging]``, each
wrapped in a class with a ``validate`` method. Command-line flags are
merged over the file before validation; environment variables play no part.
"""

from __future__ import annotations

import math
import typing

from ._auto import auto
from .errors import ConfigError, InvalidParameterError
from .model import (
    QED,
    BathSpec,
    JMethod,
    Ohmic,
    SingleRelaxationTime,
    SweepConfig,
    ThermoMethod,
    ThetaGrid,
    Units,
)


__all__ = [
    'ModelConfig',
    'GridConfig',
    'OutputConfig',
    'LoggingConfig',
    'Config',
    'load',
    'merge',
]


def _number(section: str, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f'[{section}] {key} must be a number, got {value!r}')
    return float(value)


def _unknown(section: str, data: typing.Mapping, known: typing.Collection[str]) -> None:
    extra = sorted(set(data) - set(known))
    if extra:
        raise ConfigError(f'[{section}] has unknown keys: {", ".join(extra)}')


class ModelConfig:
    _keys = ('name', 'gamma', 'omega0', 'tau', 'omega_prime', 'large_cutoff_limit')
    _valid_names = ('ohmic', 'srt', 'qed')

    def __init__(self, model_data: typing.Mapping):
        self.data = dict(model_data)
        self._name = self.data.get('name', 'ohmic')
        self._gamma = self.data.get('gamma', 1.0)
        self._omega0 = self.data.get('omega0', 1.0)
        self._tau = self.data.get('tau', 0.01)
        self._omega_prime = self.data.get('omega_prime', math.inf)
        self._large_cutoff_limit = self.data.get('large_cutoff_limit', False)

    def validate(self):
        _unknown('model', self.data, self._keys)
        if self._name not in self._valid_names:
            raise ConfigError(f'[model] name must be one of {", ".join(self._valid_names)}, got {self._name!r}')
        for key in ('gamma', 'omega0', 'tau', 'omega_prime'):
            _number('model', key, getattr(self, f'_{key}'))
        if not isinstance(self._large_cutoff_limit, bool):
            raise ConfigError(f'[model] large_cutoff_limit must be true or false, got {self._large_cutoff_limit!r}')
        try:
            self.spec().validate()
        except InvalidParameterError as e:
            raise ConfigError(f'[model] {e}') from e

    @property
    def name(self) -> str:
        return self._name

    @property
    def tau(self) -> float:
        return float(self._tau)

    def spec(self) -> BathSpec:
        """The bath model; tau and omega_prime are in units of 1/omega0 and omega0."""
        match self._name:
            case 'ohmic':
                return Ohmic(gamma=float(self._gamma), omega0=float(self._omega0))
            case 'srt':
                return SingleRelaxationTime(
                    gamma=float(self._gamma),
                    omega0=float(self._omega0),
                    tau_scaled=float(self._tau),
                )
            case 'qed':
                return QED(
                    gamma=float(self._gamma),
                    omega0=float(self._omega0),
                    omega_prime_scaled=float(self._omega_prime),
                    large_cutoff_limit=self._large_cutoff_limit,
                )
        raise ConfigError(f'unknown model {self._name!r}')


class GridConfig:
    _keys = ('theta_min', 'theta_max', 'points', 'spacing')

    def __init__(self, grid_data: typing.Mapping):
        self.data = dict(grid_data)
        self._theta_min = self.data.get('theta_min', 0.01)
        self._theta_max = self.data.get('theta_max', 10.0)
        self._points = self.data.get('points', 50)
        self._spacing = self.data.get('spacing', 'log')

    def validate(self):
        _unknown('grid', self.data, self._keys)
        _number('grid', 'theta_min', self._theta_min)
        _number('grid', 'theta_max', self._theta_max)
        if isinstance(self._points, bool) or not isinstance(self._points, int):
            raise ConfigError(f'[grid] points must be an integer, got {self._points!r}')
        try:
            self.theta_grid()
        except InvalidParameterError as e:
            raise ConfigError(f'[grid] {e}') from e

    def theta_grid(self) -> ThetaGrid:
        return ThetaGrid(
            min=float(self._theta_min),
            max=float(self._theta_max),
            count=self._points,
            spacing=self._spacing,
        )


class OutputConfig:
    _keys = (
        'format', 'units', 'omega0_hz', 'methods', 'j_method',
        'terms', 'include_zero_point', 'workers',
    )

    def __init__(self, output_data: typing.Mapping):
        self.data = dict(output_data)
        self._format = self.data.get('format', 'csv')
        self._units = self.data.get('units', 'reduced')
        self._omega0_hz = self.data.get('omega0_hz', None)
        self._methods = self.data.get('methods', ['exact_j'])
        self._j_method = self.data.get('j_method', 'regional')
        self._terms = self.data.get('terms', None)
        self._include_zero_point = self.data.get('include_zero_point', False)
        self._workers = self.data.get('workers', 1)

    def validate(self):
        _unknown('output', self.data, self._keys)
        if self._format not in ('csv', 'json'):
            raise ConfigError(f'[output] format must be csv or json, got {self._format!r}')
        if isinstance(self._methods, str):
            self._methods = [m for m in self._methods.split(',') if m]
        try:
            self.methods()
            self.j_method()
            self.units()
        except ValueError as e:
            raise ConfigError(f'[output] {e}') from e
        if self._terms is not None and (isinstance(self._terms, bool) or not isinstance(self._terms, int) or self._terms < 0):
            raise ConfigError(f'[output] terms must be a non-negative integer, got {self._terms!r}')
        if isinstance(self._workers, bool) or not isinstance(self._workers, int) or self._workers < 1:
            raise ConfigError(f'[output] workers must be a positive integer, got {self._workers!r}')

    def methods(self) -> tuple[ThermoMethod, ...]:
        # set semantics, first mention wins
        return tuple(dict.fromkeys(ThermoMethod(m) for m in self._methods))

    def j_method(self) -> JMethod:
        return JMethod(self._j_method)

    def units(self) -> Units:
        omega0_hz = None if self._omega0_hz is None else float(self._omega0_hz)
        return Units(system=self._units, omega0_hz=omega0_hz)

    @property
    def format(self) -> str:
        return self._format

    @property
    def terms(self) -> int | None:
        return self._terms

    @property
    def include_zero_point(self) -> bool:
        return bool(self._include_zero_point)

    @property
    def workers(self) -> int:
        return self._workers


class LoggingConfig:
    _keys = ('level', 'json_logs', 'logfile')
    _valid_levels = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

    def __init__(self, logging_data: typing.Mapping):
        self.data = dict(logging_data)
        self._level = str(self.data.get('level', 'WARNING')).upper()
        self._json_logs = self.data.get('json_logs', False)
        self._logfile = self.data.get('logfile', None)

    def validate(self):
        _unknown('logging', self.data, self._keys)
        if self._level not in self._valid_levels:
            raise ConfigError(f'[logging] level must be one of {", ".join(self._valid_levels)}, got {self._level!r}')
        if not isinstance(self._json_logs, bool):
            raise ConfigError(f'[logging] json_logs must be true or false, got {self._json_logs!r}')
        if self._logfile is not None and not isinstance(self._logfile, str):
            raise ConfigError(f'[logging] logfile must be a string, got {self._logfile!r}')

    @property
    def level(self) -> str:
        return self._level

    @property
    def json_logs(self) -> bool:
        return self._json_logs

    @property
    def logfile(self) -> str | None:
        return self._logfile


# Overall configuration
class Config:
    _sections = ('model', 'grid', 'output', 'logging')

    def __init__(self, config_data: typing.Mapping):
        self.config = dict(config_data)
        _unknown('config', self.config, self._sections)
        for name in self._sections:
            if not isinstance(self.config.get(name, {}), typing.Mapping):
                raise ConfigError(f'[{name}] must be a table')

        self._model = ModelConfig(self.config.get('model', {}))
        self._grid = GridConfig(self.config.get('grid', {}))
        self._output = OutputConfig(self.config.get('output', {}))
        self._logging = LoggingConfig(self.config.get('logging', {}))

        self._logging.validate()
        self._model.validate()
        self._grid.validate()
        self._output.validate()

    @property
    def model(self) -> ModelConfig:
        return self._model

    @property
    def grid(self) -> GridConfig:
        return self._grid

    @property
    def output(self) -> OutputConfig:
        return self._output

    @property
    def logging(self) -> LoggingConfig:
        return self._logging

    def sweep_config(self) -> SweepConfig:
        try:
            return SweepConfig(
                model=self._model.spec(),
                theta_grid=self._grid.theta_grid(),
                methods=self._output.methods(),
                output_format=self._output.format,
                units=self._output.units(),
                n_terms=self._output.terms,
                j_method=self._output.j_method(),
                include_zero_point=self._output.include_zero_point,
                workers=self._output.workers,
            )
        except InvalidParameterError as e:
            raise ConfigError(str(e)) from e


def load(path: str | None, /) -> dict:
    """Raw tables of a TOML file; an empty mapping for no file."""
    if path is None:
        return {}
    try:
        with open(path, 'rb') as f:
            return auto.tomli.load(f)
    except OSError as e:
        raise ConfigError(f'cannot read config file {path!r}: {e.strerror}') from e
    except auto.tomli.TOMLDecodeError as e:
        raise ConfigError(f'config file {path!r} is not valid TOML: {e}') from e


def merge(data: typing.Mapping, overrides: typing.Mapping[str, typing.Mapping], /) -> dict:
    """Section-wise overlay of ``overrides`` on ``data``; None values are skipped."""
    merged = {
        name: dict(section) if isinstance(section, typing.Mapping) else section
        for name, section in data.items()
    }
    for name, section in overrides.items():
        values = {k: v for k, v in section.items() if v is not None}
        if not values:
            continue
        if not isinstance(merged.setdefault(name, {}), dict):
            raise ConfigError(f'[{name}] must be a table')
        merged[name].update(values)
    return merged
