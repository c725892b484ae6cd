import math

import pytest

from baththerm import config as conf
from baththerm.errors import ConfigError
from baththerm.model import QED, JMethod, Ohmic, SingleRelaxationTime, ThermoMethod


def test_defaults():
    config = conf.Config({})
    sweep = config.sweep_config()

    assert sweep.model == Ohmic(gamma=1.0, omega0=1.0)
    assert sweep.theta_grid.min == 0.01
    assert sweep.theta_grid.max == 10.0
    assert sweep.theta_grid.count == 50
    assert sweep.theta_grid.spacing == 'log'
    assert sweep.methods == (ThermoMethod.EXACT_J,)
    assert sweep.j_method is JMethod.REGIONAL
    assert sweep.output_format == 'csv'
    assert sweep.units.system == 'reduced'
    assert sweep.n_terms is None
    assert not sweep.include_zero_point
    assert sweep.workers == 1
    assert config.logging.level == 'WARNING'
    assert config.logging.json_logs is False
    assert config.logging.logfile is None


def test_models():
    srt = conf.Config({'model': {'name': 'srt', 'gamma': 0.5, 'tau': 0.02}}).model.spec()
    assert srt == SingleRelaxationTime(gamma=0.5, omega0=1.0, tau_scaled=0.02)

    qed = conf.Config({'model': {'name': 'qed', 'gamma': 0.1, 'omega_prime': 1e3}}).model.spec()
    assert qed == QED(gamma=0.1, omega0=1.0, omega_prime_scaled=1e3)

    large = conf.Config({'model': {'name': 'qed', 'gamma': 0.1, 'large_cutoff_limit': True}}).model.spec()
    assert math.isinf(large.omega_prime)


def test_integer_values_are_numbers():
    spec = conf.Config({'model': {'gamma': 2, 'omega0': 3}}).model.spec()
    assert spec == Ohmic(gamma=2.0, omega0=3.0)


@pytest.mark.parametrize('data', [
    {'model': {'name': 'drude'}},
    {'model': {'gamma': -1.0}},
    {'model': {'gamma': 'one'}},
    {'model': {'gamma': True}},
    {'model': {'name': 'srt', 'gamma': 1.0, 'tau': 2.0}},
    {'model': {'large_cutoff_limit': 'yes'}},
    {'model': {'cutoff': 1.0}},
    {'grid': {'theta_min': 0.0}},
    {'grid': {'theta_min': 2.0, 'theta_max': 1.0}},
    {'grid': {'points': 2.5}},
    {'grid': {'spacing': 'cubic'}},
    {'output': {'format': 'xml'}},
    {'output': {'methods': ['exact']}},
    {'output': {'j_method': 'simpson'}},
    {'output': {'units': 'si'}},
    {'output': {'terms': -1}},
    {'output': {'workers': 0}},
    {'logging': {'level': 'LOUD'}},
    {'logging': {'json_logs': 1}},
    {'logging': {'logfile': 3}},
    {'logging': {'logfile': ['a.log']}},
    {'plot': {}},
    {'model': 'ohmic'},
])
def test_invalid(data):
    with pytest.raises(ConfigError) as excinfo:
        conf.Config(data).sweep_config()
    assert excinfo.value.exit_code == 2


def test_methods():
    output = conf.Config({'output': {'methods': 'exact_j,uncoupled,exact_j'}}).output
    assert output.methods() == (ThermoMethod.EXACT_J, ThermoMethod.UNCOUPLED)

    output = conf.Config({'output': {'methods': ['low_T_series', 'high_T_series']}}).output
    assert output.methods() == (ThermoMethod.LOW_T_SERIES, ThermoMethod.HIGH_T_SERIES)


def test_si_units():
    units = conf.Config({'output': {'units': 'si', 'omega0_hz': 1e13}}).output.units()
    assert units.system == 'si'
    assert units.omega0_hz == 1e13


def test_log_level_is_case_insensitive():
    assert conf.Config({'logging': {'level': 'debug'}}).logging.level == 'DEBUG'


def test_load(tmp_path):
    path = tmp_path / 'sweep.toml'
    path.write_text(
        '[model]\n'
        'name = "srt"\n'
        'gamma = 1.0\n'
        'tau = 0.01\n'
        '\n'
        '[grid]\n'
        'theta_min = 0.1\n'
        'theta_max = 1.0\n'
        'points = 5\n'
    )

    data = conf.load(str(path))
    assert data['model']['name'] == 'srt'
    assert data['grid']['points'] == 5
    assert conf.load(None) == {}


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError, match='cannot read'):
        conf.load(str(tmp_path / 'missing.toml'))

    path = tmp_path / 'broken.toml'
    path.write_text('[model\nname = "srt"\n')
    with pytest.raises(ConfigError, match='not valid TOML'):
        conf.load(str(path))


def test_merge():
    data = {'model': {'name': 'srt', 'gamma': 0.5}, 'grid': {'points': 5}}
    overrides = {
        'model': {'gamma': 0.25, 'tau': None},
        'grid': {'points': None},
        'output': {'format': 'json'},
        'logging': {'level': None},
    }

    merged = conf.merge(data, overrides)

    assert merged == {
        'model': {'name': 'srt', 'gamma': 0.25},
        'grid': {'points': 5},
        'output': {'format': 'json'},
    }
    # inputs untouched
    assert data['model']['gamma'] == 0.5


def test_merge_over_non_table():
    with pytest.raises(ConfigError, match='must be a table'):
        conf.merge({'model': 'ohmic'}, {'model': {'gamma': 1.0}})
