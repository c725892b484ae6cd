import io
import json
import logging
import math

import numpy as np
import pandas as pd
import pytest
import structlog

import baththerm
from baththerm.baths import canonicalize
from baththerm.main import BOLTZMANN, COLUMNS, HBAR, _write_json, cli, main, run_sweep, sweep_table
from baththerm.model import (
    JMethod,
    Ohmic,
    SingleRelaxationTime,
    SweepConfig,
    ThermoMethod,
    ThetaGrid,
    Units,
)
from baththerm.thermo import zero_point


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    structlog.reset_defaults()
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.setLevel(logging.WARNING)


def sweep(capsys, *args):
    status = main(['sweep', *args])
    captured = capsys.readouterr()
    assert status == 0, captured.err
    return captured.out


def test_sweep_csv(capsys):
    out = sweep(capsys, '--model', 'ohmic', '--gamma', '0.5', '--theta-min', '0.01', '--theta-max', '10', '--points', '50')

    lines = out.splitlines()
    assert lines[0] == 'theta,F,S,U,C,method,model'
    assert len(lines) == 51

    table = pd.read_csv(io.StringIO(out))
    assert list(table.columns) == list(COLUMNS)
    assert (table['method'] == 'exact_j').all()
    assert (table['model'] == 'ohmic').all()
    assert table['theta'].iloc[0] == pytest.approx(0.01, rel=1e-11)
    assert table['theta'].iloc[-1] == pytest.approx(10.0, rel=1e-11)
    assert table['theta'].is_monotonic_increasing
    # entropy and energy grow with temperature
    assert table['S'].is_monotonic_increasing
    assert table['U'].is_monotonic_increasing


def test_sweep_is_deterministic(capsys):
    args = ('--model', 'srt', '--gamma', '1', '--tau', '0.01', '--points', '20', '--method', 'exact_j,low_T_series')
    assert sweep(capsys, *args) == sweep(capsys, *args)


def test_sweep_routes_agree(capsys):
    out = sweep(
        capsys,
        '--model', 'srt', '--gamma', '1', '--tau', '0.01',
        '--theta-min', '0.05', '--theta-max', '5', '--points', '10',
        '--method', 'exact_j,exact_quadrature',
    )

    table = pd.read_csv(io.StringIO(out))
    assert len(table) == 20
    # rows ordered by theta, then method
    assert list(table['method'][:2]) == ['exact_j', 'exact_quadrature']

    exact = table[table['method'] == 'exact_j'].reset_index(drop=True)
    quadrature = table[table['method'] == 'exact_quadrature'].reset_index(drop=True)
    assert (exact['theta'] == quadrature['theta']).all()
    for a, b in zip(exact['F'], quadrature['F']):
        assert a == pytest.approx(b, abs=1e-8)
    for a, b in zip(exact['S'], quadrature['S']):
        assert a == pytest.approx(b, abs=1e-6)


def test_json_round_trips(capsys):
    config = SweepConfig(
        model=SingleRelaxationTime(gamma=1.0, tau_scaled=0.01),
        theta_grid=ThetaGrid(min=0.1, max=2.0, count=5),
        output_format='json',
    )
    stream = io.StringIO()
    table = run_sweep(config, stream)

    rows = json.loads(stream.getvalue())
    assert len(rows) == len(table)
    for row, record in zip(rows, table.to_dict(orient='records')):
        assert list(row) == list(COLUMNS)
        assert row == record


def test_json_from_cli(capsys):
    out = sweep(capsys, '--format', 'json', '--points', '3', '--method', 'uncoupled')
    rows = json.loads(out)
    assert [row['method'] for row in rows] == ['uncoupled'] * 3
    assert rows[0]['theta'] == 0.01


def test_json_non_finite_values_are_null():
    table = pd.DataFrame({
        'theta': [0.5, 1.0, 2.0],
        'F': [-0.25, math.nan, math.inf],
        'S': [0.1, 0.2, -math.inf],
        'U': [0.0, 0.0, 0.0],
        'C': [1.0, 1.0, 1.0],
        'method': ['exact_j'] * 3,
        'model': ['qed'] * 3,
    })
    stream = io.StringIO()
    _write_json(table, stream)

    assert 'NaN' not in stream.getvalue()
    assert 'Infinity' not in stream.getvalue()
    rows = json.loads(stream.getvalue())
    assert rows[0]['F'] == -0.25
    assert rows[1]['F'] is None
    assert rows[2]['F'] is None
    assert rows[2]['S'] is None
    assert rows[1]['S'] == 0.2


def test_si_units():
    omega0_hz = 1e13
    config = SweepConfig(
        model=Ohmic(gamma=0.5),
        theta_grid=ThetaGrid(min=0.5, max=2.0, count=3),
        units=Units(system='si', omega0_hz=omega0_hz),
    )
    reduced = sweep_table(SweepConfig(model=config.model, theta_grid=config.theta_grid))
    si = sweep_table(config)

    energy = HBAR * omega0_hz
    assert list(si.columns) == [*COLUMNS, 'T_kelvin']
    for name, scale in (('F', energy), ('U', energy), ('S', BOLTZMANN), ('C', BOLTZMANN)):
        assert list(si[name]) == pytest.approx(list(reduced[name] * scale), rel=1e-14)
    assert list(si['T_kelvin']) == pytest.approx(list(reduced['theta'] * energy / BOLTZMANN), rel=1e-14)
    assert list(si['theta']) == list(reduced['theta'])


def test_workers_preserve_order():
    grid = ThetaGrid(min=0.05, max=5.0, count=12)
    methods = (ThermoMethod.EXACT_J, ThermoMethod.HIGH_T_SERIES, ThermoMethod.UNCOUPLED)
    serial = sweep_table(SweepConfig(model=Ohmic(gamma=0.5), theta_grid=grid, methods=methods))
    parallel = sweep_table(SweepConfig(model=Ohmic(gamma=0.5), theta_grid=grid, methods=methods, workers=4))

    pd.testing.assert_frame_equal(serial, parallel)


def test_include_zero_point():
    spec = SingleRelaxationTime(gamma=1.0, tau_scaled=0.01)
    grid = ThetaGrid(min=0.1, max=1.0, count=3)
    thermal = sweep_table(SweepConfig(model=spec, theta_grid=grid))
    total = sweep_table(SweepConfig(model=spec, theta_grid=grid, include_zero_point=True))

    offset = zero_point(canonicalize(spec))
    assert list(total['F']) == pytest.approx(list(thermal['F'] + offset), rel=1e-14)
    assert list(total['U']) == pytest.approx(list(thermal['U'] + offset), rel=1e-14)
    assert list(total['S']) == list(thermal['S'])
    assert list(total['C']) == list(thermal['C'])


def test_config_file_and_flags(tmp_path, capsys):
    path = tmp_path / 'sweep.toml'
    path.write_text(
        '[model]\n'
        'name = "srt"\n'
        'gamma = 0.5\n'
        '\n'
        '[grid]\n'
        'theta_min = 0.5\n'
        'theta_max = 1.0\n'
        'points = 2\n'
        '\n'
        '[output]\n'
        'methods = ["uncoupled"]\n'
    )

    out = sweep(capsys, '--config', str(path), '--points', '4')
    table = pd.read_csv(io.StringIO(out))
    assert len(table) == 4
    assert (table['model'] == 'srt').all()
    assert (table['method'] == 'uncoupled').all()
    assert table['theta'].iloc[0] == pytest.approx(0.5, rel=1e-11)


@pytest.mark.parametrize('args', [
    ['sweep', '--theta-min', '0'],
    ['sweep', '--model', 'srt', '--gamma', '1', '--tau', '2'],
    ['sweep', '--method', 'exact'],
    ['sweep', '--units', 'si'],
    ['sweep', '--workers', '0'],
    ['sweep', '--j-method', 'simpson'],
])
def test_invalid_config(args, capsys):
    assert main(args) == 2
    captured = capsys.readouterr()
    assert captured.out == ''
    assert captured.err.startswith('baththerm: error: ')


def test_missing_config_file(tmp_path, capsys):
    assert main(['sweep', '--config', str(tmp_path / 'missing.toml')]) == 2
    assert 'cannot read' in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(['sweep', '--model', 'drude'])
    assert excinfo.value.code == 2

    with pytest.raises(SystemExit) as excinfo:
        main(['jfun', '1', '0', '--method', 'simpson'])
    assert excinfo.value.code == 2


def test_jfun_log_gamma(capsys):
    assert main(['jfun', '1', '0', '--method', 'loggamma']) == 0
    lines = capsys.readouterr().out.splitlines()

    assert lines[0].startswith('J(1+0j) = 0.0810614667953')
    assert lines[1] == 'method: log_gamma'
    assert len(lines) == 2


def test_jfun_asymptotic_reports_bound(capsys):
    assert main(['jfun', '10', '0', '--method', 'asymptotic', '--terms', '3']) == 0
    lines = capsys.readouterr().out.splitlines()

    assert lines[0].startswith('J(10+0j) = 0.008330563')
    assert lines[1] == 'method: asymptotic'
    assert lines[2].startswith('truncation bound: ')
    assert 0 < float(lines[2].split(': ')[1]) < 1e-8


def test_jfun_left_half_plane(capsys):
    assert main(['jfun', '-1', '1']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == 'method: continuation'


def test_jfun_auto_right_half_plane(capsys):
    assert main(['jfun', '2', '0.5']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('J(2+0.5j) = ')
    assert lines[1] == 'method: ' + JMethod.LANCZOS.value


def test_jfun_branch_cut(capsys):
    assert main(['jfun', '-2', '0']) == 2
    assert capsys.readouterr().err.startswith('baththerm: error: ')


def test_zeropoint_srt(capsys):
    assert main(['zeropoint', '--model', 'srt', '--gamma', '1', '--tau', '0.01']) == 0
    out = capsys.readouterr().out

    expected = zero_point(canonicalize(SingleRelaxationTime(gamma=1.0, tau_scaled=0.01)))
    assert out == f'zero_point = {expected:.15g} hbar*omega0 (srt)\n'


def test_zeropoint_ohmic_uses_small_tau_form(capsys):
    assert main(['zeropoint', '--model', 'ohmic', '--gamma', '1', '--tau', '0.001']) == 0
    out = capsys.readouterr().out
    assert 'small-tau form' in out
    assert 'tau*omega0 = 0.001' in out


def test_zeropoint_qed_diverges(capsys):
    assert main(['zeropoint', '--model', 'qed', '--gamma', '0.1', '--omega-prime', '1000']) == 4
    captured = capsys.readouterr()
    assert captured.out == ''
    assert 'diverges for the QED model' in captured.err


def test_qed_low_temperature_sweep_scales_as_theta_to_the_fourth(capsys):
    out = sweep(
        capsys,
        '--model', 'qed', '--gamma', '0.1', '--omega-prime', '1e6',
        '--theta-min', '1e-3', '--theta-max', '1e-2', '--points', '8',
        '--method', 'exact_j,low_T_series',
    )

    table = pd.read_csv(io.StringIO(out))
    assert len(table) == 16
    for method in ('exact_j', 'low_T_series'):
        rows = table[table['method'] == method]
        assert (rows['F'] < 0).all()
        slope, _ = np.polyfit(np.log(rows['theta']), np.log(-rows['F']), 1)
        assert slope == pytest.approx(4.0, abs=0.02), method


def test_module_entry_point():
    import baththerm.__main__ as entry

    assert entry.cli is cli
    # importing the package does not pull in the command line
    assert not hasattr(baththerm, 'cli')
