import json
import math
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner, Result

import commands.simulate_command
from app import create_cli
from config import Config
from models.trace import TRACE_COLUMNS
from services.exceptions import InfeasiblePlanError

from conftest import MIKRON_FILE


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def _invoke(runner: CliRunner, *args: str) -> Result:
    return runner.invoke(create_cli(), list(args))


def _simulate(runner: CliRunner, tmp_path: Path, *args: str) -> Result:
    return _invoke(
        runner, 'simulate', '--machine', str(MIKRON_FILE),
        '--trace', str(tmp_path / 'trace.csv'), '--summary', str(tmp_path / 'summary.json'), *args,
    )


def _summary(tmp_path: Path) -> dict[str, Any]:
    data: dict[str, Any] = json.loads((tmp_path / 'summary.json').read_text())
    return data


@pytest.mark.parametrize('command', ['simulate', 'limits', 'metrics', 'generate'])
def test_help(runner: CliRunner, command: str) -> None:
    result = _invoke(runner, command, '--help')
    assert result.exit_code == 0
    assert 'Usage' in result.output


@pytest.mark.parametrize('radius_mm, v_st_m_min', [('30', 6.0), ('2.5', 2.01)])
def test_simulate_circle(runner: CliRunner, tmp_path: Path, radius_mm: str, v_st_m_min: float) -> None:
    result = _simulate(runner, tmp_path, '--generate', 'circle', '--radius-mm', radius_mm, '--feed-mm-min', '6000')
    assert result.exit_code == 0, result.output
    summary = _summary(tmp_path)
    assert summary['blocks'][0]['v_st_m_min'] == pytest.approx(v_st_m_min, rel=0.01)
    assert summary['total_time_s'] == pytest.approx(sum(summary['block_times_s']))
    frame = pd.read_csv(tmp_path / 'trace.csv')
    assert tuple(frame.columns) == TRACE_COLUMNS
    assert frame['v_m_min'].max() == pytest.approx(v_st_m_min, rel=0.01)


def test_simulate_is_deterministic(runner: CliRunner, tmp_path: Path) -> None:
    outputs = []
    for run in ('a', 'b'):
        folder = tmp_path / run
        folder.mkdir()
        result = _simulate(runner, folder, '--generate', 'quarterspiral', '--feed-mm-min', '12000',
                           '--incline-deg', '30', '--plot', str(folder / 'feed.svg'))
        assert result.exit_code == 0, result.output
        outputs.append(tuple((folder / name).read_bytes() for name in ('trace.csv', 'summary.json', 'feed.svg')))
    assert outputs[0] == outputs[1]
    assert outputs[0][2].lstrip().startswith(b'<?xml')


def test_simulate_reports_junctions(runner: CliRunner, tmp_path: Path) -> None:
    result = _simulate(runner, tmp_path, '--generate', 'bore', '--cutting-speed-m-min', '470')
    assert result.exit_code == 0, result.output
    junctions = _summary(tmp_path)['junctions']
    assert len(junctions) == 2
    assert junctions[0]['vfr_m_min'] == pytest.approx(0.9, rel=1e-3)


def test_sample_step_option(runner: CliRunner, tmp_path: Path) -> None:
    result = _simulate(runner, tmp_path, '--generate', 'circle', '--feed-mm-min', '6000', '--sample-ms', '10')
    assert result.exit_code == 0, result.output
    rows = len(pd.read_csv(tmp_path / 'trace.csv'))
    assert 217 <= rows <= 230


def test_sample_step_from_configuration(runner: CliRunner, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(Config, 'SAMPLE_MS', '20')
    result = _simulate(runner, tmp_path, '--generate', 'circle', '--feed-mm-min', '6000')
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(tmp_path / 'trace.csv')) < 120


@pytest.mark.parametrize('sample_ms', ['abc', '0', '-5'])
def test_bad_configured_sample_step_exits_1(runner: CliRunner, tmp_path: Path, monkeypatch: pytest.MonkeyPatch,
                                            sample_ms: str) -> None:
    monkeypatch.setattr(Config, 'SAMPLE_MS', sample_ms)
    result = _simulate(runner, tmp_path, '--generate', 'circle', '--feed-mm-min', '6000')
    assert result.exit_code == 1
    assert isinstance(result.exception, SystemExit)
    assert not (tmp_path / 'trace.csv').exists()


def test_broken_tangency_exits_1(runner: CliRunner, tmp_path: Path) -> None:
    records = [
        {'cx_mm': 0, 'cy_mm': 0, 'r_mm': 10, 'a_start_deg': 0, 'a_end_deg': 90, 'dir': 'cw', 'feed_mm_min': 6000},
        {'cx_mm': 0, 'cy_mm': 0, 'r_mm': 10, 'a_start_deg': 180, 'a_end_deg': 270, 'dir': 'cw', 'feed_mm_min': 6000},
    ]
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps(records))
    result = _simulate(runner, tmp_path, '--path', str(bad))
    assert result.exit_code == 1


def test_two_sources_exit_1(runner: CliRunner, tmp_path: Path) -> None:
    path_file = tmp_path / 'path.json'
    path_file.write_text('[]')
    result = _simulate(runner, tmp_path, '--path', str(path_file), '--generate', 'circle', '--feed-mm-min', '6000')
    assert result.exit_code == 1


def test_missing_machine_exits_1(runner: CliRunner, tmp_path: Path) -> None:
    result = _invoke(runner, 'simulate', '--machine', str(tmp_path / 'none.json'),
                     '--generate', 'circle', '--feed-mm-min', '6000')
    assert result.exit_code == 1


def test_infeasible_plan_exits_2(runner: CliRunner, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    def refuse(*args: Any, **kwargs: Any) -> None:
        raise InfeasiblePlanError("speed change needs more room", block_index=3)

    monkeypatch.setattr(commands.simulate_command.FeedSimulator, 'simulate', refuse)
    result = _simulate(runner, tmp_path, '--generate', 'circle', '--feed-mm-min', '6000')
    assert result.exit_code == 2


def test_generate_then_simulate_gcode_free_path(runner: CliRunner, tmp_path: Path) -> None:
    out = tmp_path / 'spiral.json'
    result = _invoke(runner, 'generate', '--generate', 'quarterspiral', '--feed-mm-min', '6000', '--out', str(out))
    assert result.exit_code == 0, result.output
    assert len(json.loads(out.read_text())) == 11
    result = _simulate(runner, tmp_path, '--path', str(out))
    assert result.exit_code == 0, result.output
    assert _summary(tmp_path)['junctions'][0]['v_crossing_m_min'] == pytest.approx(3.6, rel=1e-3)


def test_simulate_gcode_file(runner: CliRunner, tmp_path: Path) -> None:
    program = tmp_path / 'circle.nc'
    program.write_text("G17 G90 G21 G94\nG2 X0 Y0 I0 J30 F9000\n")
    result = _simulate(runner, tmp_path, '--path', str(program))
    assert result.exit_code == 0, result.output
    assert _summary(tmp_path)['blocks'][0]['v_st_m_min'] == pytest.approx(9.0, rel=0.01)


def test_generate_requires_kind(runner: CliRunner, tmp_path: Path) -> None:
    result = _invoke(runner, 'generate', '--feed-mm-min', '6000', '--out', str(tmp_path / 'x.json'))
    assert result.exit_code == 1


@pytest.mark.parametrize('radius_mm, feed, v_st_m_min', [('30', '12000', 10.53), ('2.5', '24000', 2.01)])
def test_limits(runner: CliRunner, radius_mm: str, feed: str, v_st_m_min: float) -> None:
    result = _invoke(runner, 'limits', '--machine', str(MIKRON_FILE), '--radius-mm', radius_mm, '--feed-mm-min', feed)
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report['v_st_m_min'] == pytest.approx(v_st_m_min, rel=0.01)
    assert report['binding'] == 'v_jtcurv'


def test_limits_at_angle_and_sweep(runner: CliRunner, tmp_path: Path) -> None:
    sweep_file = tmp_path / 'sweep.csv'
    result = _invoke(runner, 'limits', '--machine', str(MIKRON_FILE), '--radius-mm', '2.5', '--feed-mm-min', '6000',
                     '--alpha-deg', '45', '--sweep', '--sweep-csv', str(sweep_file))
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report['at_alpha']['vt_m_min'] == pytest.approx(42.4, rel=0.01)
    assert report['sweep']['vjt_min']['m_min'] == pytest.approx(1.89, rel=0.01)
    assert len(pd.read_csv(sweep_file)) == 3601


def test_metrics_on_simulated_trace(runner: CliRunner, tmp_path: Path) -> None:
    assert _simulate(runner, tmp_path, '--generate', 'circle', '--feed-mm-min', '6000').exit_code == 0
    out = tmp_path / 'report.json'
    result = _invoke(runner, 'metrics', str(tmp_path / 'trace.csv'), '--out', str(out))
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report['g_um'] <= 1e-3
    assert report['center_from_fit'] is True
    assert report['radius_from_fit'] is True
    assert report['radius_mm'] == pytest.approx(30.0)


def test_metrics_on_bare_ellipse_file(runner: CliRunner, tmp_path: Path) -> None:
    theta = np.linspace(0.0, 2 * math.pi, 3600, endpoint=False)
    points = np.column_stack([30.02 * np.cos(theta), 29.98 * np.sin(theta)])
    points_file = tmp_path / 'ellipse.csv'
    np.savetxt(points_file, points, delimiter=',')
    result = _invoke(runner, 'metrics', str(points_file), '--center-mm', '0', '0', '--radius-mm', '30')
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report['g_um'] == pytest.approx(40.0, rel=0.01)
    assert report['fmax_um'] == pytest.approx(20.0, rel=0.01)
    assert report['fmin_um'] == pytest.approx(-20.0, rel=0.01)
    assert report['center_from_fit'] is False
    assert report['radius_from_fit'] is False


def test_metrics_with_center_only(runner: CliRunner, tmp_path: Path) -> None:
    theta = np.linspace(0.0, 2 * math.pi, 720, endpoint=False)
    points_file = tmp_path / 'offset.csv'
    np.savetxt(points_file, np.column_stack([1.0 + 30 * np.cos(theta), 30 * np.sin(theta)]), delimiter=',')
    result = _invoke(runner, 'metrics', str(points_file), '--center-mm', '0', '0')
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report['center_mm'] == [0.0, 0.0]
    assert report['radius_mm'] == pytest.approx(30.0)
    assert report['center_from_fit'] is False
    assert report['radius_from_fit'] is True


def test_metrics_collinear_exits_1(runner: CliRunner, tmp_path: Path) -> None:
    points_file = tmp_path / 'line.csv'
    points_file.write_text("x_mm,y_mm\n0,0\n1,1\n2,2\n3,3\n")
    result = _invoke(runner, 'metrics', str(points_file))
    assert result.exit_code == 1
