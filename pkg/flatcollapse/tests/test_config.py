import pytest

from flatcollapse.config import (
    GridSettings,
    MetricConfig,
    load_metric_config,
    reload_toolkit_config,
    validate_metric_config_file,
)
from flatcollapse.config import toolkit_config
from flatcollapse.config.toolkit_config import DEFAULT_METRIC_CONFIG
from flatcollapse.telemetry import track_operation
from flatcollapse.telemetry._telemetry import _parse_headers


@pytest.fixture
def clean_env(monkeypatch):
    # restored on teardown, so later tests see the untouched cache
    monkeypatch.setattr(toolkit_config, "_env_cache", None)
    for name in (
        "FLATCOLLAPSE_POINT_GROUP_BOUND",
        "FLATCOLLAPSE_PROBE_BUDGET",
        "FLATCOLLAPSE_TRACING",
        "FLATCOLLAPSE_METRIC_CONFIG",
    ):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def test_environment_defaults(clean_env):
    env = reload_toolkit_config()
    assert env["POINT_GROUP_BOUND"] == 3840
    assert env["PROBE_BUDGET"] == 5
    assert env["TRACING_ENABLED"] is False
    assert env["METRIC_CONFIG_PATH"] == DEFAULT_METRIC_CONFIG


def test_environment_overrides(clean_env):
    clean_env.setenv("FLATCOLLAPSE_PROBE_BUDGET", "7")
    clean_env.setenv("FLATCOLLAPSE_TRACING", "yes")
    env = reload_toolkit_config()
    assert env["PROBE_BUDGET"] == 7
    assert env["TRACING_ENABLED"] is True


def test_packaged_metric_defaults():
    cfg = load_metric_config(DEFAULT_METRIC_CONFIG)
    assert cfg.s_values == [1.0, 0.5, 0.25, 0.125, 0.0625]
    assert cfg.pair_count == 64
    assert cfg.tol == 1e-6
    assert cfg.grid == GridSettings(min_points=200, max_refinements=3)


def test_overrides_are_revalidated():
    cfg = MetricConfig().with_overrides(pair_count=8, seed=None)
    assert cfg.pair_count == 8 and cfg.seed == 7
    with pytest.raises(ValueError):
        MetricConfig().with_overrides(s_values=[0.0])


@pytest.mark.parametrize(
    "content",
    [
        "",
        "version: '1.0'\nmetric:\n  s_values: [2.0]\n",
        "version: '1.0'\nmetric:\n  pair_count: 0\n",
        "metric: [unclosed\n",
    ],
)
def test_invalid_metric_files_are_reported(tmp_path, content):
    path = tmp_path / "metric.yaml"
    path.write_text(content)
    errors = validate_metric_config_file(str(path))
    assert errors and errors[0].startswith("Validation error")


def test_valid_metric_file(tmp_path):
    path = tmp_path / "metric.yaml"
    path.write_text("version: '1.0'\nmetric:\n  s_values: [1.0, 0.5]\n  enum_radius: 2.5\n")
    assert validate_metric_config_file(str(path)) == []
    assert load_metric_config(str(path)).enum_radius == 2.5


def test_otlp_header_parsing():
    assert _parse_headers("authorization=Bearer t, env=prod") == {"authorization": "Bearer t", "env": "prod"}
    assert _parse_headers(None) == {}


def test_tracked_operations_pass_results_and_errors_through():
    @track_operation("double")
    def double(x):
        return 2 * x

    @track_operation("fail", operation_kind="numeric")
    def fail():
        raise ArithmeticError("boom")

    assert double(x=4) == 8
    with pytest.raises(ArithmeticError):
        fail()
