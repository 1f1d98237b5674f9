import pytest

from hedonic_graphs.config import (
    CacheConfig,
    DynamicsConfig,
    EnumerationBudget,
    HedonicConfig,
    SolverConfig,
)


def test_budget_rejects_non_positive_limits():
    with pytest.raises(ValueError):
        EnumerationBudget(max_partitions=0)
    with pytest.raises(ValueError):
        EnumerationBudget(max_subsets=-1)


def test_config_defaults():
    config = HedonicConfig()

    assert config.budget.max_partitions == 10**6
    assert config.budget.max_subsets == 10**6
    assert config.cache_config.enabled is True
    assert config.solver_config.threads == 1
    assert config.solver_config.max_oracle_calls is None
    assert config.dynamics_config.max_steps == 1000
    assert config.log_level == "INFO"


def test_config_from_env_reads_values(monkeypatch):
    monkeypatch.setenv("HEDONIC_MAX_SUBSETS", "500")
    monkeypatch.setenv("HEDONIC_THREADS", "3")
    monkeypatch.setenv("HEDONIC_DEBUG_VERIFY", "true")
    monkeypatch.setenv("HEDONIC_MAX_ORACLE_CALLS", "1000")
    monkeypatch.setenv("HEDONIC_LOG_LEVEL", "debug")
    config = HedonicConfig.from_env()

    assert config.budget.max_subsets == 500
    assert config.solver_config.threads == 3
    assert config.solver_config.debug_verify is True
    assert config.solver_config.max_oracle_calls == 1000
    assert config.log_level == "DEBUG"


def test_config_from_env_arguments_override_environment(monkeypatch):
    monkeypatch.setenv("HEDONIC_MAX_PARTITIONS", "10")
    config = HedonicConfig.from_env(max_partitions=20, threads=2)

    assert config.budget.max_partitions == 20
    assert config.solver_config.threads == 2


def test_invalid_values_are_rejected():
    with pytest.raises(ValueError):
        HedonicConfig(log_level="LOUD")
    with pytest.raises(ValueError):
        SolverConfig(threads=0)
    with pytest.raises(ValueError):
        CacheConfig(max_size=0)
    with pytest.raises(ValueError):
        DynamicsConfig(max_steps=-1)
