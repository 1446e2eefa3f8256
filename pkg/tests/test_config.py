"""
Tests for NilopConfig and the Hydra config tree.
"""

from pathlib import Path

import pytest
from hydra import compose, initialize_config_dir
from omegaconf import OmegaConf

from nilop.config import DEFAULT_BUDGET, NilopConfig

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def test_defaults():
    """Default budget, seed and field."""
    config = NilopConfig()
    assert config.budget == DEFAULT_BUDGET
    assert (config.seed, config.p) == (0, 2)
    assert not config.show_progress


def test_validation():
    """Non-positive budgets and non-prime fields are rejected."""
    with pytest.raises(ValueError):
        NilopConfig(budget=0)
    with pytest.raises(ValueError):
        NilopConfig(p=6)


def test_from_dict():
    """Plain dicts and DictConfigs load; budget may be a string; unknown keys fail."""
    config = NilopConfig.from_dict({"budget": "500", "p": 3})
    assert config.budget == 500
    assert config.p == 3
    assert NilopConfig.from_dict(OmegaConf.create(config.to_dict())) == config
    with pytest.raises(ValueError, match="Unknown config keys"):
        NilopConfig.from_dict({"prime": 3})


def test_replace_ignores_none():
    """Unset overrides keep the current values."""
    config = NilopConfig(seed=4).replace(budget=None, seed=None, p=5)
    assert (config.seed, config.p) == (4, 5)


def test_hydra_config_composes(monkeypatch):
    """configs/config.yaml composes with the accept task and reads NILOP_BUDGET."""
    monkeypatch.setenv("NILOP_BUDGET", "1234")
    with initialize_config_dir(config_dir=str(CONFIG_DIR), version_base="1.1"):
        cfg = compose(config_name="config")
        roots = compose(config_name="config", overrides=["task=roots"])
    assert cfg.task.name == "accept"
    assert NilopConfig.from_dict(cfg["nilop"]).budget == 1234
    assert roots.task.name == "roots"
