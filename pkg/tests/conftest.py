"""Shared pytest fixtures."""

import pytest

from navsim.config import get_params_file
from navsim.dynamics.mmg import self_propulsion_rate
from navsim.dynamics.params import load_params, params_to_dict


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep logs out of the repository and ignore a seed exported in the shell."""
    monkeypatch.setenv("NAVSIM_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.delenv("NAVSIM_SEED", raising=False)


@pytest.fixture(scope="session")
def params():
    """Shipped KCS-like parameter set."""
    return load_params(get_params_file())


@pytest.fixture(scope="session")
def n_sp(params):
    return self_propulsion_rate(params)


@pytest.fixture
def params_doc(params):
    """Editable parameters document of the shipped set."""
    return params_to_dict(params)
