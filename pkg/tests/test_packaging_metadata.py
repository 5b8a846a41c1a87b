from pathlib import Path
import re

import pytest

tomllib = pytest.importorskip("tomllib")


def _name(requirement: str) -> str:
    return re.split(r"[<>=!~\[; ]", requirement.strip(), maxsplit=1)[0].lower()


def test_pyproject_dependencies_listed_in_requirements() -> None:
    root = Path(__file__).resolve().parents[1]
    pyproject = tomllib.loads((root / "pyproject.toml").read_text())
    requirements = {
        _name(line)
        for line in (root / "requirements.txt").read_text().splitlines()
        if line.strip() and not line.startswith("#")
    }

    missing = [dep for dep in pyproject["project"]["dependencies"] if _name(dep) not in requirements]

    assert missing == []


def test_console_script_points_at_cli() -> None:
    root = Path(__file__).resolve().parents[1]
    pyproject = tomllib.loads((root / "pyproject.toml").read_text())

    assert pyproject["project"]["scripts"]["navsim"] == "navsim.cli.main:main"
