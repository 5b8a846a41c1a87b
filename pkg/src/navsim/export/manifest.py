"""
Run manifest: what a command was asked to do and which files it produced.

The manifest is written to the output directory before any work starts and
rewritten when the command finishes, so an aborted run still leaves a record.
"""

import json
import subprocess
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Union

from .. import __version__
from ..utils.logger import get_cli_logger

logger = get_cli_logger()

MANIFEST_FILE = "manifest.json"


def _now() -> str:
    return datetime.now(timezone.utc).strftime('%Y-%m-%dT%H:%M:%SZ')


def version_stamp() -> str:
    """`git describe` of the working tree when available, else the package version."""
    try:
        result = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).parent, capture_output=True, text=True, timeout=5,
        )
    except (OSError, subprocess.SubprocessError):
        return __version__
    described = result.stdout.strip()
    return f"{__version__}+{described}" if result.returncode == 0 and described else __version__


@dataclass
class RunManifest:
    command: str
    out_dir: str
    config_paths: List[str] = field(default_factory=list)
    seed: Optional[int] = None
    version: str = field(default_factory=version_stamp)
    started_at: str = field(default_factory=_now)
    finished_at: Optional[str] = None
    status: str = "running"
    outputs: List[str] = field(default_factory=list)

    @property
    def path(self) -> Path:
        return Path(self.out_dir) / MANIFEST_FILE

    @classmethod
    def start(cls, command: str, out_dir: Union[str, Path], config_paths: List[Union[str, Path]],
              seed: Optional[int] = None) -> "RunManifest":
        """Create the output directory and write the initial manifest."""
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        manifest = cls(command, str(out_dir), [str(p) for p in config_paths], seed)
        manifest.write()
        return manifest

    def add_output(self, path: Union[str, Path]) -> Path:
        """Record an output file, relative to the output directory when inside it."""
        path = Path(path)
        try:
            entry = str(path.resolve().relative_to(Path(self.out_dir).resolve()))
        except ValueError:
            entry = str(path)
        if entry not in self.outputs:
            self.outputs.append(entry)
        return path

    def finish(self, status: str = "ok") -> None:
        self.finished_at = _now()
        self.status = status
        self.write()

    def write(self) -> None:
        try:
            self.path.write_text(json.dumps(asdict(self), indent=2, sort_keys=True))
        except (OSError, TypeError) as e:
            logger.error(f"Failed to write manifest to {self.path}: {e}")
            raise
        logger.debug(f"Wrote manifest to {self.path}")


def load_manifest(path: Union[str, Path]) -> RunManifest:
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_FILE
    return RunManifest(**json.loads(path.read_text()))
