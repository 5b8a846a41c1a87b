"""Utility for prepending comment headers to files that were already written.

pandas writes the table first; the unit header (L and U of the parameter set)
is prepended afterwards so readers skipping '#' lines still see a plain CSV.
"""

from pathlib import Path
from typing import Iterable, List, Union


class PrependToFile:
    """Context manager that prepends lines to an existing file on exit.

    Example:
        >>> with PrependToFile('trajectory.csv', comment='# ') as f:
        ...     f.write_line('L = 230.0 m, U = 12.35 m/s')
    """

    def __init__(self, file_path: Union[str, Path], comment: str = ""):
        """Initialize the prepender.

        Args:
            file_path: Path to the file to prepend to
            comment: Prefix added to every prepended line (e.g. '# ')
        """
        self.file_path = Path(file_path)
        self.comment = comment
        self._header: List[str] = []

    def write_line(self, line: str) -> None:
        """Queue a single header line, after any already queued."""
        line = line.rstrip("\n")
        self._header.append(f"{self.comment}{line}\n")

    def write_lines(self, lines: Iterable[str]) -> None:
        """Queue several header lines in order."""
        for line in lines:
            self.write_line(line)

    def __enter__(self) -> "PrependToFile":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if exc_type is not None or not self._header:
            return
        body = self.file_path.read_text(encoding="utf-8")
        self.file_path.write_text("".join(self._header) + body, encoding="utf-8")


def prepend_units_header(file_path: Union[str, Path], length: float, speed: float) -> None:
    """Prepend the non-dimensional unit legend to an exported table."""
    with PrependToFile(file_path, comment="# ") as f:
        f.write_lines([
            f"units: length L = {length:g} m, speed U = {speed:g} m/s, time L/U = {length / speed:g} s",
            "angles in degrees; positions in L, velocities in U, yaw rate in U/L",
        ])
