"""
File outputs: CSV tables, SVG figures and the run manifest.
"""

from .manifest import MANIFEST_FILE, RunManifest, load_manifest
from .plots import (
    tracks_from_rows,
    training_curve_svg,
    trajectory_svg,
    write_training_curve_svg,
    write_trajectory_svg,
)
from .tables import (
    RISK_COLUMNS,
    TRAJECTORY_COLUMNS,
    read_table,
    read_training_log,
    risk_frame,
    trajectory_frame,
    write_risk_csv,
    write_trajectory_csv,
)

__all__ = [
    'MANIFEST_FILE',
    'RISK_COLUMNS',
    'TRAJECTORY_COLUMNS',
    'RunManifest',
    'load_manifest',
    'read_table',
    'read_training_log',
    'risk_frame',
    'tracks_from_rows',
    'training_curve_svg',
    'trajectory_frame',
    'trajectory_svg',
    'write_risk_csv',
    'write_training_curve_svg',
    'write_trajectory_csv',
    'write_trajectory_svg',
]
