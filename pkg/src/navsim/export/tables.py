"""
CSV exports: closed-loop trajectories and per-obstacle risk tables.

Frames are built with pandas, angles are converted to degrees here and
nowhere else, and the unit legend of the parameter set is prepended once
the table is on disk.
"""

import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..dynamics.params import HydroParams
from ..env.environment import GuidanceEnv, StepOutcome, observe
from ..env.episodes import EpisodeSpec
from ..risk.cpa import CRAssessment
from ..utils.logger import get_cli_logger
from ..utils.prepender import prepend_units_header

logger = get_cli_logger()

TRAJECTORY_COLUMNS = ("t", "x", "y", "psi", "u", "v", "r", "delta",
                      "d_c", "chi_e", "d_wp", "cr", "reward")
RISK_COLUMNS = ("step", "t", "obstacle_id", "R", "V_R", "DCPA", "TCPA", "CR", "critical_id")
ANGLE_COLUMNS = ("psi", "delta", "chi_e")
FLOAT_FORMAT = "%.10g"


def trajectory_frame(rows: Sequence[Dict[str, float]]) -> pd.DataFrame:
    """Trajectory rows as a frame with the frozen column order and angles in degrees."""
    frame = pd.DataFrame(list(rows), columns=list(TRAJECTORY_COLUMNS))
    for column in ANGLE_COLUMNS:
        frame[column] = np.degrees(frame[column].astype(float))
    return frame


def _write(frame: pd.DataFrame, path: Union[str, Path], params: HydroParams) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    prepend_units_header(path, params.L, params.U)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_trajectory_csv(rows: Sequence[Dict[str, float]], path: Union[str, Path],
                         params: HydroParams) -> Path:
    return _write(trajectory_frame(rows), path, params)


def read_table(path: Union[str, Path]) -> pd.DataFrame:
    """Read back a table written by this module, skipping the unit legend."""
    return pd.read_csv(path, comment="#")


def read_training_log(path: Union[str, Path]) -> List[dict]:
    """Per-episode records of a training_log.jsonl, in episode order."""
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def _risk_records(step: int, t: float, assessments: Iterable[CRAssessment],
                  critical_id: Optional[int]) -> List[dict]:
    return [
        {
            "step": step, "t": t, "obstacle_id": a.obstacle_id,
            "R": a.R, "V_R": a.V_R, "DCPA": a.DCPA, "TCPA": a.TCPA, "CR": a.CR,
            "critical_id": critical_id,
        }
        for a in assessments
    ]


def risk_frame(env: GuidanceEnv, spec: EpisodeSpec, action: int, horizon: int) -> pd.DataFrame:
    """
    Roll a fixed rudder action out and tabulate every obstacle's risk at every step.

    The rollout stops early at a terminal status. Steps without obstacles
    contribute no rows.

    Args:
        env: Environment to run (reset here)
        spec: Scenario
        action: Action index held for the whole rollout
        horizon: Maximum number of agent steps
    """
    spec = spec.with_overrides(max_steps=max(horizon, 0))
    env.reset(spec)
    _, initial, crit_id = observe(env.state.vessel, spec, 0, 0.0, env.sim)
    records = _risk_records(0, 0.0, initial, crit_id)
    for _ in range(max(horizon, 0)):
        outcome: StepOutcome = env.step(action)
        records.extend(_risk_records(env.state.step_count, env.time, outcome.assessments,
                                     outcome.critical_id))
        if outcome.status.is_terminal:
            break
    frame = pd.DataFrame(records, columns=list(RISK_COLUMNS))
    frame["critical_id"] = frame["critical_id"].astype("Int64")
    return frame


def write_risk_csv(frame: pd.DataFrame, path: Union[str, Path], params: HydroParams) -> Path:
    if frame["TCPA"].map(math.isinf).any():
        logger.warning("Stationary relative motion in the risk table; TCPA written as inf")
    return _write(frame, path, params)
