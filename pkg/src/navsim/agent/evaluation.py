"""
Greedy evaluation of a trained Q-network on fixed scenarios.

Episodes run concurrently, one environment per worker, and are reduced in
scenario order so the report does not depend on scheduling.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..config import config
from ..dynamics.params import HydroParams
from ..env.environment import GuidanceEnv, Observation, Status
from ..env.episodes import EpisodeSpec, scenario_variants
from ..errors import DimensionMismatch, EmptyList
from ..utils.logger import get_agent_logger
from .network import QNetwork, forward

logger = get_agent_logger()

Policy = Callable[[Observation], int]


def greedy_policy(net: QNetwork) -> Policy:
    """Argmax of the Q-values, lowest index on ties."""
    return lambda obs: int(np.argmax(forward(net, obs)))


def fixed_policy(action: int) -> Policy:
    """Always the same rudder action."""
    return lambda obs: action


@dataclass
class EpisodeResult:
    """Trajectory and outcome of one closed-loop episode."""

    spec: EpisodeSpec
    rows: List[Dict[str, float]]
    status: Status
    total_return: float
    steps: int
    outcomes: list = field(default_factory=list, repr=False)

    @property
    def success(self) -> bool:
        return self.status is Status.SUCCESS

    @property
    def cross_track_rms(self) -> float:
        if not self.rows:
            return 0.0
        return math.sqrt(sum(row["d_c"] ** 2 for row in self.rows) / len(self.rows))


def _row(env: GuidanceEnv, obs: Observation, reward: float, cr: float) -> Dict[str, float]:
    s = env.state.vessel
    return {
        "t": env.time,
        "x": s.x, "y": s.y, "psi": s.psi,
        "u": s.u, "v": s.v, "r": s.r,
        "delta": s.delta,
        "d_c": obs.d_c, "chi_e": obs.chi_e, "d_wp": obs.d_wp,
        "cr": cr,
        "reward": reward,
    }


def run_episode(env: GuidanceEnv, spec: EpisodeSpec, policy: Policy,
                max_steps: Optional[int] = None) -> EpisodeResult:
    """
    Roll one episode out under a policy.

    Args:
        env: Environment (reset here)
        spec: Episode to run
        policy: Maps an observation to an action index
        max_steps: Overrides spec.max_steps (0 returns only the initial row)

    Returns:
        EpisodeResult with steps + 1 trajectory rows
    """
    if max_steps is not None:
        spec = spec.with_overrides(max_steps=max_steps)
    obs = env.reset(spec)
    crit = env.critical_assessment()
    rows = [_row(env, obs, 0.0, crit.CR if crit else 0.0)]
    outcomes = []
    status, total = Status.RUNNING, 0.0
    while env.state.step_count < spec.max_steps:
        outcome = env.step(policy(obs))
        obs = outcome.observation
        total += outcome.reward
        outcomes.append(outcome)
        rows.append(_row(env, obs, outcome.reward, outcome.critical_cr))
        status = outcome.status
        if status.is_terminal:
            break
    if spec.max_steps == 0:
        status = Status.STEP_LIMIT
    return EpisodeResult(spec, rows, status, total, env.state.step_count, outcomes)


@dataclass
class EvaluationMetrics:
    episodes: int
    success_rate: float
    collision_rate: float
    mean_return: float
    mean_cross_track_rms: float

    @classmethod
    def from_results(cls, results: Sequence[EpisodeResult]) -> "EvaluationMetrics":
        if not results:
            raise EmptyList("no episodes to aggregate")
        n = len(results)
        return cls(
            episodes=n,
            success_rate=sum(r.success for r in results) / n,
            collision_rate=sum(r.status is Status.COLLISION for r in results) / n,
            mean_return=float(np.mean([r.total_return for r in results])),
            mean_cross_track_rms=float(np.mean([r.cross_track_rms for r in results])),
        )

    def to_dict(self) -> Dict[str, float]:
        return {
            "episodes": self.episodes,
            "success_rate": self.success_rate,
            "collision_rate": self.collision_rate,
            "mean_return": self.mean_return,
            "mean_cross_track_rms": self.mean_cross_track_rms,
        }


@dataclass
class EvaluationReport:
    overall: EvaluationMetrics
    per_scenario: Dict[str, EvaluationMetrics]
    results: List[EpisodeResult] = field(repr=False, default_factory=list)

    def to_dict(self) -> dict:
        return {
            "overall": self.overall.to_dict(),
            "scenarios": {name: m.to_dict() for name, m in self.per_scenario.items()},
        }


def evaluate(net: QNetwork, scenarios: Sequence[EpisodeSpec], params: HydroParams, *,
             episodes: int = 1, seed: int = 0, n_sp: Optional[float] = None,
             workers: Optional[int] = None) -> EvaluationReport:
    """
    Greedy evaluation over scenarios and their randomized variants.

    Args:
        net: Trained Q-network
        scenarios: Scenarios to run; each yields `episodes` variants (variant 0 is the scenario)
        params: Hydrodynamic parameter set
        episodes: Variants per scenario
        seed: Seed for the variant jitter
        n_sp: Propeller rate (default: calibrated from params)
        workers: Thread count (default: NAVSIM_EVAL_WORKERS)

    Raises:
        EmptyList: if there is no scenario or episodes < 1
        DimensionMismatch: if a scenario's observation size differs from the network input
    """
    if not scenarios or episodes < 1:
        raise EmptyList("evaluation needs at least one scenario and one episode")
    for spec in scenarios:
        if spec.mode.obs_dim != net.obs_dim:
            raise DimensionMismatch(
                f"scenario '{spec.name}' ({spec.mode.value}) yields {spec.mode.obs_dim} "
                f"observations, network expects {net.obs_dim}"
            )
    if n_sp is None:
        n_sp = GuidanceEnv(params).n_sp
    workers = workers or config.runtime.eval_workers

    jobs = []
    for index, spec in enumerate(scenarios):
        for variant in scenario_variants(spec, episodes, seed + index):
            jobs.append((index, variant))

    policy = greedy_policy(net)

    def run(job) -> EpisodeResult:
        _, variant = job
        return run_episode(GuidanceEnv(params, n_sp=n_sp), variant, policy)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run, jobs))

    per_scenario: Dict[str, EvaluationMetrics] = {}
    for index, spec in enumerate(scenarios):
        key = spec.name or f"scenario_{index}"
        per_scenario[key] = EvaluationMetrics.from_results(
            [r for (i, _), r in zip(jobs, results) if i == index]
        )
    overall = EvaluationMetrics.from_results(results)
    logger.info(
        f"Evaluated {overall.episodes} episodes: success {overall.success_rate:.0%}, "
        f"collision {overall.collision_rate:.0%}, mean return {overall.mean_return:.2f}"
    )
    return EvaluationReport(overall, per_scenario, results)
