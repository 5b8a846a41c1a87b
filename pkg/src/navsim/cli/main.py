"""
navsim command line.

    navsim train    --config PATH [--params PATH] [--seed N] [--episodes N] [--out DIR]
    navsim eval     --checkpoint PATH [--scenario NAME|PATH ...] [--episodes N] [--seed N] [--out DIR]
    navsim rollout  --scenario NAME|PATH [--checkpoint PATH | --action I] [--steps N] [--out DIR]
    navsim validate [--params PATH] [--out DIR]
    navsim risk     --scenario NAME|PATH [--horizon N] [--action I] [--out DIR]

Exit codes: 0 success, 2 input error, 3 training divergence,
4 checkpoint/scenario mismatch, 5 validation failure.
"""

import argparse
import json
import sys
from contextlib import ExitStack
from pathlib import Path
from typing import List, Optional, Sequence

from ..agent.checkpoint import load_checkpoint
from ..agent.evaluation import evaluate, fixed_policy, greedy_policy, run_episode
from ..agent.train_config import TrainConfig
from ..agent.training import train
from ..config import config, get_params_file, resolve_seed
from ..dynamics.mmg import self_propulsion_rate
from ..dynamics.params import HydroParams, load_params
from ..env.environment import N_ACTIONS, GuidanceEnv
from ..env.episodes import EpisodeSpec
from ..env.scenarios import BUILTIN_SCENARIOS, builtin_names, resolve_scenario
from ..errors import ConfigError, DimensionMismatch, NavsimError, NonFiniteLoss
from ..export.manifest import RunManifest
from ..export.plots import tracks_from_rows, write_training_curve_svg, write_trajectory_svg
from ..export.tables import read_training_log, risk_frame, write_risk_csv, write_trajectory_csv
from ..utils.logger import get_cli_logger, run_log
from ..validation.validator import ManeuverValidator

logger = get_cli_logger()

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIVERGED = 3
EXIT_MISMATCH = 4
EXIT_VALIDATION = 5

STRAIGHT_ACTION = 2


def _out_dir(args: argparse.Namespace) -> Path:
    return Path(args.out) if args.out else Path("runs") / args.command


def _params(args: argparse.Namespace) -> HydroParams:
    return load_params(args.params or get_params_file())


def _write_json(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True))
    logger.info(f"Wrote {path}")
    return path


def _check_action(action: int) -> int:
    if not 0 <= action < N_ACTIONS:
        raise ConfigError(f"--action must be in 0..{N_ACTIONS - 1}, got {action}")
    return action


def _check_dimension(spec: EpisodeSpec, obs_dim: int) -> None:
    if spec.mode.obs_dim != obs_dim:
        raise DimensionMismatch(
            f"scenario '{spec.name}' ({spec.mode.value}) yields {spec.mode.obs_dim} observations, "
            f"checkpoint expects {obs_dim}"
        )


def _write_training_curve(log_path: Path, manifest: RunManifest) -> None:
    records = read_training_log(log_path)
    manifest.add_output(write_training_curve_svg(log_path.parent / "training_curve.svg", records,
                                                 title=f"{len(records)} training episodes"))


def cmd_train(args: argparse.Namespace, manifest: RunManifest) -> int:
    params = _params(args)
    cfg = TrainConfig.from_yaml(args.config)
    cfg = cfg.with_overrides(episodes=args.episodes, seed=resolve_seed(args.seed, cfg.seed))
    manifest.seed = cfg.seed
    manifest.write()

    n_sp = self_propulsion_rate(params)
    logger.info(f"Calibrated propeller rate n_sp = {n_sp:.4f}")
    try:
        result = train(lambda: GuidanceEnv(params, n_sp=n_sp), cfg, _out_dir(args), progress=not args.quiet)
    except NonFiniteLoss as e:
        if e.last_good_checkpoint is not None:
            manifest.add_output(e.last_good_checkpoint)
        log_path = _out_dir(args) / "training_log.jsonl"
        if log_path.exists():
            manifest.add_output(log_path)
            _write_training_curve(log_path, manifest)
        raise

    manifest.add_output(result.log_path)
    _write_training_curve(result.log_path, manifest)
    for path in result.checkpoints:
        manifest.add_output(path)
    final = result.records[-1] if result.records else None
    if final is not None:
        logger.info(f"Final moving average return {final['moving_average']:.2f}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, manifest: RunManifest) -> int:
    episodes = 1 if args.episodes is None else args.episodes
    if episodes < 1:
        raise ConfigError(f"--episodes must be at least 1, got {episodes}")
    params = _params(args)
    checkpoint = load_checkpoint(args.checkpoint)
    if args.scenario:
        specs = [resolve_scenario(s) for s in args.scenario]
    else:
        specs = [BUILTIN_SCENARIOS[name] for name in builtin_names()
                 if BUILTIN_SCENARIOS[name].mode.obs_dim == checkpoint.obs_dim]
    for spec in specs:
        _check_dimension(spec, checkpoint.obs_dim)

    seed = resolve_seed(args.seed)
    manifest.seed = seed
    manifest.write()

    report = evaluate(checkpoint.net, specs, params, episodes=episodes, seed=seed,
                      n_sp=self_propulsion_rate(params))

    out = _out_dir(args)
    manifest.add_output(_write_json(out / "metrics.json", report.to_dict()))
    control_period = config.sim.control_period
    for i, spec in enumerate(specs):
        name = spec.name or f"scenario_{i}"
        results = report.results[i * episodes:(i + 1) * episodes]
        for k, result in enumerate(results):
            manifest.add_output(write_trajectory_csv(result.rows, out / "trajectories" / f"{name}_{k:03d}.csv",
                                                     params))
        t_end = max(r.steps for r in results) * control_period
        manifest.add_output(write_trajectory_svg(out / "plots" / f"{name}.svg",
                                                 tracks_from_rows(r.rows for r in results),
                                                 spec, t_end, title=name))
    logger.info(f"Success rate {report.overall.success_rate:.0%} over {report.overall.episodes} episodes")
    return EXIT_OK


def cmd_rollout(args: argparse.Namespace, manifest: RunManifest) -> int:
    params = _params(args)
    spec = resolve_scenario(args.scenario)
    if args.checkpoint and args.action is not None:
        raise ConfigError("--checkpoint and --action are mutually exclusive")
    if args.checkpoint:
        checkpoint = load_checkpoint(args.checkpoint)
        _check_dimension(spec, checkpoint.obs_dim)
        policy = greedy_policy(checkpoint.net)
    else:
        policy = fixed_policy(_check_action(STRAIGHT_ACTION if args.action is None else args.action))

    result = run_episode(GuidanceEnv(params), spec, policy, max_steps=args.steps)
    out = _out_dir(args)
    manifest.add_output(write_trajectory_csv(result.rows, out / "trajectory.csv", params))
    manifest.add_output(write_trajectory_svg(out / "trajectory.svg", tracks_from_rows([result.rows]), spec,
                                             result.steps * config.sim.control_period,
                                             title=spec.name or "rollout"))
    logger.info(f"Rollout ended with {result.status.value} after {result.steps} steps")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, manifest: RunManifest) -> int:
    validator = ManeuverValidator(_params(args))
    passed = validator.validate()
    manifest.add_output(_write_json(_out_dir(args) / "validation_report.json", validator.get_summary()))
    for key, value in sorted(validator.measurements.items()):
        logger.info(f"  {key}: {value:.6g}")
    return EXIT_OK if passed else EXIT_VALIDATION


def cmd_risk(args: argparse.Namespace, manifest: RunManifest) -> int:
    params = _params(args)
    spec = resolve_scenario(args.scenario)
    action = _check_action(STRAIGHT_ACTION if args.action is None else args.action)
    horizon = spec.max_steps if args.horizon is None else args.horizon
    frame = risk_frame(GuidanceEnv(params), spec, action, horizon)
    manifest.add_output(write_risk_csv(frame, _out_dir(args) / "risk.csv", params))
    return EXIT_OK


COMMANDS = {
    "train": cmd_train,
    "eval": cmd_eval,
    "rollout": cmd_rollout,
    "validate": cmd_validate,
    "risk": cmd_risk,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="navsim", description="Ship guidance simulator and DQN agent")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--params", help="hydrodynamic parameter file (default: shipped KCS-like set)")
        p.add_argument("--out", help="output directory (default: runs/<command>)")
        p.add_argument("--seed", type=int, help="seed (default: NAVSIM_SEED)")
        return p

    p = common(sub.add_parser("train", help="train a DQN agent"))
    p.add_argument("--config", required=True, help="training YAML file")
    p.add_argument("--episodes", type=int, help="override the episode count")
    p.add_argument("--quiet", action="store_true", help="no progress bar")

    p = common(sub.add_parser("eval", help="greedy evaluation of a checkpoint"))
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--scenario", action="append", help="built-in name or scenario file (repeatable)")
    p.add_argument("--episodes", type=int, help="randomized variants per scenario (default: 1)")

    p = common(sub.add_parser("rollout", help="single rollout to a trajectory CSV and plot"))
    p.add_argument("--scenario", required=True)
    p.add_argument("--checkpoint")
    p.add_argument("--action", type=int, help=f"fixed action index 0..{N_ACTIONS - 1}")
    p.add_argument("--steps", type=int, help="step cap (default: scenario max_steps)")

    p = common(sub.add_parser("validate", help="maneuver acceptance checks of a parameter file"))

    p = common(sub.add_parser("risk", help="collision risk table along a fixed-action rollout"))
    p.add_argument("--scenario", required=True)
    p.add_argument("--horizon", type=int, help="agent steps (default: scenario max_steps)")
    p.add_argument("--action", type=int, help=f"fixed action index 0..{N_ACTIONS - 1}")
    return parser


def _config_paths(args: argparse.Namespace) -> List[str]:
    scenario = getattr(args, "scenario", None)
    scenarios = scenario if isinstance(scenario, list) else [scenario]
    paths = [getattr(args, "config", None), args.params or get_params_file(),
             getattr(args, "checkpoint", None), *scenarios]
    return [str(p) for p in paths if p]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = _out_dir(args)
    with ExitStack() as stack:
        try:
            log_path = stack.enter_context(run_log(out))
            manifest = RunManifest.start(args.command, out, _config_paths(args), args.seed)
        except OSError as e:
            logger.error(f"Cannot write to output directory {out}: {e}")
            return EXIT_INPUT
        manifest.add_output(log_path)
        return _dispatch(args, manifest)


def _dispatch(args: argparse.Namespace, manifest: RunManifest) -> int:
    try:
        code = COMMANDS[args.command](args, manifest)
    except NonFiniteLoss as e:
        logger.error(f"Training diverged: {e}; last good checkpoint: {e.last_good_checkpoint}")
        manifest.finish("diverged")
        return EXIT_DIVERGED
    except DimensionMismatch as e:
        logger.error(str(e))
        manifest.finish("mismatch")
        return EXIT_MISMATCH
    except NavsimError as e:
        logger.error(f"{type(e).__name__}: {e}")
        manifest.finish("input_error")
        return EXIT_INPUT

    manifest.finish("ok" if code == EXIT_OK else "failed")
    return code


if __name__ == "__main__":
    sys.exit(main())
