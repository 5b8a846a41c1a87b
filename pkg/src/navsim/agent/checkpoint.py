"""
Checkpoint files: one line of JSON header followed by raw parameter blocks.

The header records the schema version, layer widths, activation, training
step, the training config and the RNG state. Blocks are little-endian
float64, layer by layer, weights (row-major) before biases.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ..errors import CheckpointError
from .network import ACTIVATION, QNetwork

CHECKPOINT_SCHEMA = 1
DTYPE = np.dtype("<f8")


@dataclass
class Checkpoint:
    net: QNetwork
    step: int = 0
    config: Dict[str, Any] = field(default_factory=dict)
    rng_state: Optional[Dict[str, Any]] = None

    @property
    def obs_dim(self) -> int:
        return self.net.obs_dim


def save_checkpoint(path: Union[str, Path], net: QNetwork, *, step: int = 0,
                    config: Optional[Dict[str, Any]] = None,
                    rng_state: Optional[Dict[str, Any]] = None) -> Path:
    """Write a checkpoint; parent directories are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = {
        "schema_version": CHECKPOINT_SCHEMA,
        "widths": net.widths,
        "activation": ACTIVATION,
        "step": int(step),
        "config": config or {},
        "rng_state": rng_state,
    }
    with open(path, "wb") as f:
        f.write(json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8"))
        f.write(b"\n")
        for p in net.parameters():
            f.write(np.ascontiguousarray(p, dtype=DTYPE).tobytes(order="C"))
    return path


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """
    Read a checkpoint written by save_checkpoint.

    Raises:
        CheckpointError: if the file is missing, truncated or of another schema
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError as e:
        raise CheckpointError(f"checkpoint not found: {path}") from e
    head, sep, body = raw.partition(b"\n")
    if not sep:
        raise CheckpointError(f"{path}: missing header line")
    try:
        header = json.loads(head.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError(f"{path}: unreadable header: {e}") from e
    if header.get("schema_version") != CHECKPOINT_SCHEMA:
        raise CheckpointError(f"{path}: unsupported schema {header.get('schema_version')!r}")
    if header.get("activation") != ACTIVATION:
        raise CheckpointError(f"{path}: unsupported activation {header.get('activation')!r}")

    widths = [int(w) for w in header["widths"]]
    expected = sum(a * b + b for a, b in zip(widths[:-1], widths[1:])) * DTYPE.itemsize
    if len(body) != expected:
        raise CheckpointError(f"{path}: expected {expected} parameter bytes, found {len(body)}")

    flat = np.frombuffer(body, dtype=DTYPE)
    weights, biases, offset = [], [], 0
    for a, b in zip(widths[:-1], widths[1:]):
        weights.append(flat[offset:offset + a * b].reshape(a, b).astype(np.float64))
        offset += a * b
        biases.append(flat[offset:offset + b].astype(np.float64))
        offset += b
    return Checkpoint(QNetwork(weights, biases), int(header.get("step", 0)),
                      header.get("config") or {}, header.get("rng_state"))
