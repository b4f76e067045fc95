"""Desk-scale transformer that rebuilds full syllable lines from corrupted ones."""

from .checkpoint import (
    CheckpointError,
    CorruptCheckpointError,
    VersionMismatchError,
    load_checkpoint,
    save_checkpoint,
)
from .config import ConfigError, ModelConfig
from .decode import beam_decode, beam_decode_batch, greedy_decode, greedy_decode_batch, normalized_score
from .model import LengthExceededError, Seq2Seq, init_model, pad_batch, parameter_count
from .train import DivergenceError, TrainLog, evaluate, learning_rate, train, translate

__all__ = [
    "CheckpointError",
    "ConfigError",
    "CorruptCheckpointError",
    "DivergenceError",
    "LengthExceededError",
    "ModelConfig",
    "Seq2Seq",
    "TrainLog",
    "VersionMismatchError",
    "beam_decode",
    "beam_decode_batch",
    "evaluate",
    "greedy_decode",
    "greedy_decode_batch",
    "init_model",
    "learning_rate",
    "load_checkpoint",
    "normalized_score",
    "pad_batch",
    "parameter_count",
    "save_checkpoint",
    "train",
    "translate",
]
