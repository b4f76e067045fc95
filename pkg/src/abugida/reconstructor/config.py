"""Model/training configuration and the flat ``key = value`` config format."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path


class ConfigError(ValueError):
    pass


@dataclass
class ModelConfig:
    enc_depth: int = 2
    dec_depth: int = 2
    heads: int = 8
    # Not given by the reference setup; desk-scale defaults.
    model_dim: int = 256
    ff_dim: int = 0  # 0 means 4 * model_dim
    dropout: float = 0.3
    label_smoothing: float = 0.1
    base_lr: float = 0.0003
    lr_decay_start: int = 16000
    max_length: int = 200
    beam_size: int = 6
    length_norm_alpha: float = 0.6
    early_stop_patience: int = 10
    seed: int = 1111
    tied_output: bool = True
    clip_norm: float = 5.0
    adam_beta1: float = 0.9
    adam_beta2: float = 0.98
    adam_eps: float = 1e-9
    exp_smoothing: bool = True
    ema_decay: float = 0.9999
    batch_tokens: int = 4000
    maxi_batch: int = 100
    valid_every: int = 5000  # steps; 0 validates once per epoch
    valid_bleu: bool = True
    max_epochs: int = 100
    threads: int = 1

    def __post_init__(self):
        if self.ff_dim == 0:
            self.ff_dim = 4 * self.model_dim
        self.validate()

    def validate(self) -> None:
        if self.heads < 1 or self.model_dim % self.heads:
            raise ConfigError(f"heads ({self.heads}) must divide model_dim ({self.model_dim})")
        for name in ("dropout", "label_smoothing", "base_lr", "ema_decay"):
            value = getattr(self, name)
            if not 0 <= value < 1:
                raise ConfigError(f"{name} must lie in [0, 1), got {value}")
        if self.max_length < 2:
            raise ConfigError("max_length must be at least 2")
        if min(self.enc_depth, self.dec_depth, self.beam_size, self.batch_tokens) < 1:
            raise ConfigError("depths, beam_size and batch_tokens must be positive")

    def replace(self, **changes) -> "ModelConfig":
        return dataclasses.replace(self, **changes)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ModelConfig":
        return cls(**parse_flat(text, cls))

    def save(self, path: "str | Path") -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")

    @classmethod
    def load(cls, path: "str | Path") -> "ModelConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def _coerce(raw: str, typ):
    if typ in (bool, "bool"):
        low = raw.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"not a boolean: {raw!r}")
        return low in ("true", "1", "yes")
    if typ in (int, "int"):
        return int(raw)
    if typ in (float, "float"):
        return float(raw)
    return raw


def parse_flat(text: str, schema=None) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    With a dataclass ``schema`` values are coerced to the field types and
    unknown keys are rejected.
    """
    types = {f.name: f.type for f in fields(schema)} if schema is not None else {}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        raw = raw.strip('"').strip("'")
        if schema is not None:
            if key not in types:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            try:
                out[key] = _coerce(raw, types[key])
            except ValueError as e:
                raise ConfigError(f"line {lineno}: bad value for {key}: {e}") from None
        else:
            out[key] = raw
    return out
