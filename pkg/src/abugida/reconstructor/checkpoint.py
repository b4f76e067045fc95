"""Versioned binary checkpoint container.

Layout (all integers little-endian)::

    magic      8 bytes  b"ABGDCKPT"
    version    u32
    config     u32 length + UTF-8 ``key = value`` text
    vocab      u32 source size, u32 target size
    tensors    u32 count, then per tensor:
               u16 name length, name, u8 ndim, u32 dims..., float32 data
    crc32      u32 over everything above
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np
import torch

from .config import ModelConfig
from .model import Seq2Seq

MAGIC = b"ABGDCKPT"
FORMAT_VERSION = 1


class CheckpointError(ValueError):
    pass


class CorruptCheckpointError(CheckpointError):
    pass


class VersionMismatchError(CheckpointError):
    pass


def save_checkpoint(model: Seq2Seq, path: "str | Path") -> None:
    cfg_bytes = model.cfg.to_text().encode("utf-8")
    parts = [MAGIC, struct.pack("<I", FORMAT_VERSION), struct.pack("<I", len(cfg_bytes)), cfg_bytes]
    parts.append(struct.pack("<II", model.src_vocab_size, model.tgt_vocab_size))
    params = list(model.named_parameters())
    parts.append(struct.pack("<I", len(params)))
    for name, p in params:
        raw = name.encode("utf-8")
        data = p.detach().cpu().to(torch.float32).numpy().astype("<f4")
        parts.append(struct.pack("<H", len(raw)) + raw + struct.pack("<B", data.ndim))
        parts.append(struct.pack(f"<{data.ndim}I", *data.shape))
        parts.append(data.tobytes())
    body = b"".join(parts)
    Path(path).write_bytes(body + struct.pack("<I", zlib.crc32(body)))


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.buf):
            raise CorruptCheckpointError("checkpoint is truncated")
        out = self.buf[self.pos : self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def load_checkpoint(
    path: "str | Path", src_vocab_size: int | None = None, tgt_vocab_size: int | None = None
) -> Seq2Seq:
    """Load a model; vocab sizes, when given, must match those recorded in the file."""
    buf = Path(path).read_bytes()
    if len(buf) < len(MAGIC) + 8 or buf[: len(MAGIC)] != MAGIC:
        raise CorruptCheckpointError(f"{path}: not a checkpoint file")
    r = _Reader(buf[:-4])
    r.take(len(MAGIC))
    (version,) = r.unpack("<I")
    if version != FORMAT_VERSION:
        raise VersionMismatchError(f"checkpoint format {version}, expected {FORMAT_VERSION}")
    (crc,) = struct.unpack("<I", buf[-4:])
    if zlib.crc32(buf[:-4]) != crc:
        raise CorruptCheckpointError(f"{path}: checksum mismatch")
    (cfg_len,) = r.unpack("<I")
    cfg = ModelConfig.from_text(r.take(cfg_len).decode("utf-8"))
    src_v, tgt_v = r.unpack("<II")
    for expected, found, side in ((src_vocab_size, src_v, "source"), (tgt_vocab_size, tgt_v, "target")):
        if expected is not None and expected != found:
            raise VersionMismatchError(f"{side} vocab size {expected} does not match checkpoint ({found})")
    model = Seq2Seq(cfg, src_v, tgt_v)
    expected_params = dict(model.named_parameters())
    (count,) = r.unpack("<I")
    loaded = {}
    for _ in range(count):
        (name_len,) = r.unpack("<H")
        name = r.take(name_len).decode("utf-8")
        (ndim,) = r.unpack("<B")
        shape = r.unpack(f"<{ndim}I")
        n = int(np.prod(shape)) if ndim else 1
        data = np.frombuffer(r.take(4 * n), dtype="<f4").reshape(shape)
        loaded[name] = torch.from_numpy(data.astype(np.float32))
    if set(loaded) != set(expected_params):
        raise VersionMismatchError("checkpoint parameters do not match the model layout")
    with torch.no_grad():
        for name, p in expected_params.items():
            if tuple(loaded[name].shape) != tuple(p.shape):
                raise VersionMismatchError(f"shape mismatch for {name}")
            p.copy_(loaded[name])
    model.eval()
    return model
