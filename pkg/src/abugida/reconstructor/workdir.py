"""Model directories: checkpoint, config and both vocabularies side by side."""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from ..vocab import EOS, Vocab
from .checkpoint import load_checkpoint, save_checkpoint
from .config import ModelConfig
from .model import Seq2Seq, init_model
from .train import TrainLog, train, translate

CHECKPOINT = "model.bin"
CONFIG = "model.cfg"
SRC_VOCAB = "vocab.src"
TGT_VOCAB = "vocab.tgt"
LOG = "train_log.json"


def read_lines(path: "str | Path") -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\n") for line in f]


def train_model_dir(
    out_dir: "str | Path",
    cfg: ModelConfig,
    train_src: Sequence[str],
    train_tgt: Sequence[str],
    dev_src: Sequence[str],
    dev_tgt: Sequence[str],
    src_vocab: Vocab | None = None,
    tgt_vocab: Vocab | None = None,
) -> tuple[Seq2Seq, Vocab, Vocab, TrainLog]:
    if len(train_src) != len(train_tgt) or len(dev_src) != len(dev_tgt):
        raise ValueError("source and target corpora are not aligned")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    src_vocab = src_vocab or Vocab.build(train_src)
    tgt_vocab = tgt_vocab or Vocab.build(train_tgt)
    pairs = [(src_vocab.encode(s), tgt_vocab.encode(t)) for s, t in zip(train_src, train_tgt)]
    dev = [(src_vocab.encode(s), tgt_vocab.encode(t)) for s, t in zip(dev_src, dev_tgt)]
    model = init_model(cfg, len(src_vocab), len(tgt_vocab))
    model, tlog = train(model, pairs, dev, tgt_vocab, cfg)
    save_checkpoint(model, out / CHECKPOINT)
    cfg.save(out / CONFIG)
    src_vocab.save(out / SRC_VOCAB)
    tgt_vocab.save(out / TGT_VOCAB)
    (out / LOG).write_text(
        json.dumps(
            {
                "steps": tlog.steps,
                "epochs": tlog.epochs,
                "best_step": tlog.best_step,
                "stop_reason": tlog.stop_reason,
                "validations": [asdict(v) for v in tlog.validations],
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return model, src_vocab, tgt_vocab, tlog


def load_model_dir(model_dir: "str | Path") -> tuple[Seq2Seq, Vocab, Vocab]:
    d = Path(model_dir)
    src_vocab = Vocab.load(d / SRC_VOCAB)
    tgt_vocab = Vocab.load(d / TGT_VOCAB)
    model = load_checkpoint(d / CHECKPOINT, len(src_vocab), len(tgt_vocab))
    return model, src_vocab, tgt_vocab


def decode_lines(model: Seq2Seq, src_vocab: Vocab, tgt_vocab: Vocab, lines: Sequence[str],
                 beam: int | None = None, alpha: float | None = None) -> list[str]:
    """Translate source lines; over-long sources are truncated to ``max_length``."""
    limit = model.cfg.max_length
    ids = []
    for line in lines:
        enc = src_vocab.encode(line)
        ids.append(enc if len(enc) <= limit else enc[: limit - 1] + [EOS])
    return translate(model, ids, tgt_vocab, beam, alpha)
