"""Training loop: Adam, inverse-square-root decay, early stopping on dev cross-entropy."""

from __future__ import annotations

import copy
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import torch

from ..bleu import UndefinedPrecisionError, corpus_bleu
from ..vocab import Vocab
from .config import ModelConfig
from .decode import beam_decode_batch, strip_eos
from .model import Seq2Seq, pad_batch, token_losses

log = logging.getLogger(__name__)

Pair = tuple[Sequence[int], Sequence[int]]


class DivergenceError(RuntimeError):
    pass


def learning_rate(step: int, base_lr: float, decay_start: int) -> float:
    """Constant until ``decay_start``, then base * sqrt(decay_start / step)."""
    if step <= 0 or decay_start <= 0:
        return base_lr
    return base_lr * min(1.0, math.sqrt(decay_start / step))


@dataclass
class Validation:
    step: int
    epoch: int
    cross_entropy: float
    perplexity: float
    smoothed_cross_entropy: float
    bleu: float | None


@dataclass
class TrainLog:
    validations: list[Validation] = field(default_factory=list)
    steps: int = 0
    epochs: int = 0
    best_step: int = 0
    stop_reason: str = ""

    @property
    def initial(self) -> Validation:
        return self.validations[0]

    @property
    def best(self) -> Validation:
        return next(v for v in self.validations if v.step == self.best_step)


def make_batches(pairs: Sequence[Pair], cfg: ModelConfig, rng: np.random.Generator) -> list[list[int]]:
    """Shuffle, sort within maxi-batches by length, and pack by token budget."""
    order = rng.permutation(len(pairs)).tolist()
    avg_len = max(1, sum(max(len(s), len(t)) for s, t in pairs) // max(1, len(pairs)))
    chunk = cfg.maxi_batch * max(1, cfg.batch_tokens // avg_len)
    batches: list[list[int]] = []
    for start in range(0, len(order), chunk):
        block = sorted(order[start : start + chunk], key=lambda i: (len(pairs[i][1]), len(pairs[i][0])))
        current: list[int] = []
        width = 0
        for i in block:
            w = max(width, len(pairs[i][0]), len(pairs[i][1]))
            if current and w * (len(current) + 1) > cfg.batch_tokens:
                batches.append(current)
                current, w = [], max(len(pairs[i][0]), len(pairs[i][1]))
            current.append(i)
            width = w
        if current:
            batches.append(current)
    return [batches[i] for i in rng.permutation(len(batches)).tolist()]


@torch.no_grad()
def dev_losses(model: Seq2Seq, pairs: Sequence[Pair], batch_size: int = 64) -> tuple[float, float]:
    """Mean unsmoothed and smoothed per-token cross-entropy over ``pairs``."""
    was_training = model.training
    model.eval()
    nll_sum = smooth_sum = 0.0
    tokens = 0
    for start in range(0, len(pairs), batch_size):
        chunk = pairs[start : start + batch_size]
        src = pad_batch([p[0] for p in chunk])
        tgt = pad_batch([p[1] for p in chunk])
        logits, _ = model(src, tgt)
        smoothed, nll, n = token_losses(logits, tgt, model.cfg.label_smoothing)
        nll_sum += float(nll)
        smooth_sum += float(smoothed) * n
        tokens += n
    model.train(was_training)
    return nll_sum / tokens, smooth_sum / tokens


def translate(model: Seq2Seq, srcs: Sequence[Sequence[int]], vocab: Vocab, beam: int | None = None,
              alpha: float | None = None, batch_size: int = 64) -> list[str]:
    lines = []
    for start in range(0, len(srcs), batch_size):
        for ids in beam_decode_batch(model, srcs[start : start + batch_size], beam, alpha):
            lines.append(vocab.decode(strip_eos(ids)))
    return lines


def bleu_or_zero(hyps: Sequence[str], refs: Sequence[str]) -> float:
    try:
        return corpus_bleu(hyps, refs).bleu
    except UndefinedPrecisionError:
        return 0.0


def evaluate(model: Seq2Seq, pairs: Sequence[Pair], tgt_vocab: Vocab, with_bleu: bool = True,
             beam: int | None = None) -> tuple[float, float, float | None]:
    """Return (cross-entropy, perplexity, BLEU) on a parallel corpus of id sequences."""
    ce, _ = dev_losses(model, pairs)
    bleu = decoded_bleu(model, pairs, tgt_vocab, beam) if with_bleu else None
    return ce, math.exp(ce), bleu


def decoded_bleu(model: Seq2Seq, pairs: Sequence[Pair], tgt_vocab: Vocab, beam: int | None = None) -> float:
    hyps = translate(model, [p[0] for p in pairs], tgt_vocab, beam)
    refs = [tgt_vocab.decode(strip_eos(p[1])) for p in pairs]
    return bleu_or_zero(hyps, refs)


class ParameterAverage:
    """Exponential moving average of parameters with a warm-up-limited decay."""

    def __init__(self, model: Seq2Seq, decay: float):
        self.decay = decay
        self.updates = 0
        self.shadow = [p.detach().clone() for p in model.parameters()]

    @torch.no_grad()
    def update(self, model: Seq2Seq) -> None:
        self.updates += 1
        d = min(self.decay, (1 + self.updates) / (10 + self.updates))
        for s, p in zip(self.shadow, model.parameters()):
            s.mul_(d).add_(p.detach(), alpha=1 - d)

    @torch.no_grad()
    def swap(self, model: Seq2Seq) -> None:
        for s, p in zip(self.shadow, model.parameters()):
            tmp = p.detach().clone()
            p.copy_(s)
            s.copy_(tmp)


def train(
    model: Seq2Seq,
    train_pairs: Sequence[Pair],
    dev_pairs: Sequence[Pair],
    tgt_vocab: Vocab | None = None,
    cfg: ModelConfig | None = None,
    on_validation: Callable[[Validation], None] | None = None,
) -> tuple[Seq2Seq, TrainLog]:
    """Train ``model`` in place and return it loaded with the best-dev parameters."""
    cfg = cfg or model.cfg
    if not dev_pairs:
        raise ValueError("dev corpus is empty")
    torch.set_num_threads(cfg.threads)
    torch.manual_seed(cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    limit = cfg.max_length
    usable = [p for p in train_pairs if len(p[0]) <= limit and len(p[1]) <= limit]
    if len(usable) < len(train_pairs):
        log.info("skipping %d training pairs longer than %d", len(train_pairs) - len(usable), limit)
    dev_pairs = [p for p in dev_pairs if len(p[0]) <= limit and len(p[1]) <= limit]
    with_bleu = cfg.valid_bleu and tgt_vocab is not None

    optimizer = torch.optim.Adam(
        model.parameters(), lr=cfg.base_lr, betas=(cfg.adam_beta1, cfg.adam_beta2), eps=cfg.adam_eps
    )
    average = ParameterAverage(model, cfg.ema_decay) if cfg.exp_smoothing else None
    tlog = TrainLog()
    best_ce = math.inf
    best_state = None
    stalls = 0

    def validate(step: int, epoch: int) -> bool:
        """Record a validation; return True when patience is exhausted."""
        nonlocal best_ce, best_state, stalls
        if average is not None:
            average.swap(model)
        ce, smoothed = dev_losses(model, dev_pairs)
        bleu = None
        if with_bleu:
            bleu = decoded_bleu(model, dev_pairs, tgt_vocab)
        rec = Validation(step, epoch, ce, math.exp(ce), smoothed, bleu)
        tlog.validations.append(rec)
        if on_validation:
            on_validation(rec)
        log.info("valid step %d: ce %.4f ppl %.3f bleu %s", step, ce, rec.perplexity, bleu)
        stop = False
        if step == 0:
            best_ce = ce
            best_state = copy.deepcopy(model.state_dict())
        elif ce < best_ce:
            best_ce, stalls = ce, 0
            best_state = copy.deepcopy(model.state_dict())
            tlog.best_step = step
        else:
            stalls += 1
            stop = stalls >= cfg.early_stop_patience
        if average is not None:
            average.swap(model)
        return stop

    model.train()
    validate(0, 0)
    step = 0
    stopped = False
    for epoch in range(1, cfg.max_epochs + 1):
        for batch in make_batches(usable, cfg, rng):
            step += 1
            for group in optimizer.param_groups:
                group["lr"] = learning_rate(step, cfg.base_lr, cfg.lr_decay_start)
            src = pad_batch([usable[i][0] for i in batch])
            tgt = pad_batch([usable[i][1] for i in batch])
            _, loss = model(src, tgt)
            if not torch.isfinite(loss):
                raise DivergenceError(f"non-finite loss at step {step}")
            optimizer.zero_grad()
            loss.backward()
            torch.nn.utils.clip_grad_norm_(model.parameters(), cfg.clip_norm)
            optimizer.step()
            if average is not None:
                average.update(model)
            if cfg.valid_every and step % cfg.valid_every == 0 and validate(step, epoch):
                stopped = True
                break
        tlog.epochs = epoch
        if stopped:
            break
        if not cfg.valid_every and validate(step, epoch):
            stopped = True
            break
    if not stopped and tlog.validations[-1].step != step:
        validate(step, tlog.epochs)
    tlog.steps = step
    tlog.stop_reason = "early-stopping" if stopped else "max-epochs"
    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return model, tlog
