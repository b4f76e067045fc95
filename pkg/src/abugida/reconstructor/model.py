"""Post-norm encoder-decoder transformer.

Layout follows the reference toolkit's transformer: sinusoidal positions,
embeddings scaled by sqrt(d) with dropout, and every sublayer wrapped as
dropout -> residual add -> layer norm. Feed-forward blocks use swish.
"""

from __future__ import annotations

import math
from typing import Sequence

import torch
import torch.nn.functional as F
from torch import nn

from ..vocab import BOS, PAD
from .config import ModelConfig


class LengthExceededError(ValueError):
    pass


def sinusoid_table(length: int, dim: int) -> torch.Tensor:
    pos = torch.arange(length, dtype=torch.float64)[:, None]
    i = torch.arange(0, dim, 2, dtype=torch.float64)
    angle = pos / torch.pow(10000.0, i / dim)
    table = torch.zeros(length, dim, dtype=torch.float64)
    table[:, 0::2] = torch.sin(angle)
    table[:, 1::2] = torch.cos(angle[:, : dim // 2])
    return table


class Attention(nn.Module):
    def __init__(self, dim: int, heads: int):
        super().__init__()
        self.heads = heads
        self.q = nn.Linear(dim, dim)
        self.k = nn.Linear(dim, dim)
        self.v = nn.Linear(dim, dim)
        self.o = nn.Linear(dim, dim)

    def split(self, x: torch.Tensor) -> torch.Tensor:
        b, t, d = x.shape
        return x.view(b, t, self.heads, d // self.heads).transpose(1, 2)

    def project_kv(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        return self.split(self.k(x)), self.split(self.v(x))

    def attend(self, x: torch.Tensor, k: torch.Tensor, v: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        q = self.split(self.q(x))
        scores = q @ k.transpose(-1, -2) / math.sqrt(q.size(-1))
        scores = scores.masked_fill(~mask, float("-inf"))
        ctx = torch.softmax(scores, dim=-1) @ v
        b, h, t, dh = ctx.shape
        return self.o(ctx.transpose(1, 2).reshape(b, t, h * dh))

    def forward(self, x, context, mask):
        k, v = self.project_kv(context)
        return self.attend(x, k, v, mask)


class FeedForward(nn.Module):
    def __init__(self, dim: int, hidden: int):
        super().__init__()
        self.inner = nn.Linear(dim, hidden)
        self.outer = nn.Linear(hidden, dim)

    def forward(self, x):
        return self.outer(F.silu(self.inner(x)))


class EncoderLayer(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.self_attn = Attention(cfg.model_dim, cfg.heads)
        self.self_norm = nn.LayerNorm(cfg.model_dim)
        self.ffn = FeedForward(cfg.model_dim, cfg.ff_dim)
        self.ffn_norm = nn.LayerNorm(cfg.model_dim)
        self.drop = nn.Dropout(cfg.dropout)

    def forward(self, x, mask):
        x = self.self_norm(x + self.drop(self.self_attn(x, x, mask)))
        return self.ffn_norm(x + self.drop(self.ffn(x)))


class DecoderLayer(nn.Module):
    def __init__(self, cfg: ModelConfig):
        super().__init__()
        self.self_attn = Attention(cfg.model_dim, cfg.heads)
        self.self_norm = nn.LayerNorm(cfg.model_dim)
        self.cross_attn = Attention(cfg.model_dim, cfg.heads)
        self.cross_norm = nn.LayerNorm(cfg.model_dim)
        self.ffn = FeedForward(cfg.model_dim, cfg.ff_dim)
        self.ffn_norm = nn.LayerNorm(cfg.model_dim)
        self.drop = nn.Dropout(cfg.dropout)

    def _rest(self, x, mem_k, mem_v, mem_mask):
        x = self.cross_norm(x + self.drop(self.cross_attn.attend(x, mem_k, mem_v, mem_mask)))
        return self.ffn_norm(x + self.drop(self.ffn(x)))

    def forward(self, x, self_mask, mem_k, mem_v, mem_mask):
        x = self.self_norm(x + self.drop(self.self_attn(x, x, self_mask)))
        return self._rest(x, mem_k, mem_v, mem_mask)

    def step(self, x, cache: dict, mem_k, mem_v, mem_mask):
        """One decoding position; ``cache`` holds this layer's past keys/values."""
        k, v = self.self_attn.project_kv(x)
        if "k" in cache:
            k = torch.cat([cache["k"], k], dim=2)
            v = torch.cat([cache["v"], v], dim=2)
        cache["k"], cache["v"] = k, v
        keep = torch.ones(x.size(0), 1, 1, k.size(2), dtype=torch.bool, device=x.device)
        x = self.self_norm(x + self.drop(self.self_attn.attend(x, k, v, keep)))
        return self._rest(x, mem_k, mem_v, mem_mask)


class Seq2Seq(nn.Module):
    def __init__(self, cfg: ModelConfig, src_vocab_size: int, tgt_vocab_size: int):
        super().__init__()
        self.cfg = cfg
        self.src_vocab_size = src_vocab_size
        self.tgt_vocab_size = tgt_vocab_size
        d = cfg.model_dim
        self.src_emb = nn.Embedding(src_vocab_size, d)
        self.tgt_emb = nn.Embedding(tgt_vocab_size, d)
        self.out_bias = nn.Parameter(torch.zeros(tgt_vocab_size))
        self.out_proj = None if cfg.tied_output else nn.Parameter(torch.empty(tgt_vocab_size, d))
        self.encoder = nn.ModuleList(EncoderLayer(cfg) for _ in range(cfg.enc_depth))
        self.decoder = nn.ModuleList(DecoderLayer(cfg) for _ in range(cfg.dec_depth))
        self.drop = nn.Dropout(cfg.dropout)
        self.register_buffer("positions", sinusoid_table(cfg.max_length + 1, d).float(), persistent=False)

    @property
    def output_weight(self) -> torch.Tensor:
        return self.tgt_emb.weight if self.out_proj is None else self.out_proj

    def embed(self, table: nn.Embedding, ids: torch.Tensor, offset: int = 0) -> torch.Tensor:
        x = table(ids) * math.sqrt(self.cfg.model_dim)
        pos = self.positions[offset : offset + ids.size(1)].to(x.dtype)
        return self.drop(x + pos)

    def check_length(self, ids: torch.Tensor, side: str) -> None:
        if ids.size(1) > self.cfg.max_length:
            raise LengthExceededError(f"{side} length {ids.size(1)} exceeds max_length {self.cfg.max_length}")

    def encode(self, src: torch.Tensor):
        """Return encoder states and the key mask (B, 1, 1, S)."""
        self.check_length(src, "source")
        mask = (src != PAD)[:, None, None, :]
        x = self.embed(self.src_emb, src)
        for layer in self.encoder:
            x = layer(x, mask)
        return x, mask

    def memory_kv(self, memory: torch.Tensor):
        return [layer.cross_attn.project_kv(memory) for layer in self.decoder]

    def logits(self, h: torch.Tensor) -> torch.Tensor:
        return h @ self.output_weight.t() + self.out_bias

    def decode_train(self, tgt_in: torch.Tensor, memory, mem_mask) -> torch.Tensor:
        t = tgt_in.size(1)
        causal = torch.ones(t, t, dtype=torch.bool, device=tgt_in.device).tril()
        self_mask = causal[None, None] & (tgt_in != PAD)[:, None, None, :]
        x = self.embed(self.tgt_emb, tgt_in)
        for layer, (mk, mv) in zip(self.decoder, self.memory_kv(memory)):
            x = layer(x, self_mask, mk, mv, mem_mask)
        return self.logits(x)

    def forward(self, src: torch.Tensor, tgt: torch.Tensor):
        """Teacher-forced pass; returns (logits, smoothed per-token loss)."""
        self.check_length(tgt, "target")
        memory, mem_mask = self.encode(src)
        logits = self.decode_train(shift_right(tgt), memory, mem_mask)
        loss, _, _ = token_losses(logits, tgt, self.cfg.label_smoothing)
        return logits, loss


def shift_right(tgt: torch.Tensor) -> torch.Tensor:
    bos = torch.full((tgt.size(0), 1), BOS, dtype=tgt.dtype, device=tgt.device)
    return torch.cat([bos, tgt[:, :-1]], dim=1)


def token_losses(logits: torch.Tensor, tgt: torch.Tensor, smoothing: float):
    """Return (mean smoothed loss, summed gold NLL, token count) over non-pad targets."""
    logp = torch.log_softmax(logits, dim=-1)
    nll = -logp.gather(-1, tgt.unsqueeze(-1)).squeeze(-1)
    uniform = -logp.mean(dim=-1)
    keep = tgt != PAD
    n = keep.sum()
    smoothed = ((1 - smoothing) * nll + smoothing * uniform)[keep].sum() / n
    return smoothed, nll[keep].sum(), int(n)


def pad_batch(seqs: Sequence[Sequence[int]]) -> torch.Tensor:
    width = max((len(s) for s in seqs), default=0)
    out = torch.full((len(seqs), max(width, 1)), PAD, dtype=torch.long)
    for i, s in enumerate(seqs):
        out[i, : len(s)] = torch.as_tensor(list(s), dtype=torch.long)
    return out


def init_model(cfg: ModelConfig, src_vocab_size: int, tgt_vocab_size: int, seed: int | None = None) -> Seq2Seq:
    """Build a model with weights drawn from ``seed`` (default ``cfg.seed``).

    Embeddings are N(0, 1/d); other matrices Glorot-uniform; biases zero.
    """
    cfg.validate()
    gen = torch.Generator().manual_seed(cfg.seed if seed is None else seed)
    model = Seq2Seq(cfg, src_vocab_size, tgt_vocab_size)
    with torch.no_grad():
        for name, p in model.named_parameters():
            if name.endswith("_emb.weight"):
                # Unit scale after the sqrt(d) input scaling.
                p.copy_(torch.randn(p.shape, generator=gen) * cfg.model_dim**-0.5)
            elif p.dim() >= 2:
                bound = math.sqrt(6.0 / (p.size(0) + p.size(1)))
                p.copy_(torch.rand(p.shape, generator=gen) * 2 * bound - bound)
            elif "norm" in name and name.endswith("weight"):
                p.fill_(1.0)
            else:
                p.zero_()
    return model


def parameter_count(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters())
