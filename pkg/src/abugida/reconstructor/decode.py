"""Greedy and beam-search decoding with cached decoder states."""

from __future__ import annotations

from typing import Sequence

import torch

from ..vocab import BOS, EOS, PAD
from .model import Seq2Seq, pad_batch

# Never emitted by the decoder.
BLOCKED = (PAD, BOS)


class _DecoderState:
    """Per-row decoder caches; rows can be reordered or dropped between steps."""

    def __init__(self, model: Seq2Seq, src: torch.Tensor):
        self.model = model
        memory, self.mem_mask = model.encode(src)
        self.mem_kv = model.memory_kv(memory)
        self.caches: list[dict] = [{} for _ in model.decoder]
        self.t = 0

    def select(self, rows: torch.Tensor) -> None:
        self.mem_mask = self.mem_mask.index_select(0, rows)
        self.mem_kv = [(k.index_select(0, rows), v.index_select(0, rows)) for k, v in self.mem_kv]
        for cache in self.caches:
            for key in list(cache):
                cache[key] = cache[key].index_select(0, rows)

    def step(self, prev: torch.Tensor) -> torch.Tensor:
        """Log-probabilities of the next token given the previous token per row."""
        m = self.model
        x = m.embed(m.tgt_emb, prev[:, None], offset=self.t)
        for layer, cache, (mk, mv) in zip(m.decoder, self.caches, self.mem_kv):
            x = layer.step(x, cache, mk, mv, self.mem_mask)
        self.t += 1
        logp = torch.log_softmax(m.logits(x[:, 0]), dim=-1)
        logp[:, list(BLOCKED)] = float("-inf")
        return logp


def _max_len(model: Seq2Seq, max_len: int | None) -> int:
    limit = model.cfg.max_length
    return limit if max_len is None else min(max_len, limit)


@torch.no_grad()
def greedy_decode_batch(model: Seq2Seq, srcs: Sequence[Sequence[int]], max_len: int | None = None) -> list[list[int]]:
    max_len = _max_len(model, max_len)
    was_training = model.training
    model.eval()
    state = _DecoderState(model, pad_batch(srcs))
    n = len(srcs)
    out: list[list[int]] = [[] for _ in range(n)]
    alive = torch.arange(n)
    prev = torch.full((n,), BOS, dtype=torch.long)
    for _ in range(max_len):
        nxt = state.step(prev).argmax(dim=-1)
        keep = []
        for j, row in enumerate(alive.tolist()):
            tok = int(nxt[j])
            out[row].append(tok)
            if tok != EOS:
                keep.append(j)
        if not keep:
            break
        idx = torch.tensor(keep)
        alive, prev = alive[idx], nxt[idx]
        state.select(idx)
    model.train(was_training)
    return out


def greedy_decode(model: Seq2Seq, src: Sequence[int], max_len: int | None = None) -> list[int]:
    return greedy_decode_batch(model, [src], max_len)[0]


def normalized_score(logprob: float, length: int, alpha: float) -> float:
    return logprob / (length**alpha)


@torch.no_grad()
def beam_decode_batch(
    model: Seq2Seq,
    srcs: Sequence[Sequence[int]],
    beam: int | None = None,
    alpha: float | None = None,
    max_len: int | None = None,
) -> list[list[int]]:
    """Beam search; each sentence's beam shrinks by one per finished hypothesis.

    Finished hypotheses (ending in ``</s>``, or truncated at ``max_len``) are
    ranked by total log-probability / length**alpha, ties going to the
    lexicographically smaller id sequence.
    """
    beam = model.cfg.beam_size if beam is None else beam
    alpha = model.cfg.length_norm_alpha if alpha is None else alpha
    if beam < 1:
        raise ValueError("beam must be at least 1")
    max_len = _max_len(model, max_len)
    was_training = model.training
    model.eval()
    n = len(srcs)
    state = _DecoderState(model, pad_batch(srcs))
    # One row per live hypothesis: (sentence, token history, total logprob).
    owners = list(range(n))
    histories: list[list[int]] = [[] for _ in range(n)]
    scores = torch.zeros(n, dtype=torch.float64)
    width = [beam] * n
    finished: list[list[tuple[float, list[int]]]] = [[] for _ in range(n)]
    prev = torch.full((n,), BOS, dtype=torch.long)

    for t in range(max_len):
        logp = state.step(prev).double()
        last = t == max_len - 1
        rows_of: dict[int, list[int]] = {}
        for r, s in enumerate(owners):
            rows_of.setdefault(s, []).append(r)
        new_rows, new_owners, new_hist, new_scores, new_prev = [], [], [], [], []
        vocab = logp.size(1)
        for s, rows in rows_of.items():
            cand = (scores[rows, None] + logp[rows]).reshape(-1)
            k = min(width[s], cand.numel())
            top_scores, top_idx = cand.topk(k)
            for sc, idx in zip(top_scores.tolist(), top_idx.tolist()):
                if sc == float("-inf"):
                    break
                r = rows[idx // vocab]
                tok = idx % vocab
                hist = histories[r] + [tok]
                if tok == EOS or last:
                    finished[s].append((normalized_score(sc, len(hist), alpha), hist))
                    width[s] -= 1
                else:
                    new_rows.append(r)
                    new_owners.append(s)
                    new_hist.append(hist)
                    new_scores.append(sc)
                    new_prev.append(tok)
        if not new_rows:
            break
        idx = torch.tensor(new_rows)
        state.select(idx)
        owners, histories = new_owners, new_hist
        scores = torch.tensor(new_scores, dtype=torch.float64)
        prev = torch.tensor(new_prev, dtype=torch.long)

    model.train(was_training)
    out = []
    for hyps in finished:
        best = min(hyps, key=lambda h: (-h[0], h[1]))
        out.append(best[1])
    return out


def beam_decode(model: Seq2Seq, src: Sequence[int], beam: int | None = None, alpha: float | None = None,
                max_len: int | None = None) -> list[int]:
    return beam_decode_batch(model, [src], beam, alpha, max_len)[0]


def strip_eos(ids: Sequence[int]) -> list[int]:
    ids = list(ids)
    return ids[:-1] if ids and ids[-1] == EOS else ids
