"""Corpus-level BLEU, single reference, uniform 1-4 gram weights, no smoothing."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

MAX_ORDER = 4


class UndefinedPrecisionError(ValueError):
    """No candidate line is long enough to contain an n-gram of the requested order."""


Tokens = Sequence[str]


def _tokens(line) -> list[str]:
    return line.split() if isinstance(line, str) else list(line)


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _check(cands, refs) -> None:
    if len(cands) != len(refs):
        raise ValueError(f"{len(cands)} candidate lines vs {len(refs)} reference lines")
    if not cands:
        raise ValueError("empty corpus")


def _match_counts(cand: list[str], ref: list[str], n: int) -> tuple[int, int]:
    c = _ngrams(cand, n)
    r = _ngrams(ref, n)
    clipped = sum(min(count, r[g]) for g, count in c.items())
    return clipped, sum(c.values())


def modified_precision(cands, refs, n: int) -> Fraction:
    _check(cands, refs)
    matches = total = 0
    for cand, ref in zip(cands, refs):
        m, t = _match_counts(_tokens(cand), _tokens(ref), n)
        matches += m
        total += t
    if total == 0:
        raise UndefinedPrecisionError(f"no candidate has {n} or more tokens")
    return Fraction(matches, total)


def brevity_penalty(c: int, r: int) -> float:
    if c < 1 or r < 1:
        raise ValueError("lengths must be positive")
    if c > r:
        return 1.0
    return math.exp(1 - r / c)


@dataclass(frozen=True)
class BleuReport:
    precisions: tuple[Fraction, ...]
    brevity_penalty: float
    bleu: float
    candidate_length: int
    reference_length: int

    def __str__(self) -> str:
        ps = "/".join(f"{100 * float(p):.1f}" for p in self.precisions)
        return (
            f"BLEU = {self.bleu:.2f}, p1/p2/p3/p4 = {ps}, BP = {self.brevity_penalty:.3f}, "
            f"ratio = {self.candidate_length}/{self.reference_length}"
        )


def corpus_bleu(cands, refs) -> BleuReport:
    _check(cands, refs)
    cand_toks = [_tokens(c) for c in cands]
    ref_toks = [_tokens(r) for r in refs]
    precisions = tuple(modified_precision(cand_toks, ref_toks, n) for n in range(1, MAX_ORDER + 1))
    c = sum(map(len, cand_toks))
    r = sum(map(len, ref_toks))
    bp = brevity_penalty(c, r)
    if any(p == 0 for p in precisions):
        score = 0.0
    else:
        log_mean = math.fsum(math.log(p) for p in precisions) / MAX_ORDER
        score = 100.0 * bp * math.exp(log_mean)
    return BleuReport(precisions, bp, score, c, r)
