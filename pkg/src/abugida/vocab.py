"""Token vocabularies with fixed special ids."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

from .corruption import MASK_TOKEN

PAD, BOS, EOS, UNK, MASK = 0, 1, 2, 3, 4
SPECIALS = ("<pad>", "<s>", "</s>", "<unk>", MASK_TOKEN)


class Vocab:
    def __init__(self, tokens: Sequence[str] = (), freqs: Sequence[int] | None = None):
        self.itos: list[str] = list(SPECIALS)
        self.freqs: list[int] = list(freqs) if freqs is not None else [0] * len(tokens)
        for tok in tokens:
            if tok in SPECIALS:
                raise ValueError(f"{tok!r} is reserved")
            self.itos.append(tok)
        self.stoi = {tok: i for i, tok in enumerate(self.itos)}
        if len(self.stoi) != len(self.itos):
            raise ValueError("duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.itos)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocab) and self.itos == other.itos

    @classmethod
    def build(cls, lines: Iterable[str], min_freq: int = 1) -> "Vocab":
        counts: Counter = Counter()
        first_seen: dict[str, int] = {}
        for line in lines:
            for tok in line.split():
                if tok in SPECIALS:
                    continue
                counts[tok] += 1
                first_seen.setdefault(tok, len(first_seen))
        kept = [t for t in counts if counts[t] >= min_freq]
        kept.sort(key=lambda t: (-counts[t], first_seen[t]))
        return cls(kept, [counts[t] for t in kept])

    def encode(self, line: "str | Sequence[str]") -> list[int]:
        tokens = line.split() if isinstance(line, str) else line
        return [self.stoi.get(t, UNK) for t in tokens] + [EOS]

    def decode(self, ids: Iterable[int]) -> str:
        out = []
        for i in ids:
            i = int(i)
            if i == EOS:
                break
            if i < len(SPECIALS):
                continue
            out.append(self.itos[i])
        return " ".join(out)

    def save(self, path: "str | Path") -> None:
        text = "".join(f"{t}\t{f}\n" for t, f in zip(self.itos[len(SPECIALS) :], self.freqs))
        Path(path).write_text(text, encoding="utf-8")

    @classmethod
    def load(cls, path: "str | Path") -> "Vocab":
        tokens, freqs = [], []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            if not line:
                continue
            tok, freq = line.rsplit("\t", 1)
            tokens.append(tok)
            freqs.append(int(freq))
        return cls(tokens, freqs)


def build_vocab(corpus_file: "str | Path", min_freq: int = 1) -> Vocab:
    with open(corpus_file, encoding="utf-8") as f:
        return Vocab.build(f, min_freq)
