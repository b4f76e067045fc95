"""Incomplete-input variants of segmented sentences.

Four corruptions are supported: consonant-only, vowel-only, random
character deletion (1 or 2 per syllable) and non-adjacent syllable masking.
Randomness always goes through a :class:`RandomSource` so runs are
reproducible and tests can script the draws.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .profiles import CharClass, ScriptId, profile
from .syllabifier import SegmentedSentence

MASK_TOKEN = "<mask>"


class RandomSource:
    """Seeded draws backed by a PCG64 stream.

    ``for_line(seed, i)`` derives an independent substream per corpus line, so
    results do not depend on processing order.
    """

    def __init__(self, seed: int, *key: int):
        self.seed = seed
        self._rng = np.random.default_rng(np.random.SeedSequence([seed, *key]))

    @classmethod
    def for_line(cls, seed: int, line_index: int) -> "RandomSource":
        return cls(seed, line_index)

    def next_index(self, bound: int) -> int:
        if bound < 1:
            raise ValueError("bound must be positive")
        return int(self._rng.integers(bound))

    def next_subset(self, n: int, k: int, non_adjacent: bool = False) -> list[int]:
        """Uniform k-subset of range(n), optionally with no two positions adjacent."""
        if k == 0:
            return []
        if non_adjacent:
            # k-subsets of n-k+1 slots map one-to-one onto non-adjacent subsets
            # by shifting the i-th smallest choice right by i.
            m = n - k + 1
            if m < k:
                raise ValueError(f"no {k} non-adjacent positions among {n}")
            picks = sorted(int(x) for x in self._rng.choice(m, size=k, replace=False))
            return [p + i for i, p in enumerate(picks)]
        if k > n:
            raise ValueError(f"cannot draw {k} of {n}")
        return sorted(int(x) for x in self._rng.choice(n, size=k, replace=False))


class ScriptedSource:
    """Test double that replays a fixed list of draws.

    Each draw is an int (for ``next_index`` or a one-element subset) or an
    iterable of positions (for ``next_subset``).
    """

    def __init__(self, draws: Iterable):
        self._draws = list(draws)
        self.seed = 0

    def _pop(self):
        if not self._draws:
            raise RuntimeError("scripted random source exhausted")
        return self._draws.pop(0)

    def next_index(self, bound: int) -> int:
        value = self._pop()
        if not 0 <= value < bound:
            raise ValueError(f"scripted index {value} outside [0, {bound})")
        return value

    def next_subset(self, n: int, k: int, non_adjacent: bool = False) -> list[int]:
        value = self._pop()
        positions = sorted([value] if isinstance(value, int) else value)
        if len(positions) != k or any(not 0 <= p < n for p in positions):
            raise ValueError(f"scripted subset {positions} is not a {k}-subset of range({n})")
        if non_adjacent and any(b - a < 2 for a, b in zip(positions, positions[1:])):
            raise ValueError(f"scripted subset {positions} has adjacent positions")
        return positions


class CorruptionKind(enum.Enum):
    CONSONANT = "consonant"
    VOWEL = "vowel"
    DELETE = "delete"
    MASK = "mask"


DELETE_COUNTS = (1, 2)
MASK_COUNTS = (3, 5, 8, 10)


@dataclass(frozen=True)
class CorruptionSpec:
    kind: CorruptionKind
    amount: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind is CorruptionKind.DELETE and self.amount not in DELETE_COUNTS:
            raise ValueError(f"deletion count must be one of {DELETE_COUNTS}")
        if self.kind is CorruptionKind.MASK and self.amount not in MASK_COUNTS:
            raise ValueError(f"mask count must be one of {MASK_COUNTS}")

    @classmethod
    def parse(cls, name: str, seed: int = 0) -> "CorruptionSpec":
        m = re.fullmatch(r"(consonant|vowel|delete|mask)(\d*)", name.strip().lower())
        if not m:
            raise ValueError(f"unknown corruption {name!r}")
        kind = CorruptionKind(m.group(1))
        amount = int(m.group(2)) if m.group(2) else 0
        if kind in (CorruptionKind.CONSONANT, CorruptionKind.VOWEL) and m.group(2):
            raise ValueError(f"unknown corruption {name!r}")
        return cls(kind, amount, seed)

    @property
    def name(self) -> str:
        return self.kind.value + (str(self.amount) if self.amount else "")


@dataclass(frozen=True)
class Masked:
    tokens: list[str]
    positions: list[int]


@dataclass(frozen=True)
class Skipped:
    reason: str = "insufficient syllables"


MaskOutcome = Union[Masked, Skipped]


def _syllables(s: "SegmentedSentence | Sequence[str]") -> list[str]:
    return list(s.syllables) if isinstance(s, SegmentedSentence) else list(s)


def _script(s, script) -> ScriptId:
    if script is not None:
        return ScriptId.parse(script)
    if isinstance(s, SegmentedSentence):
        return s.script
    raise TypeError("script is required when passing a plain syllable list")


def _keep_class(s, script, cls: CharClass) -> list[str]:
    prof = profile(_script(s, script))
    tokens = []
    for syl in _syllables(s):
        kept = "".join(ch for ch in syl if prof.classify(ord(ch)) is cls)
        if kept:
            tokens.append(kept)
    return tokens


def extract_consonants(s, script=None) -> list[str]:
    """Consonant letters of each syllable as one token; consonant-free syllables are dropped."""
    return _keep_class(s, script, CharClass.CONSONANT)


def extract_vowels(s, script=None) -> list[str]:
    """Written vowel signs of each syllable as one token; inherent-vowel syllables are dropped."""
    return _keep_class(s, script, CharClass.DEPENDENT_VOWEL_SIGN)


def delete_random_chars(s, n: int, rng) -> list[str]:
    if n not in DELETE_COUNTS:
        raise ValueError(f"deletion count must be one of {DELETE_COUNTS}")
    out = []
    for syl in _syllables(s):
        drop = min(n, len(syl) - 1)
        if drop <= 0:
            out.append(syl)
            continue
        gone = set(rng.next_subset(len(syl), drop))
        out.append("".join(ch for i, ch in enumerate(syl) if i not in gone))
    return out


def can_mask(num_syllables: int, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    return num_syllables >= 2 * k - 1


def mask_syllables(s, k: int, rng) -> MaskOutcome:
    syllables = _syllables(s)
    if not can_mask(len(syllables), k):
        return Skipped()
    positions = rng.next_subset(len(syllables), k, non_adjacent=True)
    tokens = list(syllables)
    for p in positions:
        tokens[p] = MASK_TOKEN
    return Masked(tokens, positions)


def corrupt(s: SegmentedSentence, spec: CorruptionSpec, line_index: int = 0) -> list[str] | None:
    """Apply ``spec`` to one sentence; ``None`` means the sentence is skipped (mask mode)."""
    if spec.kind is CorruptionKind.CONSONANT:
        return extract_consonants(s)
    if spec.kind is CorruptionKind.VOWEL:
        return extract_vowels(s)
    rng = RandomSource.for_line(spec.seed, line_index)
    if spec.kind is CorruptionKind.DELETE:
        return delete_random_chars(s, spec.amount, rng)
    outcome = mask_syllables(s, spec.amount, rng)
    return outcome.tokens if isinstance(outcome, Masked) else None
