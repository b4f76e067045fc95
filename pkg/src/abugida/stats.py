"""Corpus and masking statistics."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Iterable

from .corruption import Masked, RandomSource, mask_syllables
from .profiles import CharClass, profile
from .syllabifier import SegmentedSentence


@dataclass(frozen=True)
class CorpusStats:
    sentences: int = 0
    syllables: int = 0
    consonants: int = 0
    vowels: int = 0

    @property
    def avg_syllables_per_sentence(self) -> Fraction:
        if not self.sentences:
            return Fraction(0)
        return Fraction(self.syllables, self.sentences)

    def __add__(self, other: "CorpusStats") -> "CorpusStats":
        return CorpusStats(
            self.sentences + other.sentences,
            self.syllables + other.syllables,
            self.consonants + other.consonants,
            self.vowels + other.vowels,
        )

    def as_dict(self) -> dict:
        return {
            "sentences": self.sentences,
            "syllables": self.syllables,
            "consonants": self.consonants,
            "vowels": self.vowels,
            "avg_syllables_per_sentence": f"{float(self.avg_syllables_per_sentence):.2f}",
        }


def sentence_stats(s: SegmentedSentence) -> CorpusStats:
    prof = profile(s.script)
    consonants = vowels = 0
    for syl in s.syllables:
        for ch in syl:
            cls = prof.classify(ord(ch))
            if cls is CharClass.CONSONANT:
                consonants += 1
            elif cls is CharClass.DEPENDENT_VOWEL_SIGN:
                vowels += 1
    return CorpusStats(1, len(s.syllables), consonants, vowels)


def corpus_stats(corpus: Iterable[SegmentedSentence]) -> CorpusStats:
    total = CorpusStats()
    for s in corpus:
        total = total + sentence_stats(s)
    return total


def percent(part: int, whole: int) -> Decimal:
    """100 * part / whole, rounded half-up to two decimals."""
    if not whole:
        return Decimal("0.00")
    return (Decimal(100) * part / whole).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class MaskingStats:
    mask_value: int
    masked_sentences: int
    skipped_sentences: int
    total_syllables_masked: int

    @property
    def skipped_pct(self) -> Decimal:
        return percent(self.skipped_sentences, self.masked_sentences + self.skipped_sentences)

    def as_dict(self) -> dict:
        return {
            "mask_value": self.mask_value,
            "masked_sentences": self.masked_sentences,
            "skipped_sentences": self.skipped_sentences,
            "skipped_pct": str(self.skipped_pct),
            "total_syllables_masked": self.total_syllables_masked,
        }


def masking_stats(corpus: Iterable[SegmentedSentence], k: int, seed: int = 0) -> MaskingStats:
    """Mask every sentence with its own line substream of ``seed`` and tally the outcomes."""
    masked = skipped = total = 0
    for i, s in enumerate(corpus):
        outcome = mask_syllables(s, k, RandomSource.for_line(seed, i))
        if isinstance(outcome, Masked):
            masked += 1
            total += len(outcome.positions)
        else:
            skipped += 1
    return MaskingStats(k, masked, skipped, total)
