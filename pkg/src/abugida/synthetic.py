"""Synthetic corpora for desk-scale experiments.

``abugida_corpus`` writes Bengali-script text with a small, controlled
syllable grammar:

* 20 consonants in 5 groups of 4; each group has a primary vowel sign.
* A syllable's vowel is its consonant's primary vowel, except right after
  one of two trigger consonants, where an alternate vowel is used. Triggers
  carry 10% of the stationary mass, so the vowel matches the consonant's
  primary vowel with probability 0.9, and is fully determined once the
  previous consonant is known.
* Consonants follow a Markov chain: the group advances along a fixed cycle
  with probability ``group_stick`` and the within-group slot repeats with
  probability ``slot_stick``. Both chains are doubly stochastic, so
  consonants are uniform at stationarity.

The vowel line reveals the group sequence but (almost) nothing about the
slot, while a masked syllable can be inferred from its unmasked neighbours.
"""

from __future__ import annotations

import random

CONSONANTS = "কখগঘচছজঝটঠডঢতথদধনপবম"
VOWEL_SIGNS = "ািীুে"
GROUPS = 5
SLOTS = 4
TRIGGERS = frozenset({0, 13})


def primary_vowel(c: int) -> str:
    return VOWEL_SIGNS[c // SLOTS]


def alternate_vowel(c: int) -> str:
    g, j = divmod(c, SLOTS)
    return VOWEL_SIGNS[(g + 1 + j) % GROUPS]


def next_consonant(c: int, rnd: random.Random, group_stick: float, slot_stick: float) -> int:
    g, j = divmod(c, SLOTS)
    if rnd.random() < group_stick:
        g = (g + 2) % GROUPS
    else:
        g = rnd.choice([x for x in range(GROUPS) if x != (g + 2) % GROUPS])
    if rnd.random() >= slot_stick:
        j = rnd.choice([x for x in range(SLOTS) if x != j])
    return g * SLOTS + j


def syllable_sequence(length: int, rnd: random.Random, group_stick: float = 0.8,
                      slot_stick: float = 0.7) -> list[str]:
    c = rnd.randrange(GROUPS * SLOTS)
    prev = None
    out = []
    for _ in range(length):
        vowel = alternate_vowel(c) if prev in TRIGGERS else primary_vowel(c)
        out.append(CONSONANTS[c] + vowel)
        prev, c = c, next_consonant(c, rnd, group_stick, slot_stick)
    return out


def abugida_corpus(n_sentences: int, seed: int = 0, min_len: int = 25, max_len: int = 70,
                   group_stick: float = 0.8, slot_stick: float = 0.7) -> list[str]:
    """Raw text lines (words of 2-5 syllables separated by spaces)."""
    rnd = random.Random(seed)
    lines = []
    for _ in range(n_sentences):
        syls = syllable_sequence(rnd.randint(min_len, max_len), rnd, group_stick, slot_stick)
        words, i = [], 0
        while i < len(syls):
            w = rnd.randint(2, 5)
            words.append("".join(syls[i : i + w]))
            i += w
        lines.append(" ".join(words))
    return lines


def copy_corpus(n_sentences: int, seed: int = 0, vocab_size: int = 10, min_len: int = 3,
                max_len: int = 8) -> list[str]:
    """Random token lines over ``t0 .. t{vocab_size-1}`` for identity (copy) training."""
    rnd = random.Random(seed)
    tokens = [f"t{i}" for i in range(vocab_size)]
    return [" ".join(rnd.choice(tokens) for _ in range(rnd.randint(min_len, max_len)))
            for _ in range(n_sentences)]
