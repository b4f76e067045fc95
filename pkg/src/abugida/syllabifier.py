"""Rule-based syllable segmentation.

A syllable is::

    preposed-vowel* consonant (joiner consonant)* (vowel-sign | diacritic)*

Stacked clusters glued by a virama/coeng stay in one syllable; Thai and Lao
preposed vowels attach forward to the next consonant. Any character that
cannot start a syllable becomes a one-character residue syllable.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .profiles import ScriptId, profile

log = logging.getLogger(__name__)


@dataclass
class SegmentedSentence:
    script: ScriptId
    syllables: list[str] = field(default_factory=list)
    residues: int = 0

    def __len__(self) -> int:
        return len(self.syllables)


def _char_class(cps) -> str:
    return "[" + "".join(re.escape(chr(cp)) for cp in sorted(cps)) + "]"


@lru_cache(maxsize=None)
def syllable_pattern(script: ScriptId) -> re.Pattern[str]:
    prof = profile(script)
    cons = _char_class(prof.consonants)
    marks = _char_class((prof.dependent_vowels - prof.preposed_vowels) | prof.diacritics)
    body = cons
    if prof.joiners:
        body += f"(?:{_char_class(prof.joiners)}{cons})*"
    pre = f"{_char_class(prof.preposed_vowels)}*" if prof.preposed_vowels else ""
    return re.compile(f"(?P<syl>{pre}{body}{marks}*)|(?P<res>\\S)")


def segment(text: str, script: "str | ScriptId") -> SegmentedSentence:
    script = ScriptId.parse(script)
    syllables: list[str] = []
    residues = 0
    for m in syllable_pattern(script).finditer(text):
        if m.lastgroup == "res":
            residues += 1
        syllables.append(m.group())
    if residues:
        log.debug("%d residue syllable(s) in %s input", residues, script.value)
    return SegmentedSentence(script, syllables, residues)


def to_syllable_line(s: "SegmentedSentence | list[str]") -> str:
    syllables = s.syllables if isinstance(s, SegmentedSentence) else s
    return " ".join(syllables)


def parse_syllable_line(line: str) -> list[str]:
    return line.split()
