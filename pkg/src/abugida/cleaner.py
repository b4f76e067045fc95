"""Two-stage corpus cleaning.

Stage one keeps only code points from the script's Unicode block(s).
Stage two additionally drops independent vowels, native digits and in-block
punctuation/symbols, leaving consonants, vowel signs and diacritics.
Removed characters and whitespace runs collapse to a single space.
"""

from __future__ import annotations

import enum
from typing import Callable

from .profiles import CharClass, ScriptId, profile


class CleaningStage(enum.Enum):
    FIRST = 1
    SECOND = 2


_KEEP_SECOND = (CharClass.CONSONANT, CharClass.DEPENDENT_VOWEL_SIGN, CharClass.DIACRITIC)


def _filter(text: str, keep: Callable[[int], bool]) -> str:
    out: list[str] = []
    gap = False
    for ch in text:
        if keep(ord(ch)):
            if gap and out:
                out.append(" ")
            out.append(ch)
            gap = False
        else:
            gap = True
    return "".join(out)


def clean_first(text: str, script: "str | ScriptId") -> str:
    prof = profile(script)
    return _filter(text, prof.in_blocks)


def clean_second(text: str, script: "str | ScriptId") -> str:
    prof = profile(script)
    return _filter(text, lambda cp: prof.classify(cp) in _KEEP_SECOND)


def clean(text: str, script: "str | ScriptId", stage: "int | str" = "all") -> str:
    """Apply stage ``1``, ``2`` or ``"all"`` (both, in order)."""
    stage = str(stage)
    if stage == "1":
        return clean_first(text, script)
    if stage == "2":
        return clean_second(text, script)
    if stage == "all":
        return clean_second(clean_first(text, script), script)
    raise ValueError(f"unknown cleaning stage {stage!r}")
