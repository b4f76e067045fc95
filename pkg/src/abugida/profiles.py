"""Per-script character classification tables.

Each of the six scripts ships a static table (``data/<script>.tsv``) mapping
code points of its Unicode block to one of the syllable-relevant classes.
Code points that are not listed, or lie outside the block, are ``Other``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


class ScriptId(str, enum.Enum):
    BENGALI = "bengali"
    HINDI = "hindi"
    KHMER = "khmer"
    LAO = "lao"
    MYANMAR = "myanmar"
    THAI = "thai"

    @classmethod
    def parse(cls, value: "str | ScriptId") -> "ScriptId":
        if isinstance(value, ScriptId):
            return value
        key = value.strip().lower()
        try:
            return _ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown script {value!r}") from None


_ALIASES = {s.value: s for s in ScriptId}
_ALIASES.update(
    {
        "bn": ScriptId.BENGALI,
        "bg": ScriptId.BENGALI,
        "hi": ScriptId.HINDI,
        "km": ScriptId.KHMER,
        "kh": ScriptId.KHMER,
        "lo": ScriptId.LAO,
        "my": ScriptId.MYANMAR,
        "th": ScriptId.THAI,
    }
)


class CharClass(str, enum.Enum):
    CONSONANT = "Consonant"
    DEPENDENT_VOWEL_SIGN = "DependentVowelSign"
    INDEPENDENT_VOWEL = "IndependentVowel"
    DIACRITIC = "Diacritic"
    DIGIT = "Digit"
    OTHER = "Other"


BLOCKS: dict[ScriptId, tuple[tuple[int, int], ...]] = {
    ScriptId.BENGALI: ((0x0980, 0x09FF),),
    ScriptId.HINDI: ((0x0900, 0x097F),),
    ScriptId.KHMER: ((0x1780, 0x17FF),),
    ScriptId.LAO: ((0x0E80, 0x0EFF),),
    ScriptId.MYANMAR: ((0x1000, 0x109F),),
    ScriptId.THAI: ((0x0E00, 0x0E7F),),
}

# Killer marks that glue the next consonant into a stacked cluster.
JOINERS: dict[ScriptId, frozenset[int]] = {
    ScriptId.BENGALI: frozenset({0x09CD}),
    ScriptId.HINDI: frozenset({0x094D}),
    ScriptId.KHMER: frozenset({0x17D2}),
    ScriptId.LAO: frozenset(),
    ScriptId.MYANMAR: frozenset({0x1039}),
    ScriptId.THAI: frozenset(),
}

# Vowel signs written (and stored) before their consonant.
PREPOSED_VOWELS: dict[ScriptId, frozenset[int]] = {
    ScriptId.BENGALI: frozenset(),
    ScriptId.HINDI: frozenset(),
    ScriptId.KHMER: frozenset(),
    ScriptId.LAO: frozenset(range(0x0EC0, 0x0EC5)),
    ScriptId.MYANMAR: frozenset(),
    ScriptId.THAI: frozenset(range(0x0E40, 0x0E45)),
}


@dataclass(frozen=True)
class ScriptProfile:
    script: ScriptId
    blocks: tuple[tuple[int, int], ...]
    consonants: frozenset[int]
    dependent_vowels: frozenset[int]
    independent_vowels: frozenset[int]
    diacritics: frozenset[int]
    digits: frozenset[int]
    joiners: frozenset[int]
    preposed_vowels: frozenset[int]

    def in_blocks(self, cp: int) -> bool:
        return any(lo <= cp <= hi for lo, hi in self.blocks)

    def classify(self, cp: int) -> CharClass:
        return self._table.get(cp, CharClass.OTHER)

    def members(self, cls: CharClass) -> frozenset[int]:
        return {
            CharClass.CONSONANT: self.consonants,
            CharClass.DEPENDENT_VOWEL_SIGN: self.dependent_vowels,
            CharClass.INDEPENDENT_VOWEL: self.independent_vowels,
            CharClass.DIACRITIC: self.diacritics,
            CharClass.DIGIT: self.digits,
        }[cls]

    @property
    def _table(self) -> dict[int, CharClass]:
        return _class_table(self.script)


def _read_table(script: ScriptId) -> dict[int, CharClass]:
    text = resources.files("abugida.data").joinpath(f"{script.value}.tsv").read_text("utf-8")
    table: dict[int, CharClass] = {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        cp_hex, cls = line.split("\t")
        table[int(cp_hex, 16)] = CharClass(cls)
    return table


@lru_cache(maxsize=None)
def _class_table(script: ScriptId) -> dict[int, CharClass]:
    return _read_table(script)


def profile(script: "str | ScriptId") -> ScriptProfile:
    """Return the static profile for ``script`` (names and two-letter codes accepted)."""
    return _profile(ScriptId.parse(script))


@lru_cache(maxsize=None)
def _profile(script: ScriptId) -> ScriptProfile:
    table = _class_table(script)

    def members(cls: CharClass) -> frozenset[int]:
        return frozenset(cp for cp, c in table.items() if c is cls)

    return ScriptProfile(
        script=script,
        blocks=BLOCKS[script],
        consonants=members(CharClass.CONSONANT),
        dependent_vowels=members(CharClass.DEPENDENT_VOWEL_SIGN),
        independent_vowels=members(CharClass.INDEPENDENT_VOWEL),
        diacritics=members(CharClass.DIACRITIC),
        digits=members(CharClass.DIGIT),
        joiners=JOINERS[script],
        preposed_vowels=PREPOSED_VOWELS[script],
    )


def classify_char(ch: "str | int", script: "str | ScriptId") -> CharClass:
    cp = ord(ch) if isinstance(ch, str) else ch
    return profile(script).classify(cp)


class ClassMismatchError(ValueError):
    pass


def compose_syllable(base: str, vowel_sign: str | None, script: "str | ScriptId") -> str:
    """Build a consonant syllable, optionally replacing its inherent vowel with ``vowel_sign``."""
    prof = profile(script)
    if len(base) != 1 or prof.classify(ord(base)) is not CharClass.CONSONANT:
        raise ClassMismatchError(f"{base!r} is not a {prof.script.value} consonant")
    if vowel_sign is None:
        return base
    if len(vowel_sign) != 1 or prof.classify(ord(vowel_sign)) is not CharClass.DEPENDENT_VOWEL_SIGN:
        raise ClassMismatchError(f"{vowel_sign!r} is not a {prof.script.value} vowel sign")
    if ord(vowel_sign) in prof.preposed_vowels:
        # Thai/Lao preposed vowels are stored before the consonant.
        return vowel_sign + base
    return base + vowel_sign
