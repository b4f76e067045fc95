import threading
import unicodedata

import pytest

from abugida.profiles import (
    CharClass,
    ClassMismatchError,
    ScriptId,
    classify_char,
    compose_syllable,
    profile,
)

# Consonant "ka" with vowels a, aa, i, ii, u in every script.
KA_SYLLABLES = {
    "bengali": ("ক", ["ক", "কা", "কি", "কী", "কু"]),
    "hindi": ("क", ["क", "का", "कि", "की", "कु"]),
    "khmer": ("ក", ["ក", "កា", "កិ", "កី", "កុ"]),
    "lao": ("ກ", ["ກ", "ກາ", "ກິ", "ກີ", "ກຸ"]),
    "myanmar": ("က", ["က", "ကာ", "ကိ", "ကီ", "ကု"]),
    "thai": ("ก", ["ก", "กา", "กิ", "กี", "กู"]),
}


TABLE_CELLS = [
    (script, base, cell[1:] or None, cell) for script, (base, row) in KA_SYLLABLES.items() for cell in row
]


@pytest.mark.parametrize("script,base,sign,expected", TABLE_CELLS)
def test_compose_reproduces_ka_syllables(script, base, sign, expected):
    got = compose_syllable(base, sign, script)
    assert got == unicodedata.normalize("NFC", expected)
    assert got.encode("utf-8") == expected.encode("utf-8")


def test_script_aliases():
    codes = {"bg": "bengali", "bn": "bengali", "hi": "hindi", "kh": "khmer", "km": "khmer",
             "lo": "lao", "my": "myanmar", "th": "thai"}
    for code, name in codes.items():
        assert ScriptId.parse(code) is ScriptId(name)
    assert len(ScriptId) == 6
    with pytest.raises(ValueError):
        ScriptId.parse("latin")


def test_profile_examples():
    assert (0x0980, 0x09FF) in profile("bengali").blocks
    assert 0x1000 in profile("myanmar").consonants
    assert 0x0E32 in profile("thai").dependent_vowels


def test_classify_examples():
    assert classify_char("ক", "bengali") is CharClass.CONSONANT
    assert classify_char("A", "bengali") is CharClass.OTHER
    assert classify_char("ি", "bengali") is CharClass.DEPENDENT_VOWEL_SIGN
    assert classify_char("অ", "bengali") is CharClass.INDEPENDENT_VOWEL
    assert classify_char("১", "bengali") is CharClass.DIGIT
    assert classify_char("্", "bengali") is CharClass.DIACRITIC


def test_design_classes():
    # tone marks, medials and killers are diacritics
    assert classify_char("่", "thai") is CharClass.DIACRITIC
    assert classify_char("່", "lao") is CharClass.DIACRITIC
    assert classify_char("ျ", "myanmar") is CharClass.DIACRITIC
    assert classify_char("်", "myanmar") is CharClass.DIACRITIC
    assert classify_char("្", "khmer") is CharClass.DIACRITIC
    # preposed Thai vowel
    assert classify_char("เ", "thai") is CharClass.DEPENDENT_VOWEL_SIGN


@pytest.mark.parametrize("script", list(ScriptId))
def test_sets_disjoint_inside_blocks_and_round_trip(script):
    prof = profile(script)
    sets = {cls: prof.members(cls) for cls in CharClass if cls is not CharClass.OTHER}
    seen = set()
    for cls, members in sets.items():
        assert not (members & seen)
        seen |= members
        for cp in members:
            assert prof.in_blocks(cp)
            assert classify_char(cp, script) is cls
    assert sets[CharClass.CONSONANT]


@pytest.mark.parametrize("script", list(ScriptId))
def test_outside_blocks_is_other(script):
    prof = profile(script)
    for cp in list(range(0x0000, 0x0900, 7)) + list(range(0x1800, 0x2000, 5)):
        if not prof.in_blocks(cp):
            assert classify_char(cp, script) is CharClass.OTHER


def test_profile_is_stable():
    assert profile("thai") is profile(ScriptId.THAI)
    results = []

    def work():
        results.append([classify_char(chr(cp), "khmer") for cp in range(0x1780, 0x1800)])

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


def test_compose_rejects_wrong_classes():
    with pytest.raises(ClassMismatchError):
        compose_syllable("া", None, "bengali")
    with pytest.raises(ClassMismatchError):
        compose_syllable("ক", "ক", "bengali")
    with pytest.raises(ClassMismatchError):
        compose_syllable("ก", "া", "thai")


def test_preposed_vowel_composes_before_base():
    assert compose_syllable("ก", "เ", "thai") == "เก"
