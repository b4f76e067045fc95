from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from abugida.corruption import (
    MASK_TOKEN,
    CorruptionKind,
    CorruptionSpec,
    Masked,
    RandomSource,
    ScriptedSource,
    Skipped,
    can_mask,
    corrupt,
    delete_random_chars,
    extract_consonants,
    extract_vowels,
    mask_syllables,
)
from abugida.profiles import ScriptId
from abugida.syllabifier import SegmentedSentence, segment


def sent(*syllables, script=ScriptId.BENGALI):
    return SegmentedSentence(script, list(syllables))


def non_adjacent_subsets(n, k):
    """Enumeration oracle."""
    return [c for c in combinations(range(n), k) if all(b - a >= 2 for a, b in zip(c, c[1:]))]


def test_enumeration_oracle_counts():
    assert non_adjacent_subsets(5, 3) == [(0, 2, 4)]
    assert non_adjacent_subsets(4, 3) == []
    assert len(non_adjacent_subsets(7, 3)) == 10


def test_extract_consonants():
    assert extract_consonants(sent("কা", "কি")) == ["ক", "ক"]
    assert extract_consonants(sent()) == []
    assert extract_consonants(sent("ি")) == []
    assert extract_consonants(sent("ক্ষি")) == ["কষ"]


def test_extract_vowels():
    assert extract_vowels(sent("কা", "কি")) == ["া", "ি"]
    assert extract_vowels(sent("ক")) == []
    assert extract_vowels(sent()) == []


def test_plain_list_needs_script():
    assert extract_vowels(["কা"], script="bengali") == ["া"]
    with pytest.raises(TypeError):
        extract_vowels(["কা"])


def test_delete_examples():
    assert delete_random_chars(sent("কা"), 1, ScriptedSource([1])) == ["ক"]
    assert delete_random_chars(sent("ক"), 2, RandomSource(5)) == ["ক"]
    assert delete_random_chars(sent("កាត", script=ScriptId.KHMER), 2, ScriptedSource([{0, 2}])) == ["ា"]


def test_can_mask_examples():
    assert can_mask(5, 3)
    assert not can_mask(4, 3)
    assert can_mask(1, 1)
    for n in range(0, 25):
        for k in (1, 2, 3, 5, 8, 10):
            assert can_mask(n, k) == bool(non_adjacent_subsets(n, k))


def test_mask_examples():
    out = mask_syllables(list("abcde"), 3, RandomSource(1))
    assert isinstance(out, Masked) and out.positions == [0, 2, 4]
    assert out.tokens == [MASK_TOKEN, "b", MASK_TOKEN, "d", MASK_TOKEN]
    assert isinstance(mask_syllables(list("abcd"), 3, RandomSource(1)), Skipped)
    valid = set(non_adjacent_subsets(7, 3))
    for seed in range(50):
        assert tuple(mask_syllables(list("abcdefg"), 3, RandomSource(seed)).positions) in valid


@given(n=st.integers(1, 60), k=st.sampled_from([3, 5, 8, 10]), seed=st.integers(0, 2**63))
def test_mask_properties(n, k, seed):
    tokens = [f"s{i}" for i in range(n)]
    out = mask_syllables(tokens, k, RandomSource(seed))
    if n < 2 * k - 1:
        assert isinstance(out, Skipped)
        return
    assert isinstance(out, Masked)
    assert len(out.positions) == k and len(out.tokens) == n
    assert all(b - a >= 2 for a, b in zip(out.positions, out.positions[1:]))
    for i, tok in enumerate(out.tokens):
        assert tok == (MASK_TOKEN if i in out.positions else tokens[i])


@given(words=st.lists(st.text(alphabet="কখগািীুে্", min_size=1, max_size=5), max_size=20),
       n=st.sampled_from([1, 2]), seed=st.integers(0, 2**32))
def test_delete_conservation(words, n, seed):
    out = delete_random_chars(words, n, RandomSource(seed))
    assert len(out) == len(words)
    for before, after in zip(words, out):
        assert len(after) == max(1, len(before) - n)
        it = iter(before)
        assert all(ch in it for ch in after)  # subsequence


def test_random_source_is_reproducible():
    a = RandomSource.for_line(42, 7)
    b = RandomSource.for_line(42, 7)
    assert [a.next_index(100) for _ in range(20)] == [b.next_index(100) for _ in range(20)]
    c = RandomSource.for_line(42, 8)
    assert [RandomSource.for_line(42, 7).next_index(10**9) for _ in range(1)] != [c.next_index(10**9)]


def test_uniformity_chi_square():
    from scipy.stats import chisquare

    valid = non_adjacent_subsets(7, 3)
    counts = Counter(tuple(RandomSource(99, i).next_subset(7, 3, non_adjacent=True)) for i in range(20000))
    assert set(counts) <= set(valid)
    observed = [counts[s] for s in valid]
    assert chisquare(observed).pvalue > 0.01


def test_scripted_source_validates():
    with pytest.raises(ValueError):
        ScriptedSource([[0, 1]]).next_subset(5, 2, non_adjacent=True)
    with pytest.raises(RuntimeError):
        ScriptedSource([]).next_index(3)


def test_spec_parsing():
    assert CorruptionSpec.parse("mask10", 3) == CorruptionSpec(CorruptionKind.MASK, 10, 3)
    assert CorruptionSpec.parse("delete2").amount == 2
    assert CorruptionSpec.parse("vowel").kind is CorruptionKind.VOWEL
    for bad in ("mask4", "delete3", "consonant1", "swap"):
        with pytest.raises(ValueError):
            CorruptionSpec.parse(bad)


def test_corrupt_dispatch():
    s = segment("কাকিকুকেকো", "bengali")
    assert corrupt(s, CorruptionSpec.parse("consonant")) == ["ক"] * 5
    assert corrupt(s, CorruptionSpec.parse("mask3", 1), 0).count(MASK_TOKEN) == 3
    assert corrupt(segment("কাকি", "bengali"), CorruptionSpec.parse("mask3", 1)) is None
    a = corrupt(s, CorruptionSpec.parse("delete1", 5), 3)
    assert a == corrupt(s, CorruptionSpec.parse("delete1", 5), 3)
