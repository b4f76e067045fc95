from decimal import Decimal
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from abugida.corruption import RandomSource, mask_syllables
from abugida.stats import CorpusStats, MaskingStats, corpus_stats, masking_stats, percent, sentence_stats
from abugida.syllabifier import SegmentedSentence, segment


def test_sentence_stats():
    st_ = sentence_stats(segment("কাকি", "bengali"))
    assert st_ == CorpusStats(1, 2, 2, 2)
    assert st_.avg_syllables_per_sentence == 2


def test_corpus_stats():
    corpus = [segment(t, "bengali") for t in ("কাকি", "ক্ষি", "")]
    total = corpus_stats(corpus)
    assert total == CorpusStats(3, 3, 4, 3)
    assert total.avg_syllables_per_sentence == Fraction(1)
    assert corpus_stats([]).avg_syllables_per_sentence == 0
    assert total.as_dict()["avg_syllables_per_sentence"] == "1.00"


def test_percent_rounds_half_up():
    assert percent(1, 200) == Decimal("0.50")
    assert percent(1, 8) == Decimal("12.50")
    assert percent(1, 800) == Decimal("0.13")  # 0.125 rounds up
    assert percent(0, 0) == Decimal("0.00")


def test_masking_stats_example():
    corpus = [SegmentedSentence("bengali", ["কা"] * n) for n in (2, 5, 9, 4)]
    ms = masking_stats(corpus, 3, seed=4)
    assert ms == MaskingStats(3, 2, 2, 6)
    assert ms.skipped_pct == Decimal("50.00")
    assert ms.as_dict()["skipped_pct"] == "50.00"


@given(lengths=st.lists(st.integers(0, 40), max_size=30), k=st.sampled_from([3, 5, 8, 10]),
       seed=st.integers(0, 10**6))
def test_masking_identity(lengths, k, seed):
    corpus = [SegmentedSentence("thai", ["ก"] * n) for n in lengths]
    ms = masking_stats(corpus, k, seed)
    assert ms.total_syllables_masked == k * ms.masked_sentences
    assert ms.masked_sentences + ms.skipped_sentences == len(corpus)
    assert ms.skipped_sentences == sum(n < 2 * k - 1 for n in lengths)
    # Same substreams as the per-line corruption path.
    if corpus:
        again = mask_syllables(corpus[0], k, RandomSource.for_line(seed, 0))
        assert masking_stats(corpus[:1], k, seed).masked_sentences == int(hasattr(again, "positions"))
