import math
import random
from fractions import Fraction

import pytest

from abugida.bleu import UndefinedPrecisionError, brevity_penalty, corpus_bleu, modified_precision


def brute_bleu(cands, refs):
    """Independent oracle: explicit n-gram lists and linear scans."""
    num = [0] * 4
    den = [0] * 4
    c_len = r_len = 0
    for cand, ref in zip(cands, refs):
        c, r = cand.split(), ref.split()
        c_len += len(c)
        r_len += len(r)
        for n in range(1, 5):
            cgrams = [c[i : i + n] for i in range(len(c) - n + 1)]
            rgrams = [r[i : i + n] for i in range(len(r) - n + 1)]
            seen = []
            for g in cgrams:
                if g in seen:
                    continue
                seen.append(g)
                num[n - 1] += min(cgrams.count(g), rgrams.count(g))
            den[n - 1] += len(cgrams)
    if min(num) == 0:
        return 0.0
    bp = 1.0 if c_len > r_len else math.exp(1 - r_len / c_len)
    return 100 * bp * math.exp(sum(math.log(num[i] / den[i]) for i in range(4)) / 4)


def random_corpus(rnd):
    vocab = "abcde"[: rnd.randint(2, 5)]
    lines = rnd.randint(1, 5)
    refs = [" ".join(rnd.choice(vocab) for _ in range(rnd.randint(4, 12))) for _ in range(lines)]
    cands = [" ".join(rnd.choice(vocab) for _ in range(rnd.randint(4, 12))) for _ in range(lines)]
    return cands, refs


def test_identical_corpus():
    lines = ["a b c d e", "x y z w"]
    assert corpus_bleu(lines, lines).bleu == pytest.approx(100.0)


def test_brevity_case():
    rep = corpus_bleu(["a b c d"], ["a b c d e"])
    assert rep.brevity_penalty == pytest.approx(math.exp(-0.25))
    assert rep.bleu == pytest.approx(77.880, abs=1e-3)


def test_clipped_precision():
    assert modified_precision(["the the the the the the the"], ["the cat is on the mat"], 1) == Fraction(2, 7)


def test_zero_four_gram_gives_zero():
    assert corpus_bleu(["a b c d"], ["a b c e"]).bleu == 0.0


def test_undefined_and_errors():
    with pytest.raises(UndefinedPrecisionError):
        modified_precision(["a b"], ["a b"], 3)
    with pytest.raises(ValueError):
        corpus_bleu(["a"], [])
    with pytest.raises(ValueError):
        brevity_penalty(0, 3)
    assert brevity_penalty(6, 5) == 1.0


def test_report_format():
    text = str(corpus_bleu(["a b c d"], ["a b c d e"]))
    assert text == "BLEU = 77.88, p1/p2/p3/p4 = 100.0/100.0/100.0/100.0, BP = 0.779, ratio = 4/5"


def test_matches_brute_force():
    rnd = random.Random(2024)
    for _ in range(1000):
        cands, refs = random_corpus(rnd)
        assert corpus_bleu(cands, refs).bleu == pytest.approx(brute_bleu(cands, refs), abs=1e-9)


def test_accepts_token_lists():
    assert corpus_bleu([["a", "b", "c", "d"]], ["a b c d"]).bleu == pytest.approx(100.0)
