import pytest
import torch

from abugida.reconstructor import init_model, learning_rate, train
from abugida.reconstructor.train import ParameterAverage, make_batches
from abugida.synthetic import copy_corpus
from abugida.vocab import Vocab

from conftest import micro_config


def test_learning_rate_schedule():
    assert learning_rate(8000, 0.0003, 16000) == pytest.approx(0.0003)
    assert learning_rate(16000, 0.0003, 16000) == pytest.approx(0.0003)
    assert learning_rate(64000, 0.0003, 16000) == pytest.approx(0.00015)
    assert learning_rate(0, 0.0003, 16000) == 0.0003


def copy_pairs(n, seed):
    lines = copy_corpus(n, seed)
    vocab = Vocab.build(lines)
    return [(vocab.encode(s), vocab.encode(s)) for s in lines], vocab


def quick_config(**changes):
    base = dict(model_dim=16, ff_dim=32, base_lr=3e-3, batch_tokens=64, valid_every=0, max_epochs=3,
                valid_bleu=False)
    return micro_config(**{**base, **changes})


def run(seed=1111):
    pairs, vocab = copy_pairs(80, 0)
    cfg = quick_config(seed=seed)
    model = init_model(cfg, len(vocab), len(vocab))
    return train(model, pairs[:60], pairs[60:], vocab, cfg)


def test_training_is_deterministic():
    (m1, log1), (m2, log2) = run(), run()
    assert [v.cross_entropy for v in log1.validations] == [v.cross_entropy for v in log2.validations]
    for p, q in zip(m1.parameters(), m2.parameters()):
        assert torch.equal(p, q)


def test_best_not_worse_than_initial():
    _, tlog = run()
    assert tlog.steps > 0 and tlog.epochs == 3
    assert len(tlog.validations) == 4
    assert tlog.best.cross_entropy <= tlog.initial.cross_entropy
    assert tlog.best.cross_entropy < tlog.initial.cross_entropy
    assert tlog.stop_reason == "max-epochs"


def test_early_stopping():
    pairs, vocab = copy_pairs(40, 1)
    cfg = quick_config(base_lr=0.0, max_epochs=10, early_stop_patience=2, exp_smoothing=False)
    _, tlog = train(init_model(cfg, len(vocab), len(vocab)), pairs[:30], pairs[30:], vocab, cfg)
    assert tlog.stop_reason == "early-stopping"
    assert tlog.epochs == 2


def test_batches_cover_every_pair_once():
    import numpy as np

    pairs, _ = copy_pairs(100, 2)
    batches = make_batches(pairs, quick_config(), np.random.default_rng(0))
    flat = sorted(i for b in batches for i in b)
    assert flat == list(range(100))


def test_parameter_average_warmup():
    model = init_model(micro_config(), 12, 12, seed=1)
    avg = ParameterAverage(model, 0.9999)
    before = [p.clone() for p in model.parameters()]
    with torch.no_grad():
        for p in model.parameters():
            p.add_(1.0)
    avg.update(model)
    avg.swap(model)
    # First update uses decay min(0.9999, 2/11).
    for p, b in zip(model.parameters(), before):
        assert torch.allclose(p, b + 9 / 11, atol=1e-6)


def test_empty_dev_rejected():
    pairs, vocab = copy_pairs(10, 3)
    cfg = quick_config()
    with pytest.raises(ValueError):
        train(init_model(cfg, len(vocab), len(vocab)), pairs, [], vocab, cfg)
