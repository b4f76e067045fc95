import pytest
import torch

from abugida.reconstructor import (
    CorruptCheckpointError,
    VersionMismatchError,
    beam_decode,
    init_model,
    load_checkpoint,
    save_checkpoint,
)
from abugida.reconstructor.checkpoint import MAGIC
from abugida.vocab import EOS

from conftest import micro_config


@pytest.fixture
def saved(tmp_path):
    model = init_model(micro_config(tied_output=False, label_smoothing=0.2), 12, 10, seed=4)
    path = tmp_path / "model.bin"
    save_checkpoint(model, path)
    return model, path


def test_round_trip(saved):
    model, path = saved
    loaded = load_checkpoint(path, 12, 10)
    assert loaded.cfg == model.cfg
    for (n, p), (m, q) in zip(model.named_parameters(), loaded.named_parameters()):
        assert n == m and torch.equal(p, q)
    model.eval()
    assert beam_decode(loaded, [5, 6, EOS], beam=3) == beam_decode(model, [5, 6, EOS], beam=3)


def test_save_is_byte_stable(saved, tmp_path):
    _, path = saved
    save_checkpoint(load_checkpoint(path), tmp_path / "again.bin")
    assert (tmp_path / "again.bin").read_bytes() == path.read_bytes()
    assert path.read_bytes().startswith(MAGIC)


def test_truncated_file(saved):
    _, path = saved
    path.write_bytes(path.read_bytes()[:-50])
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_flipped_byte(saved):
    _, path = saved
    buf = bytearray(path.read_bytes())
    buf[len(buf) // 2] ^= 0xFF
    path.write_bytes(bytes(buf))
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_not_a_checkpoint(tmp_path):
    path = tmp_path / "x.bin"
    path.write_bytes(b"hello world, not a model")
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_vocab_size_mismatch(saved):
    _, path = saved
    with pytest.raises(VersionMismatchError):
        load_checkpoint(path, 12, 11)
    with pytest.raises(VersionMismatchError):
        load_checkpoint(path, 13, 10)
