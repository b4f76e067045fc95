import pytest
import torch

from abugida.reconstructor import ModelConfig, init_model


def micro_config(**changes) -> ModelConfig:
    base = dict(enc_depth=2, dec_depth=2, heads=2, model_dim=8, ff_dim=32, dropout=0.0, max_length=40)
    base.update(changes)
    return ModelConfig(**base)


@pytest.fixture(autouse=True)
def _single_thread():
    torch.set_num_threads(1)


@pytest.fixture
def micro_model():
    return init_model(micro_config(), 12, 12, seed=3)


def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.getreports(outcome):
            if rep.when == "call" and "test_acceptance" in rep.nodeid:
                props = dict(rep.user_properties)
                rows.append((props.get("criterion", 0), outcome, props.get("detail", rep.nodeid)))
    if rows:
        terminalreporter.section("acceptance criteria")
        for number, outcome, detail in sorted(rows):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'} criterion {number:>2}: {detail}")
