"""End-to-end data pipeline: clean -> segment -> corrupt -> split -> vocab [-> train -> decode -> score].

Every stage writes UTF-8, newline-delimited files into one output
directory and a ``manifest.json`` is written last. Non-model outputs are a
pure function of the input bytes and the configured seeds.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Sequence

from . import __version__
from .cleaner import clean
from .corruption import CorruptionSpec, corrupt
from .profiles import ScriptId
from .reconstructor.config import ModelConfig, parse_flat
from .stats import corpus_stats, percent
from .syllabifier import segment, to_syllable_line
from .vocab import Vocab

log = logging.getLogger(__name__)

DEFAULT_TRAIN, DEFAULT_DEV, DEFAULT_TEST = 18104, 1000, 1000


class InsufficientLinesError(ValueError):
    pass


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class SplitSpec:
    train_n: int = DEFAULT_TRAIN
    dev_n: int = DEFAULT_DEV
    test_n: int = DEFAULT_TEST
    policy: str = "contiguous-in-order"

    @property
    def total(self) -> int:
        return self.train_n + self.dev_n + self.test_n


def split(lines: Sequence, spec: SplitSpec = SplitSpec()) -> tuple[list, list, list]:
    """First ``train_n`` items, then ``dev_n``, then ``test_n``; extra lines are ignored."""
    if len(lines) < spec.total:
        raise InsufficientLinesError(f"need {spec.total} lines for the split, have {len(lines)}")
    a, b = spec.train_n, spec.train_n + spec.dev_n
    return list(lines[:a]), list(lines[a:b]), list(lines[b : spec.total])


def read_lines(path: "str | Path") -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\n") for line in f]


def write_lines(path: "str | Path", lines: Sequence[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in lines:
            f.write(line + "\n")


def split_file(path: "str | Path", spec: SplitSpec, out_prefix: "str | Path") -> list[Path]:
    parts = split(read_lines(path), spec)
    outs = []
    for name, part in zip(("train", "dev", "test"), parts):
        out = Path(f"{out_prefix}.{name}")
        write_lines(out, part)
        outs.append(out)
    return outs


def sha256(path: "str | Path") -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class PipelineConfig:
    script: str
    input: str
    out_dir: str
    corruption: str = "consonant"
    seed: int = 0
    train_n: int = DEFAULT_TRAIN
    dev_n: int = DEFAULT_DEV
    test_n: int = DEFAULT_TEST
    min_freq: int = 1
    train: bool = False
    model_config: str = ""

    @classmethod
    def load(cls, path: "str | Path") -> "PipelineConfig":
        """Read a flat ``key = value`` file; relative paths resolve against its directory."""
        path = Path(path)
        values = parse_flat(path.read_text(encoding="utf-8"), cls)
        cfg = cls(**values)
        base = path.resolve().parent
        for key in ("input", "out_dir", "model_config"):
            value = getattr(cfg, key)
            if value and not Path(value).is_absolute():
                setattr(cfg, key, str(base / value))
        return cfg

    def split_spec(self) -> SplitSpec:
        return SplitSpec(self.train_n, self.dev_n, self.test_n)


def _stage(name: str):
    def wrap(fn):
        def run(*args, **kwargs):
            log.info("stage %s", name)
            try:
                return fn(*args, **kwargs)
            except StageError:
                raise
            except Exception as e:  # noqa: BLE001 - reported with the stage name
                raise StageError(name, e) from e

        return run

    return wrap


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Run all configured stages and return the manifest (also written to ``manifest.json``)."""
    script = ScriptId.parse(cfg.script)
    spec = CorruptionSpec.parse(cfg.corruption, cfg.seed)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs: dict[str, str] = {}

    @_stage("clean")
    def do_clean():
        cleaned = [clean(line, script) for line in read_lines(cfg.input)]
        write_lines(out / "clean.txt", cleaned)
        outputs["clean"] = "clean.txt"
        return cleaned

    @_stage("segment")
    def do_segment(cleaned):
        sentences = [segment(line, script) for line in cleaned]
        write_lines(out / "syllables.txt", [to_syllable_line(s) for s in sentences])
        outputs["segment"] = "syllables.txt"
        return sentences

    @_stage("corrupt")
    def do_corrupt(sentences):
        # Per-line random substreams make the result independent of stage order.
        return [corrupt(s, spec, i) for i, s in enumerate(sentences)]

    @_stage("split")
    def do_split(sentences, corrupted):
        parts = split(list(range(len(sentences))), cfg.split_spec())
        result = {}
        skipped = []
        for name, idx in zip(("train", "dev", "test"), parts):
            kept = [i for i in idx if corrupted[i] is not None]
            skipped.extend(i for i in idx if corrupted[i] is None)
            src = [" ".join(corrupted[i]) for i in kept]
            tgt = [to_syllable_line(sentences[i]) for i in kept]
            write_lines(out / f"{name}.src", src)
            write_lines(out / f"{name}.tgt", tgt)
            outputs[f"{name}.src"] = f"{name}.src"
            outputs[f"{name}.tgt"] = f"{name}.tgt"
            result[name] = (src, tgt)
        write_lines(out / "skipped.txt", [str(i) for i in skipped])
        outputs["skipped"] = "skipped.txt"
        return result, skipped

    @_stage("vocab")
    def do_vocab(parts):
        src_vocab = Vocab.build(parts["train"][0], cfg.min_freq)
        tgt_vocab = Vocab.build(parts["train"][1], cfg.min_freq)
        src_vocab.save(out / "vocab.src")
        tgt_vocab.save(out / "vocab.tgt")
        outputs["vocab.src"] = "vocab.src"
        outputs["vocab.tgt"] = "vocab.tgt"
        return src_vocab, tgt_vocab

    cleaned = do_clean()
    sentences = do_segment(cleaned)
    corrupted = do_corrupt(sentences)
    parts, skipped = do_split(sentences, corrupted)
    src_vocab, tgt_vocab = do_vocab(parts)

    used = sentences[: cfg.split_spec().total]
    manifest = {
        "tool": "abugida",
        "version": __version__,
        "script": script.value,
        "corruption": {"kind": spec.kind.value, "amount": spec.amount, "name": spec.name},
        "seeds": {"corruption": cfg.seed},
        "inputs": {"corpus": {"file": Path(cfg.input).name, "sha256": sha256(cfg.input)}},
        "split": {**asdict(cfg.split_spec())},
        "stats": {
            "corpus": corpus_stats(used).as_dict(),
            "residue_syllables": sum(s.residues for s in used),
            "skipped_sentences": len(skipped),
            "skipped_pct": str(percent(len(skipped), len(used))),
            "lines": {name: len(parts[name][0]) for name in ("train", "dev", "test")},
            "src_vocab_size": len(src_vocab),
            "tgt_vocab_size": len(tgt_vocab),
        },
        "outputs": outputs,
    }

    if cfg.train:
        manifest.update(_train_stages(cfg, out, parts, src_vocab, tgt_vocab, outputs))

    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    return manifest


def _train_stages(cfg: PipelineConfig, out: Path, parts, src_vocab: Vocab, tgt_vocab: Vocab,
                  outputs: dict) -> dict:
    from .bleu import UndefinedPrecisionError, corpus_bleu
    from .reconstructor.workdir import decode_lines, train_model_dir

    model_cfg = ModelConfig.load(cfg.model_config) if cfg.model_config else ModelConfig()

    @_stage("train")
    def do_train():
        (train_src, train_tgt), (dev_src, dev_tgt) = parts["train"], parts["dev"]
        model, *_ , tlog = train_model_dir(out / "model", model_cfg, train_src, train_tgt, dev_src, dev_tgt,
                                           src_vocab, tgt_vocab)
        outputs["model"] = "model"
        return model, tlog

    @_stage("decode")
    def do_decode(model):
        hyps = decode_lines(model, src_vocab, tgt_vocab, parts["test"][0])
        write_lines(out / "test.hyp", hyps)
        outputs["test.hyp"] = "test.hyp"
        return hyps

    @_stage("score")
    def do_score(hyps):
        try:
            return round(corpus_bleu(hyps, parts["test"][1]).bleu, 2)
        except UndefinedPrecisionError as e:
            log.warning("scoring as 0: %s", e)
            return 0.0

    model, tlog = do_train()
    hyps = do_decode(model)
    bleu = do_score(hyps)
    return {
        "model": {f.name: getattr(model_cfg, f.name) for f in fields(model_cfg)},
        "results": {
            "test_bleu": bleu,
            "steps": tlog.steps,
            "best_step": tlog.best_step,
            "stop_reason": tlog.stop_reason,
        },
    }
