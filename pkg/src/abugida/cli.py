"""Command-line entry point: ``abugida <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .cleaner import clean
from .corruption import CorruptionSpec, corrupt
from .pipeline import PipelineConfig, SplitSpec, StageError, read_lines, run_pipeline, split_file, write_lines
from .stats import corpus_stats, masking_stats
from .syllabifier import segment, to_syllable_line
from .vocab import build_vocab

KINDS = ("consonant", "vowel", "delete1", "delete2", "mask3", "mask5", "mask8", "mask10")


def cmd_clean(args) -> None:
    stage = args.stage if args.stage == "all" else int(args.stage)
    write_lines(args.out, [clean(line, args.script, stage) for line in read_lines(args.inp)])


def cmd_segment(args) -> None:
    write_lines(args.out, [to_syllable_line(segment(line, args.script)) for line in read_lines(args.inp)])


def cmd_corrupt(args) -> None:
    spec = CorruptionSpec.parse(args.kind, args.seed)
    src, tgt, skipped = [], [], []
    for i, line in enumerate(read_lines(args.inp)):
        sentence = segment(line, args.script)
        out = corrupt(sentence, spec, i)
        if out is None:
            skipped.append(line)
            continue
        src.append(" ".join(out))
        tgt.append(to_syllable_line(sentence))
    write_lines(args.out_src, src)
    if args.out_tgt:
        write_lines(args.out_tgt, tgt)
    if args.skipped:
        write_lines(args.skipped, skipped)


def cmd_split(args) -> None:
    spec = SplitSpec(args.train_n, args.dev_n, args.test_n)
    for path in split_file(args.inp, spec, args.out_prefix):
        print(path)


def cmd_stats(args) -> None:
    corpus = [segment(line, args.script) for line in read_lines(args.inp)]
    report = corpus_stats(corpus).as_dict()
    if args.mask is not None:
        report.update(masking_stats(corpus, args.mask, args.seed).as_dict())
    for key, value in report.items():
        print(f"{key}\t{value}")


def cmd_vocab(args) -> None:
    build_vocab(args.inp, args.min_freq).save(args.out)


def cmd_train(args) -> None:
    from .reconstructor.config import ModelConfig
    from .reconstructor.workdir import train_model_dir

    cfg = ModelConfig.load(args.config) if args.config else ModelConfig()
    if args.seed is not None:
        cfg = cfg.replace(seed=args.seed)
    _, _, _, tlog = train_model_dir(
        args.out, cfg, read_lines(args.src), read_lines(args.tgt), read_lines(args.dev_src), read_lines(args.dev_tgt)
    )
    best = tlog.best
    print(f"steps\t{tlog.steps}\nbest_step\t{tlog.best_step}\ndev_cross_entropy\t{best.cross_entropy:.4f}")
    print(f"dev_perplexity\t{best.perplexity:.4f}\nstop_reason\t{tlog.stop_reason}")


def cmd_decode(args) -> None:
    from .reconstructor.workdir import decode_lines, load_model_dir

    model, src_vocab, tgt_vocab = load_model_dir(args.model)
    write_lines(args.out, decode_lines(model, src_vocab, tgt_vocab, read_lines(args.inp), args.beam, args.alpha))


def cmd_score(args) -> None:
    from .bleu import corpus_bleu

    print(corpus_bleu(read_lines(args.hyp), read_lines(args.ref)))


def cmd_pipeline(args) -> None:
    cfg = PipelineConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out_dir:
        cfg.out_dir = args.out_dir
    manifest = run_pipeline(cfg)
    print(Path(cfg.out_dir) / "manifest.json")
    if "results" in manifest:
        print(f"test_bleu\t{manifest['results']['test_bleu']}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abugida", description="Syllable reconstruction toolkit for abugida scripts.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("clean", cmd_clean, "remove out-of-script characters")
    p.add_argument("--script", required=True)
    p.add_argument("--stage", choices=("1", "2", "all"), default="all")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = add("segment", cmd_segment, "split lines into syllables")
    p.add_argument("--script", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = add("corrupt", cmd_corrupt, "derive incomplete inputs from syllable lines")
    p.add_argument("--script", required=True)
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out-src", required=True)
    p.add_argument("--out-tgt", help="also write the aligned full syllable lines")
    p.add_argument("--skipped", help="file receiving lines too short to mask")

    p = add("split", cmd_split, "contiguous train/dev/test split")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--train-n", type=int, default=SplitSpec.train_n)
    p.add_argument("--dev-n", type=int, default=SplitSpec.dev_n)
    p.add_argument("--test-n", type=int, default=SplitSpec.test_n)

    p = add("stats", cmd_stats, "corpus and masking statistics")
    p.add_argument("--script", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--mask", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = add("vocab", cmd_vocab, "build a vocabulary file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-freq", type=int, default=1)

    p = add("train", cmd_train, "train a reconstruction model")
    p.add_argument("--src", required=True)
    p.add_argument("--tgt", required=True)
    p.add_argument("--dev-src", required=True)
    p.add_argument("--dev-tgt", required=True)
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)

    p = add("decode", cmd_decode, "reconstruct lines with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--beam", type=int)
    p.add_argument("--alpha", type=float)

    p = add("score", cmd_score, "corpus BLEU")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)

    p = add("pipeline", cmd_pipeline, "run the full pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        args.fn(args)
    except StageError as e:
        print(f"abugida: {e}", file=sys.stderr)
        return 1
    except (OSError, ValueError, RuntimeError) as e:
        print(f"abugida: stage '{args.command}' failed: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
