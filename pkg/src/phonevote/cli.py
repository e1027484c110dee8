"""Command-line entry point: ``phonevote <subcommand> ...``.

Exit status is 0 on success, 1 on bad input data, 2 on usage errors
(unknown flags, missing input files).
"""

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from phonevote import codeswitch, ctm, evaluation, lexicon, ngram, vote
from phonevote.corpus import build_corpus
from phonevote.phones import check_tag
from phonevote.simulator import SimSpec, format_switch_gold, simulate, simulate_codeswitch

EXIT_DATA = 1
EXIT_USAGE = 2

log = logging.getLogger("phonevote")


class UsageError(Exception):
    pass


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def write_text(path, text: str):
    """Write ``text`` to ``path`` atomically, or to stdout when path is None or '-'."""
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def languages_arg(text: str) -> list:
    langs = [t.strip() for t in text.split(",") if t.strip()]
    if not langs:
        raise argparse.ArgumentTypeError("expected a comma-separated list of language tags")
    try:
        return [check_tag(t) for t in langs]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def load_ctm(path, phones_path=None) -> list:
    records = ctm.parse_ctm(read_text(path))
    if phones_path:
        records = ctm.map_phone_ids(records, ctm.parse_phone_table(read_text(phones_path)))
    return records


def load_spec(path, seed=None) -> SimSpec:
    data = json.loads(read_text(path))
    if seed is not None:
        data["seed"] = seed
    return SimSpec.from_dict(data)


def cmd_lexicon(args):
    parts = []
    for tag, lex_path, corpus_path in args.part:
        check_tag(tag)
        lex = lexicon.load_lexicon(read_text(lex_path), tag)
        lex = lexicon.filter_top_k(lex, read_text(corpus_path).splitlines(), args.top_k)
        log.info("%s: %d entries after top-%d filter", tag, len(lex), args.top_k)
        parts.append(lex)
    write_text(args.output, lexicon.write_lexicon(lexicon.merge_lexicons(parts)))


def cmd_lm(args):
    parts = [(check_tag(tag), read_text(path).splitlines()) for tag, path in args.corpus]
    corpus = build_corpus(parts, seed=args.seed)
    if args.corpus_out:
        write_text(args.corpus_out, corpus.text())
    model = ngram.train_ngram(corpus, args.order)
    log.info("trained order-%d model, counts %s", args.order, model.counts())
    write_text(args.output, ngram.write_arpa(model))


def run_identify(records, languages):
    predictions, failures = vote.identify(records, languages)
    for utt, msg in failures.items():
        log.error("%s: %s", utt, msg)
    return predictions


def cmd_identify(args):
    predictions = run_identify(load_ctm(args.ctm, args.phones), args.languages)
    if args.json:
        text = json.dumps(
            {
                utt: {"language": p.language, "margin": p.margin, "tally": dict(sorted(p.tally.items()))}
                for utt, p in predictions.items()
            },
            indent=2,
        ) + "\n"
    else:
        text = vote.format_predictions(predictions.values())
    write_text(args.output, text)


def cmd_codeswitch(args):
    groups = ctm.group_by_utterance(load_ctm(args.ctm, args.phones))
    results = {}
    for utt, recs in groups.items():
        try:
            results[utt] = codeswitch.segment(recs, args.threshold)
        except codeswitch.NoSpeechError as exc:
            log.error("%s: %s", utt, exc)
    if args.json:
        text = json.dumps({utt: json.loads(codeswitch.segments_json(s)) for utt, s in results.items()}, indent=2) + "\n"
    else:
        text = "".join(f"utterance\t{utt}\n" + codeswitch.segment_report(s) for utt, s in results.items())
    write_text(args.output, text)


def cmd_score(args):
    predictions = vote.parse_predictions(read_text(args.predictions))
    gold = evaluation.parse_gold(read_text(args.gold))
    report = evaluation.score(predictions, gold)
    text = evaluation.report_json(report) if args.json else evaluation.report_text(report)
    write_text(args.output, text)


def write_simulation(out_dir: Path, output):
    write_text(out_dir / "sim.ctm", ctm.format_ctm(output.ctm))
    write_text(out_dir / "gold.txt", evaluation.format_gold(output.gold))
    if output.switch_gold is not None:
        write_text(out_dir / "switches.txt", format_switch_gold(output.switch_gold))


def cmd_simulate(args):
    spec = load_spec(args.spec, args.seed)
    if args.codeswitch:
        output = simulate_codeswitch(spec, args.codeswitch)
    else:
        output = simulate(spec)
    write_simulation(Path(args.out_dir), output)


def cmd_pipeline(args):
    spec = load_spec(args.spec, args.seed)
    out_dir = Path(args.out_dir)
    output = simulate(spec)
    write_simulation(out_dir, output)
    # re-read the written files so the chain matches running the subcommands by hand
    records = ctm.parse_ctm(read_text(out_dir / "sim.ctm"))
    predictions = run_identify(records, args.languages or list(spec.languages))
    write_text(out_dir / "predictions.txt", vote.format_predictions(predictions.values()))
    gold = evaluation.parse_gold(read_text(out_dir / "gold.txt"))
    report = evaluation.score(vote.parse_predictions(read_text(out_dir / "predictions.txt")), gold)
    write_text(out_dir / "report.txt", evaluation.report_text(report))
    write_text(out_dir / "report.json", evaluation.report_json(report))
    sys.stdout.write(evaluation.report_json(report) if args.json else evaluation.report_text(report))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phonevote", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lexicon", help="filter, tag and merge per-language lexicons")
    p.add_argument("--part", nargs=3, action="append", required=True, metavar=("TAG", "LEXICON", "CORPUS"),
                   help="one language: its tag, untagged lexicon file and transcription file (repeatable, in merge order)")
    p.add_argument("--top-k", type=non_negative_int, default=2000, help="keep the K most frequent corpus words (default 2000)")
    p.add_argument("-o", "--output", help="merged lexicon file (default stdout)")
    p.set_defaults(func=cmd_lexicon)

    p = sub.add_parser("lm", help="build a multilingual corpus and train an ARPA n-gram model")
    p.add_argument("--corpus", nargs=2, action="append", required=True, metavar=("TAG", "FILE"),
                   help="transcriptions of one language (repeatable)")
    p.add_argument("--order", type=positive_int, default=4, help="n-gram order (default 4)")
    p.add_argument("--seed", type=int, default=0, help="corpus shuffle seed (default 0)")
    p.add_argument("--corpus-out", help="also write the shuffled, normalized corpus here")
    p.add_argument("-o", "--output", help="ARPA file (default stdout)")
    p.set_defaults(func=cmd_lm)

    p = sub.add_parser("identify", help="predict each utterance's language from a phone CTM")
    p.add_argument("ctm")
    p.add_argument("--phones", help="phones.txt to map integer phone ids to symbols")
    p.add_argument("--languages", type=languages_arg, required=True,
                   help="comma-separated language tags, in tie-break priority order")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="predictions file (default stdout)")
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("codeswitch", help="segment utterances at language switches")
    p.add_argument("ctm")
    p.add_argument("--phones", help="phones.txt to map integer phone ids to symbols")
    p.add_argument("--threshold", type=positive_int, default=codeswitch.DEFAULT_THRESHOLD,
                   help="consecutive foreign phones needed to declare a switch (default 3)")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_codeswitch)

    p = sub.add_parser("score", help="score predictions against gold labels")
    p.add_argument("predictions")
    p.add_argument("gold")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("simulate", help="generate a synthetic CTM and gold labels from a spec file")
    p.add_argument("spec", help="JSON simulation spec")
    p.add_argument("--seed", type=int, help="override the seed in the simulation file")
    p.add_argument("--codeswitch", type=int, metavar="BLOCKS", help="generate code-switched utterances with BLOCKS language blocks")
    p.add_argument("--out-dir", default=".", help="writes sim.ctm, gold.txt (and switches.txt)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("pipeline", help="simulate, identify and score in one go")
    p.add_argument("spec", help="JSON simulation spec")
    p.add_argument("--seed", type=int, help="override the seed in the simulation file")
    p.add_argument("--languages", type=languages_arg, help="tie-break order (default: the simulation file's languages)")
    p.add_argument("--out-dir", default=".", help="writes sim.ctm, gold.txt, predictions.txt, report.txt, report.json")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="phonevote: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"phonevote: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"phonevote: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BrokenPipeError:
        # downstream reader (e.g. head) went away
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
