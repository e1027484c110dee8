"""Accuracy scoring of language predictions against gold labels."""

import json
from collections import Counter
from dataclasses import dataclass
from typing import Mapping

from phonevote.errors import ParseError
from phonevote.phones import check_tag


@dataclass(frozen=True)
class LanguageScore:
    correct: int
    total: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total


@dataclass(frozen=True)
class EvalReport:
    overall_accuracy: float
    per_language: dict  # gold language -> LanguageScore
    confusion: dict  # (gold, predicted) -> count
    skipped: list

    @property
    def scored(self) -> int:
        return sum(s.total for s in self.per_language.values())

    @property
    def labels(self) -> list:
        return sorted({lang for pair in self.confusion for lang in pair})

    def to_dict(self) -> dict:
        return {
            "overall_accuracy": self.overall_accuracy,
            "per_language": {
                lang: {"correct": s.correct, "total": s.total, "accuracy": s.accuracy}
                for lang, s in sorted(self.per_language.items())
            },
            "confusion": [
                {"gold": g, "predicted": p, "count": n} for (g, p), n in sorted(self.confusion.items())
            ],
            "skipped": self.skipped,
        }


def score(predictions: Mapping[str, str], gold: Mapping[str, str]) -> EvalReport:
    """Score the utterances present in both maps; the rest are listed in ``skipped``.

    ``predictions`` values may be language tags or objects with a ``language`` attribute.
    """
    common = [utt for utt in gold if utt in predictions]
    if not common:
        raise ValueError("predictions and gold labels share no utterance ids")
    skipped = sorted(set(gold).symmetric_difference(predictions))

    confusion = Counter()
    for utt in common:
        pred = predictions[utt]
        confusion[gold[utt], getattr(pred, "language", pred)] += 1
    totals = Counter()
    correct = Counter()
    for (g, p), n in confusion.items():
        totals[g] += n
        if g == p:
            correct[g] += n
    per_language = {lang: LanguageScore(correct[lang], totals[lang]) for lang in sorted(totals)}
    overall = sum(correct.values()) / len(common)
    return EvalReport(overall, per_language, dict(confusion), skipped)


def report_text(report: EvalReport) -> str:
    labels = report.labels
    correct = sum(s.correct for s in report.per_language.values())
    lines = [f"overall {100 * report.overall_accuracy:.2f}% ({correct}/{report.scored})", ""]
    lines.append("language\tcorrect\ttotal\taccuracy")
    for lang, s in sorted(report.per_language.items()):
        lines.append(f"{lang}\t{s.correct}\t{s.total}\t{100 * s.accuracy:.2f}%")
    lines += ["", "confusion (rows: gold, columns: predicted)"]
    lines.append("\t".join(["gold\\pred"] + labels))
    for g in sorted(report.per_language):
        lines.append("\t".join([g] + [str(report.confusion.get((g, p), 0)) for p in labels]))
    if report.skipped:
        lines += ["", f"skipped {len(report.skipped)} utterance(s): {' '.join(report.skipped)}"]
    return "\n".join(lines) + "\n"


def parse_gold(text: str) -> dict:
    gold = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'utt language', got {line.strip()!r}", lineno)
        utt, lang = fields
        try:
            check_tag(lang)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if utt in gold:
            raise ParseError(f"duplicate utterance {utt!r}", lineno)
        gold[utt] = lang
    if not gold:
        raise ParseError("gold label file is empty")
    return gold


def format_gold(gold: Mapping[str, str]) -> str:
    return "".join(f"{utt}\t{lang}\n" for utt, lang in gold.items())


def report_json(report: EvalReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
