"""Utterance language by plurality vote over the language tags of its phones."""

import json
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from phonevote.ctm import CtmRecord, group_by_utterance
from phonevote.errors import ParseError
from phonevote.phones import check_tag, language_of

log = logging.getLogger(__name__)


class NoEvidenceError(ValueError):
    pass


@dataclass(frozen=True)
class Prediction:
    utterance_id: str
    language: str
    tally: Counter
    margin: int

    @property
    def has_evidence(self) -> bool:
        return self.tally.total() > 0


def tally(records: Iterable[CtmRecord]) -> Counter:
    """Count tagged phones per language; silence symbols are skipped."""
    counts = Counter()
    for r in records:
        lang = language_of(r.token)
        if lang is not None:
            counts[lang] += 1
    return counts


def _rank(tie_break: Optional[Sequence[str]], candidates) -> dict:
    order = list(tie_break or ())
    order += sorted(set(candidates) - set(order))
    return {lang: i for i, lang in enumerate(order)}


def predict(counts: Counter, tie_break: Optional[Sequence[str]] = None) -> str:
    """Language with the highest count; exact ties go to the one earliest in ``tie_break``.

    Tied languages missing from ``tie_break`` rank after it, lexicographically.
    With no evidence at all the first ``tie_break`` language is returned.
    """
    counts = +Counter(counts)
    if not counts:
        if not tie_break:
            raise NoEvidenceError("no evidence: empty tally and no tie-break order")
        return tie_break[0]
    rank = _rank(tie_break, counts)
    return min(counts, key=lambda lang: (-counts[lang], rank[lang]))


def margin(counts: Counter) -> int:
    top = sorted(counts.values(), reverse=True) + [0, 0]
    return top[0] - top[1]


def identify(records: Iterable[CtmRecord], tie_break: Optional[Sequence[str]] = None):
    """Predict every utterance in a CTM.

    Returns ``(predictions, failures)``: utterance id -> Prediction, and
    utterance id -> error message for utterances that could not be decided.
    """
    predictions = {}
    failures = {}
    for utt, recs in group_by_utterance(records).items():
        try:
            counts = tally(recs)
            lang = predict(counts, tie_break)
        except ValueError as exc:
            failures[utt] = str(exc)
            continue
        if not counts:
            log.warning("%s: no language-tagged phones, defaulting to %s", utt, lang)
        predictions[utt] = Prediction(utt, lang, counts, margin(counts))
    return predictions, failures


def format_predictions(predictions: Iterable[Prediction]) -> str:
    out = []
    for p in predictions:
        counts = json.dumps(dict(sorted(p.tally.items())), separators=(",", ":"))
        out.append(f"{p.utterance_id}\t{p.language}\t{p.margin}\t{counts}\n")
    return "".join(out)


def parse_predictions(text: str) -> dict:
    """Read a predictions file into utterance id -> Prediction.

    Also accepts plain two-column ``utt language`` lines.
    """
    preds = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        fields = line.rstrip("\n").split("\t") if "\t" in line else line.split()
        if len(fields) == 2:
            utt, lang = fields
            counts, m = Counter(), 0
        elif len(fields) == 4:
            utt, lang, m, raw = fields
            try:
                counts = Counter(json.loads(raw))
                m = int(m)
            except ValueError as exc:
                raise ParseError(f"bad margin or tally: {exc}", lineno) from None
        else:
            raise ParseError(f"expected 2 or 4 tab-separated fields, got {len(fields)}", lineno)
        try:
            check_tag(lang)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if utt in preds:
            raise ParseError(f"duplicate utterance {utt!r}", lineno)
        preds[utt] = Prediction(utt, lang, counts, m)
    return preds
