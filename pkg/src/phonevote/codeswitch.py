"""Code-switch detection on a time-aligned stream of language-tagged phones.

The stream is cut into same-language segments.  A switch to language X is
declared once X has produced ``threshold`` consecutive phones while another
language is current; shorter foreign runs stay inside the current segment.
The switch time is the start of the first phone of the triggering run.
Silence is dropped before scanning and never breaks a run.
"""

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from phonevote.ctm import CtmRecord
from phonevote.phones import language_of

DEFAULT_THRESHOLD = 3


class NoSpeechError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    start: float
    end: float
    language: str
    phone_count: int


def segment(records: Sequence[CtmRecord], threshold: int = DEFAULT_THRESHOLD) -> list:
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    phones = [(r, lang) for r in records if (lang := language_of(r.token)) is not None]
    if not phones:
        raise NoSpeechError("no speech evidence: utterance has no language-tagged phones")

    segments = []
    current = phones[0][1]
    seg_start = phones[0][0].start
    seg_count = 0
    run = []
    run_lang = None
    for rec, lang in phones:
        if lang == current:
            seg_count += len(run) + 1
            run, run_lang = [], None
            continue
        if lang != run_lang:
            seg_count += len(run)
            run, run_lang = [], lang
        run.append(rec)
        if len(run) >= threshold:
            segments.append(Segment(seg_start, run[0].start, current, seg_count))
            current, seg_start, seg_count = lang, run[0].start, len(run)
            run, run_lang = [], None
    last = phones[-1][0]
    segments.append(Segment(seg_start, last.start + last.duration, current, seg_count + len(run)))
    return segments


def switches(segments: Sequence[Segment]) -> list:
    """``(time, from_language, to_language)`` for each boundary."""
    return [(b.start, a.language, b.language) for a, b in zip(segments, segments[1:])]


def segment_report(segments: Sequence[Segment]) -> str:
    lines = [f"switch\t{t:.2f}\t{a}->{b}" for t, a, b in switches(segments)]
    lines += [f"segment\t{s.start:.2f}\t{s.end:.2f}\t{s.language}\t{s.phone_count}" for s in segments]
    return "".join(line + "\n" for line in lines)


def segments_json(segments: Iterable[Segment]) -> str:
    return json.dumps([asdict(s) for s in segments])
