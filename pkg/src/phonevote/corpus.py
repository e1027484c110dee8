"""Transcription cleanup and multilingual corpus assembly."""

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Sequence

from phonevote.phones import check_tag
from phonevote.rng import make_rng, shuffle


def normalize_line(raw: str) -> list:
    """Lowercase, drop Unicode punctuation (categories P*), split on whitespace."""
    text = "".join(c for c in raw.lower() if not unicodedata.category(c).startswith("P"))
    return text.split()


@dataclass(frozen=True)
class Corpus:
    lines: tuple
    languages: tuple

    def __post_init__(self):
        if len(self.lines) != len(self.languages):
            raise ValueError("lines and languages must be parallel")
        for line in self.lines:
            if not line:
                raise ValueError("corpus lines must be non-empty")

    def __len__(self):
        return len(self.lines)

    def text(self) -> str:
        return "".join(" ".join(line) + "\n" for line in self.lines)


def build_corpus(parts: Sequence, seed: int = 0) -> Corpus:
    """Normalize ``(tag, raw_lines)`` parts and interleave them in a seeded random order."""
    rows = []
    for tag, raw_lines in parts:
        check_tag(tag)
        for raw in raw_lines:
            toks = normalize_line(raw)
            if toks:
                rows.append((tuple(toks), tag))
    shuffle(make_rng("corpus", seed), rows)
    return Corpus(tuple(r[0] for r in rows), tuple(r[1] for r in rows))


def corpus_from_lines(lines: Iterable[str], tag: str = "UND") -> Corpus:
    """Already-clean text, one sentence per line, no shuffling."""
    toks = [tuple(line.split()) for line in lines]
    toks = [t for t in toks if t]
    return Corpus(tuple(toks), (tag,) * len(toks))
