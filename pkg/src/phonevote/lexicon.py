"""Pronunciation lexicons with language-tagged phones.

Per-language lexicons are read in CMUdict layout (``word  p1 p2 ...``, with
``word(2)`` marking alternate pronunciations), optionally restricted to the
most frequent words of a transcription corpus, tagged with their language and
merged into one multilingual lexicon.  On merge every surface word is
renumbered ``1..k`` across all languages, so identically spelled words from
different languages become ``mesa`` and ``mesa(2)``.
"""

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from phonevote.corpus import normalize_line
from phonevote.errors import ParseError
from phonevote.phones import TaggedPhone, check_tag

_VARIANT_RE = re.compile(r"^(.+?)\(([^()]*)\)$")


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    variant: int
    pron: tuple

    def __post_init__(self):
        if not self.word or any(c.isspace() for c in self.word):
            raise ValueError(f"invalid word {self.word!r}")
        if self.variant < 1:
            raise ValueError(f"variant must be >= 1, got {self.variant}")
        if not self.pron:
            raise ValueError(f"empty pronunciation for {self.word!r}")
        if len({p.language for p in self.pron}) != 1:
            raise ValueError(f"mixed-language pronunciation for {self.word!r}")

    @property
    def language(self) -> str:
        return self.pron[0].language

    @property
    def headword(self) -> str:
        return self.word if self.variant == 1 else f"{self.word}({self.variant})"


@dataclass(frozen=True)
class Lexicon:
    entries: tuple = ()

    @property
    def languages(self) -> frozenset:
        return frozenset(e.language for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def words(self) -> set:
        return {e.word for e in self.entries}

    def check(self):
        """Raise ValueError unless variants are dense per word and entries are unique."""
        variants = {}
        seen = set()
        for e in self.entries:
            key = (e.word, e.variant, e.language)
            if key in seen:
                raise ValueError(f"duplicate entry {e.headword} [{e.language}]")
            seen.add(key)
            variants.setdefault(e.word, []).append(e.variant)
        for word, vs in variants.items():
            if sorted(vs) != list(range(1, len(vs) + 1)):
                raise ValueError(f"variants of {word!r} are not 1..{len(vs)}: {sorted(vs)}")
        full = Counter((e.word, e.language, e.pron) for e in self.entries)
        dup = [k for k, n in full.items() if n > 1]
        if dup:
            raise ValueError(f"repeated pronunciation for {dup[0][0]!r} [{dup[0][1]}]")


def _split_headword(head: str, lineno: int):
    m = _VARIANT_RE.match(head)
    if not m:
        return head.lower(), 1
    word, num = m.groups()
    if not num.isdigit() or int(num) < 1:
        raise ParseError(f"variant suffix of {head!r} is not a positive integer", lineno)
    return word.lower(), int(num)


def _lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith(";;;"):
            continue
        yield lineno, line.split()


def load_lexicon(text: str, tag: str) -> Lexicon:
    """Read an untagged single-language lexicon and tag every phone with ``tag``."""
    check_tag(tag)
    entries = []
    for lineno, fields in _lines(text):
        if len(fields) < 2:
            raise ParseError(f"expected a word and at least one phone, got {fields!r}", lineno)
        word, variant = _split_headword(fields[0], lineno)
        try:
            pron = tuple(TaggedPhone.make(tag, p) for p in fields[1:])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        entries.append(LexiconEntry(word, variant, pron))
    return Lexicon(tuple(entries))


def parse_lexicon(text: str) -> Lexicon:
    """Read a lexicon whose phones are already tagged (the output of `write_lexicon`)."""
    entries = []
    for lineno, fields in _lines(text):
        if len(fields) < 2:
            raise ParseError(f"expected a word and at least one phone, got {fields!r}", lineno)
        word, variant = _split_headword(fields[0], lineno)
        try:
            entries.append(LexiconEntry(word, variant, tuple(TaggedPhone.parse(p) for p in fields[1:])))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return Lexicon(tuple(entries))


def write_lexicon(lex: Lexicon) -> str:
    return "".join(f"{e.headword}  {' '.join(map(str, e.pron))}\n" for e in lex.entries)


def top_k_words(corpus: Iterable[str], k: int) -> set:
    """The ``k`` most frequent normalized tokens; ties broken by lexicographic order."""
    if k < 0:
        raise ValueError("k must be >= 0")
    counts = Counter(tok for line in corpus for tok in normalize_line(line))
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return {w for w, _ in ranked[:k]}


def filter_top_k(lex: Lexicon, corpus: Iterable[str], k: int) -> Lexicon:
    keep = top_k_words(corpus, k)
    return Lexicon(tuple(e for e in lex.entries if "".join(normalize_line(e.word)) in keep))


def merge_lexicons(parts: Sequence[Lexicon]) -> Lexicon:
    """Concatenate single-language lexicons and renumber homographs in encounter order.

    Exact duplicates (same word, language and pronunciation) are dropped.
    """
    owners = set()
    for i, part in enumerate(parts):
        langs = part.languages
        if len(langs) > 1:
            raise ValueError(f"part {i} mixes languages {sorted(langs)}")
        if langs & owners:
            raise ValueError(f"language {next(iter(langs & owners))} appears in more than one part")
        owners |= langs

    next_variant = Counter()
    seen = set()
    merged = []
    for part in parts:
        for e in part.entries:
            key = (e.word, e.pron)
            if key in seen:
                continue
            seen.add(key)
            next_variant[e.word] += 1
            merged.append(LexiconEntry(e.word, next_variant[e.word], e.pron))
    return Lexicon(tuple(merged))


def split_by_language(lex: Lexicon) -> list:
    """Single-language lexicons in order of each language's first appearance."""
    groups = {}
    for e in lex.entries:
        groups.setdefault(e.language, []).append(e)
    return [Lexicon(tuple(es)) for es in groups.values()]
