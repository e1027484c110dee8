"""Synthetic phone alignments with a controllable cross-language confusion matrix.

Stands in for a trained acoustic model: each utterance has a true language,
and every phone it emits is labeled with a language drawn from that
language's confusion row, so e.g. a row ``{"FR": 0.4, "ES": 0.6}`` yields
French utterances whose phones are mostly tagged Spanish.

Reproducibility: each utterance draws from its own ``random.Random`` seeded
with a string derived from the configured seed and the utterance's position, and
only ``Random.random()`` is called (see :mod:`phonevote.rng`).  Times are
whole centiseconds, so CTM files round-trip exactly at two decimals.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from phonevote.ctm import CtmRecord
from phonevote.phones import TaggedPhone, check_tag
from phonevote.rng import make_rng, randbelow, weighted_choice

SILENCE = "SIL"


@dataclass(frozen=True)
class SimSpec:
    languages: tuple
    inventory: dict
    confusion: dict = field(default_factory=dict)  # true -> {emitted: prob}; missing rows = identity
    utterances_per_language: int = 100
    phones_per_utterance: tuple = (10, 40)
    silence_rate: float = 0.0
    mean_phone_duration: float = 0.08
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "languages", tuple(self.languages))
        object.__setattr__(self, "phones_per_utterance", tuple(self.phones_per_utterance))
        confusion = {lang: {lang: 1.0} for lang in self.languages}
        confusion.update({k: dict(v) for k, v in self.confusion.items()})
        object.__setattr__(self, "confusion", confusion)
        self.validate()

    def validate(self):
        if not self.languages:
            raise ValueError("languages: at least one language required")
        if len(set(self.languages)) != len(self.languages):
            raise ValueError("languages: duplicate tag")
        for lang in self.languages:
            check_tag(lang)
        for true, row in self.confusion.items():
            if true not in self.languages:
                raise ValueError(f"confusion: row for unknown language {true}")
            if any(p < 0 for p in row.values()):
                raise ValueError(f"confusion: negative probability in row {true}")
            if abs(sum(row.values()) - 1.0) > 1e-9:
                raise ValueError(f"confusion: row {true} sums to {sum(row.values())}, not 1")
            for emitted in row:
                check_tag(emitted)
        needed = set(self.languages) | {e for row in self.confusion.values() for e in row}
        for lang in sorted(needed):
            phones = self.inventory.get(lang)
            if not phones:
                raise ValueError(f"inventory: no phones for language {lang}")
            for base in phones:
                TaggedPhone.make(lang, base)
        lo, hi = self.phones_per_utterance
        if not 1 <= lo <= hi:
            raise ValueError(f"phones_per_utterance: need 1 <= min <= max, got {lo}, {hi}")
        if not 0.0 <= self.silence_rate < 1.0:
            raise ValueError("silence_rate must be in [0, 1)")
        if not (self.mean_phone_duration > 0 and math.isfinite(self.mean_phone_duration)):
            raise ValueError("mean_phone_duration must be positive")
        if self.utterances_per_language < 0:
            raise ValueError("utterances_per_language must be >= 0")

    @classmethod
    def from_dict(cls, data: dict) -> "SimSpec":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown simulation keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "SimSpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {
            "languages": list(self.languages),
            "inventory": {k: list(v) for k, v in self.inventory.items()},
            "confusion": self.confusion,
            "utterances_per_language": self.utterances_per_language,
            "phones_per_utterance": list(self.phones_per_utterance),
            "silence_rate": self.silence_rate,
            "mean_phone_duration": self.mean_phone_duration,
            "seed": self.seed,
        }


@dataclass
class SimOutput:
    ctm: list
    gold: dict
    switch_gold: Optional[dict] = None


def _phone_count(rng, spec: SimSpec) -> int:
    lo, hi = spec.phones_per_utterance
    return lo + randbelow(rng, hi - lo + 1)


def _emit(rng, spec: SimSpec, utt: str, blocks, clock: int = 0):
    """Records for consecutive ``(true_language, n_phones)`` blocks; returns records and block start times."""
    mean_cs = spec.mean_phone_duration * 100
    records = []
    starts = []

    def record(token):
        nonlocal clock
        dur = max(1, round(mean_cs * (0.5 + rng.random())))
        records.append(CtmRecord(utt, "1", clock / 100, dur / 100, token))
        clock += dur

    for true, n in blocks:
        row = spec.confusion[true]
        emitted_langs = sorted(row)
        weights = [row[e] for e in emitted_langs]
        for k in range(n):
            if spec.silence_rate and rng.random() < spec.silence_rate:
                record(SILENCE)
            if k == 0:
                starts.append(clock / 100)
            lang = weighted_choice(rng, emitted_langs, weights)
            inv = spec.inventory[lang]
            record(f"{lang}_{inv[randbelow(rng, len(inv))]}")
    return records, starts


def simulate(spec: SimSpec) -> SimOutput:
    ctm = []
    gold = {}
    for lang in spec.languages:
        for i in range(spec.utterances_per_language):
            utt = f"sim-{lang}-{i:05d}"
            rng = make_rng(spec.seed, "utt", lang, i)
            records, _ = _emit(rng, spec, utt, [(lang, _phone_count(rng, spec))])
            ctm.extend(records)
            gold[utt] = lang
    return SimOutput(ctm, gold)


def simulate_codeswitch(
    spec: SimSpec,
    blocks_per_utterance: int = 2,
    n_utterances: Optional[int] = None,
    block_languages: Optional[Sequence[str]] = None,
) -> SimOutput:
    """Utterances made of language blocks, with the true switch points recorded.

    Block languages are drawn at random (no language twice in a row) unless
    ``block_languages`` fixes them.  Each utterance's gold label is its first
    block's language.  ``n_utterances`` defaults to
    ``utterances_per_language * len(languages)``.
    """
    if blocks_per_utterance < 2:
        raise ValueError("blocks_per_utterance must be >= 2")
    if len(spec.languages) < 2:
        raise ValueError("code-switch simulation needs at least 2 languages")
    if block_languages is not None:
        block_languages = list(block_languages)
        if len(block_languages) != blocks_per_utterance:
            raise ValueError("block_languages must have one entry per block")
        for a, b in zip(block_languages, block_languages[1:]):
            if a == b:
                raise ValueError(f"consecutive blocks must differ in language, got {a} twice")
        for lang in block_languages:
            if lang not in spec.languages:
                raise ValueError(f"block language {lang} not in spec languages")
    if n_utterances is None:
        n_utterances = spec.utterances_per_language * len(spec.languages)

    ctm = []
    gold = {}
    switch_gold = {}
    for i in range(n_utterances):
        utt = f"cs-{i:05d}"
        rng = make_rng(spec.seed, "codeswitch", i)
        langs = block_languages
        if langs is None:
            langs = [spec.languages[randbelow(rng, len(spec.languages))]]
            while len(langs) < blocks_per_utterance:
                others = [lang for lang in spec.languages if lang != langs[-1]]
                langs.append(others[randbelow(rng, len(others))])
        blocks = [(lang, _phone_count(rng, spec)) for lang in langs]
        records, starts = _emit(rng, spec, utt, blocks)
        ctm.extend(records)
        gold[utt] = langs[0]
        switch_gold[utt] = list(zip(starts[1:], langs[1:]))
    return SimOutput(ctm, gold, switch_gold)


def format_switch_gold(switch_gold: dict) -> str:
    return "".join(
        f"{utt}\t{t:.2f}\t{lang}\n" for utt, points in switch_gold.items() for t, lang in points
    )
