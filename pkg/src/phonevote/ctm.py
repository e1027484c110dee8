"""CTM phone alignments and Kaldi-style phone symbol tables.

A CTM line is ``utterance channel start duration token [confidence]``.  Tokens
are language-tagged phones (``ES_b``), silence symbols, or, straight out of a
decoder, integer phone ids to be resolved with :func:`map_phone_ids`.
"""

import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

from phonevote.errors import ParseError


@dataclass(frozen=True)
class CtmRecord:
    utterance_id: str
    channel: str
    start: float
    duration: float
    token: str
    confidence: Optional[float] = None

    @property
    def end(self) -> float:
        return self.start + self.duration


def _number(text: str, lineno: int, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"non-numeric {what} {text!r}", lineno) from None
    if not math.isfinite(value):
        raise ParseError(f"{what} must be finite, got {text!r}", lineno)
    return value


def parse_ctm(text: str) -> list:
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields or fields[0].startswith(";;"):
            continue
        if len(fields) not in (5, 6):
            raise ParseError(f"expected 5 or 6 fields, got {len(fields)}", lineno)
        start = _number(fields[2], lineno, "start time")
        duration = _number(fields[3], lineno, "duration")
        if start < 0 or duration < 0:
            raise ParseError("negative start time or duration", lineno)
        confidence = None
        if len(fields) == 6:
            confidence = _number(fields[5], lineno, "confidence")
            if not 0.0 <= confidence <= 1.0:
                raise ParseError(f"confidence {confidence} outside [0, 1]", lineno)
        records.append(CtmRecord(fields[0], fields[1], start, duration, fields[4], confidence))
    return records


def format_ctm(records: Iterable[CtmRecord]) -> str:
    out = []
    for r in records:
        line = f"{r.utterance_id} {r.channel} {r.start:.2f} {r.duration:.2f} {r.token}"
        if r.confidence is not None:
            line += f" {r.confidence:.2f}"
        out.append(line + "\n")
    return "".join(out)


class PhoneTable:
    """Bijection between integer phone ids and phone symbols (Kaldi ``phones.txt``)."""

    def __init__(self, pairs=()):
        self._by_id = {}
        self._by_symbol = {}
        for symbol, pid in pairs:
            self.add(symbol, pid)

    def add(self, symbol: str, pid: int):
        if pid in self._by_id:
            raise ValueError(f"phone id {pid} assigned to both {self._by_id[pid]!r} and {symbol!r}")
        if symbol in self._by_symbol:
            raise ValueError(f"symbol {symbol!r} assigned to both {self._by_symbol[symbol]} and {pid}")
        self._by_id[pid] = symbol
        self._by_symbol[symbol] = pid

    def symbol(self, pid: int) -> str:
        return self._by_id[pid]

    def id(self, symbol: str) -> int:
        return self._by_symbol[symbol]

    def __contains__(self, pid):
        return pid in self._by_id

    def __len__(self):
        return len(self._by_id)

    def items(self):
        return sorted(self._by_id.items())

    def __eq__(self, other):
        return isinstance(other, PhoneTable) and self._by_id == other._by_id


def parse_phone_table(text: str) -> PhoneTable:
    table = PhoneTable()
    for lineno, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'SYMBOL ID', got {line.strip()!r}", lineno)
        symbol, pid = fields
        try:
            table.add(symbol, int(pid))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return table


def format_phone_table(table: PhoneTable) -> str:
    return "".join(f"{sym} {pid}\n" for pid, sym in table.items())


class UnknownPhoneError(ValueError):
    def __init__(self, phone_id, index):
        self.phone_id = phone_id
        self.index = index
        super().__init__(f"record {index}: phone id {phone_id} not in phone table")


def map_phone_ids(records: Iterable[CtmRecord], table: PhoneTable) -> list:
    out = []
    for index, r in enumerate(records):
        try:
            pid = int(r.token)
        except ValueError:
            raise ValueError(f"record {index}: token {r.token!r} is not an integer phone id") from None
        if pid not in table:
            raise UnknownPhoneError(pid, index)
        out.append(replace(r, token=table.symbol(pid)))
    return out


def group_by_utterance(records: Iterable[CtmRecord]) -> dict:
    """Utterance id -> its records sorted by start time (stable), in first-seen order."""
    groups = {}
    for r in records:
        groups.setdefault(r.utterance_id, []).append(r)
    return {utt: sorted(rs, key=lambda r: r.start) for utt, rs in groups.items()}
