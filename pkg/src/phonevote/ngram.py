"""Backoff n-gram language models: Witten-Bell training and ARPA text I/O.

Sentences are scored as ``<s> w1 ... wn </s>``.  ``<s>`` is never predicted
and gets the conventional log10 probability of -99; ``<unk>`` is never seen
in training and receives its share of the unigram level's unseen mass.

Witten-Bell with backoff, for a context ``h`` followed by ``c(h)`` tokens of
``t(h)`` distinct types::

    P(w | h) = c(h, w) / (c(h) + t(h))                       if (h, w) was seen
             = bow(h) * P(w | h[1:])                          otherwise
    bow(h)   = t(h) / (c(h) + t(h)) / (1 - sum_{w seen after h} P(w | h[1:]))

and the unigram level interpolates with a uniform distribution over the
vocabulary (excluding ``<s>``)::

    P(w) = (c(w) + t / |V|) / (N + t)
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Optional, Sequence

from phonevote.corpus import Corpus
from phonevote.errors import ParseError

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"
# log10 probability written for <s>, which is never predicted
BOS_LOGPROB = -99.0


@dataclass(frozen=True, eq=True)
class NgramModel:
    """``tables[n - 1]`` maps n-token tuples to ``(log10 prob, log10 backoff or None)``."""

    order: int
    tables: tuple

    @property
    def vocabulary(self) -> list:
        return [g[0] for g in self.tables[0]]

    def counts(self) -> list:
        return [len(t) for t in self.tables]

    def _known(self, word: str) -> str:
        return word if (word,) in self.tables[0] else UNK

    def logprob(self, word: str, context: Sequence[str] = ()) -> float:
        """log10 P(word | context) with backoff; out-of-vocabulary tokens map to ``<unk>``."""
        word = self._known(word)
        context = tuple(self._known(w) for w in context)
        context = context[-(self.order - 1):] if self.order > 1 else ()
        weight = 0.0
        while True:
            entry = self.tables[len(context)].get(context + (word,))
            if entry is not None:
                return weight + entry[0]
            if not context:
                return -math.inf
            ctx = self.tables[len(context) - 1].get(context)
            if ctx is not None and ctx[1] is not None:
                weight += ctx[1]
            context = context[1:]

    def prob(self, word: str, context: Sequence[str] = ()) -> float:
        return 10.0 ** self.logprob(word, context)

    def distribution(self, context: Sequence[str] = ()) -> dict:
        """P(w | context) for every vocabulary word."""
        return {w: self.prob(w, context) for w in self.vocabulary}


def count_ngrams(lines, order: int) -> list:
    """Counts of all n-grams, n = 1..order, in ``<s> ... </s>``-wrapped lines.

    ``<s>`` is only ever a history, never a counted final token.
    """
    counts = [Counter() for _ in range(order)]
    for line in lines:
        padded = (BOS,) + tuple(UNK if t in (BOS, EOS) else t for t in line) + (EOS,)
        for end in range(1, len(padded)):
            for n in range(1, order + 1):
                start = end - n + 1
                if start < 0:
                    break
                counts[n - 1][padded[start:end + 1]] += 1
    return counts


def train_ngram(corpus: Corpus, order: int) -> NgramModel:
    if order < 1:
        raise ValueError("order must be >= 1")
    lines = corpus.lines if isinstance(corpus, Corpus) else corpus
    if not lines:
        raise ValueError("cannot train a language model on an empty corpus")
    counts = count_ngrams(lines, order)

    vocab = set(g[0] for g in counts[0]) | {UNK}
    total = sum(counts[0].values())
    types = len(counts[0])
    floor = types / len(vocab)
    probs = [{(w,): (counts[0][(w,)] + floor) / (total + types) for w in vocab}]
    bows = [dict() for _ in range(order)]

    def backed_off(word, context):
        weight = 1.0
        while True:
            p = probs[len(context)].get(context + (word,))
            if p is not None:
                return weight * p
            weight *= bows[len(context) - 1].get(context, 1.0)
            context = context[1:]

    for n in range(2, order + 1):
        by_context = defaultdict(dict)
        for gram, c in counts[n - 1].items():
            by_context[gram[:-1]][gram[-1]] = c
        table = {}
        for ctx, followers in by_context.items():
            c_h = sum(followers.values())
            t_h = len(followers)
            denom = c_h + t_h
            lower_seen = 0.0
            for w, c in followers.items():
                table[ctx + (w,)] = c / denom
                lower_seen += backed_off(w, ctx[1:])
            bows[n - 2][ctx] = (t_h / denom) / (1.0 - lower_seen)
        probs.append(table)

    tables = []
    for n in range(1, order + 1):
        table = {}
        for gram, p in probs[n - 1].items():
            bo = bows[n - 1].get(gram) if n < order else None
            table[gram] = (math.log10(p), None if bo is None else math.log10(bo))
        tables.append(table)
    bos_bo = bows[0].get((BOS,))
    tables[0][(BOS,)] = (BOS_LOGPROB, None if bos_bo is None else math.log10(bos_bo))
    return NgramModel(order, tuple(tables))


def sentence_logprob(model: NgramModel, tokens: Sequence[str]) -> float:
    history = [BOS]
    total = 0.0
    for w in list(tokens) + [EOS]:
        total += model.logprob(w, history)
        history.append(w)
    return total


def write_arpa(model: NgramModel) -> str:
    out = ["\\data\\"]
    out += [f"ngram {n}={len(t)}" for n, t in enumerate(model.tables, 1)]
    out.append("")
    for n, table in enumerate(model.tables, 1):
        out.append(f"\\{n}-grams:")
        for gram in sorted(table):
            lp, bo = table[gram]
            line = f"{lp:.6f}\t{' '.join(gram)}"
            if bo is not None:
                line += f"\t{bo:.6f}"
            out.append(line)
        out.append("")
    out.append("\\end\\")
    return "\n".join(out) + "\n"


def _float(text: str, lineno: int, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"non-numeric {what} {text!r}", lineno) from None


def parse_arpa(text: str) -> NgramModel:
    lines = text.splitlines()
    i = 0
    while i < len(lines) and lines[i].strip() != "\\data\\":
        i += 1
    if i == len(lines):
        raise ParseError("missing \\data\\ header")
    i += 1

    declared = {}
    while i < len(lines):
        line = lines[i].strip()
        if line.startswith("ngram "):
            try:
                n, c = line[len("ngram "):].split("=")
                declared[int(n)] = int(c)
            except ValueError:
                raise ParseError(f"bad count line {line!r}", i + 1) from None
        elif line:
            break
        i += 1
    if not declared:
        raise ParseError("no ngram counts in \\data\\ section", i + 1)
    order = max(declared)
    if sorted(declared) != list(range(1, order + 1)):
        raise ParseError(f"orders {sorted(declared)} are not contiguous from 1")

    tables = [dict() for _ in range(order)]
    n = None
    ended = False
    while i < len(lines):
        lineno = i + 1
        line = lines[i].strip()
        i += 1
        if not line:
            continue
        if line == "\\end\\":
            ended = True
            break
        if line.startswith("\\") and line.endswith("-grams:"):
            try:
                n = int(line[1:-len("-grams:")])
            except ValueError:
                raise ParseError(f"bad section header {line!r}", lineno) from None
            if n not in declared:
                raise ParseError(f"section for undeclared order {n}", lineno)
            continue
        if n is None:
            raise ParseError(f"entry outside any n-gram section: {line!r}", lineno)
        fields = line.split()
        if len(fields) not in (n + 1, n + 2):
            raise ParseError(f"expected {n + 1} or {n + 2} fields for a {n}-gram, got {len(fields)}", lineno)
        lp = _float(fields[0], lineno, "log probability")
        gram = tuple(fields[1:n + 1])
        bo = _float(fields[n + 1], lineno, "backoff weight") if len(fields) == n + 2 else None
        if bo is not None and n == order:
            raise ParseError(f"backoff weight on highest-order {n}-gram", lineno)
        if gram in tables[n - 1]:
            raise ParseError(f"duplicate {n}-gram {' '.join(gram)!r}", lineno)
        if n > 1 and gram[:-1] not in tables[n - 2]:
            raise ParseError(f"{n}-gram {' '.join(gram)!r} has no {n - 1}-gram prefix entry", lineno)
        tables[n - 1][gram] = (lp, bo)
    if not ended:
        raise ParseError("missing \\end\\ marker")
    for n, c in declared.items():
        if len(tables[n - 1]) != c:
            raise ParseError(f"order {n}: header declares {c} entries, found {len(tables[n - 1])}")
    return NgramModel(order, tuple(tables))
