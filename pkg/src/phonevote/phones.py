"""Language tags and language-tagged phone symbols.

A tagged phone is serialized as ``<TAG>_<base>``, e.g. ``ES_b``.  The tag is
2-8 uppercase ASCII letters; everything after the first underscore is the base
symbol, so Kaldi word-position suffixes (``ES_b_B``) survive unchanged.
"""

import re
from typing import NamedTuple

TAG_RE = re.compile(r"^[A-Z]{2,8}$")

# Untagged symbols that carry no language. Kaldi position-dependent variants
# (SIL_B, SPN_E, ...) count as well.
SILENCE_SYMBOLS = frozenset({"SIL", "SPN", "NSN"})


def check_tag(tag: str) -> str:
    if not isinstance(tag, str) or not TAG_RE.match(tag):
        raise ValueError(f"invalid language tag {tag!r}: expected 2-8 uppercase ASCII letters")
    return tag


class TaggedPhone(NamedTuple):
    language: str
    base: str

    def __str__(self):
        return f"{self.language}_{self.base}"

    @classmethod
    def parse(cls, token: str) -> "TaggedPhone":
        tag, sep, base = token.partition("_")
        if not sep or not base or not TAG_RE.match(tag) or any(c.isspace() for c in base):
            raise ValueError(f"not a language-tagged phone: {token!r}")
        return cls(tag, base)

    @classmethod
    def make(cls, language: str, base: str) -> "TaggedPhone":
        check_tag(language)
        if not base or any(c.isspace() for c in base):
            raise ValueError(f"invalid phone symbol {base!r}")
        return cls(language, base)


def is_silence(token: str) -> bool:
    return token in SILENCE_SYMBOLS or token.split("_", 1)[0] in SILENCE_SYMBOLS


def language_of(token: str):
    """Language tag of a CTM token, or None for silence.

    Raises ValueError for anything else (for instance an unmapped numeric phone id).
    """
    if is_silence(token):
        return None
    return TaggedPhone.parse(token).language
