"""Closed-set spoken language identification by voting over language-tagged phones."""

from phonevote.errors import ParseError
from phonevote.phones import SILENCE_SYMBOLS, TaggedPhone, check_tag, is_silence, language_of

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "SILENCE_SYMBOLS",
    "TaggedPhone",
    "check_tag",
    "is_silence",
    "language_of",
]
