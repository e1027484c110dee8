import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phonevote.errors import ParseError
from phonevote.lexicon import (
    Lexicon,
    LexiconEntry,
    filter_top_k,
    load_lexicon,
    merge_lexicons,
    parse_lexicon,
    split_by_language,
    write_lexicon,
)
from phonevote.phones import TaggedPhone


def tp(lang, *bases):
    return tuple(TaggedPhone(lang, b) for b in bases)


def test_load_basura():
    lex = load_lexicon("basura  b a s u r a\n", "ES")
    assert lex.entries == (LexiconEntry("basura", 1, tp("ES", "b", "a", "s", "u", "r", "a")),)


def test_load_empty():
    assert len(load_lexicon("", "ES")) == 0


def test_load_variants():
    lex = load_lexicon("le  l ax\nle(2)  l eh\n", "FR")
    assert [(e.word, e.variant) for e in lex] == [("le", 1), ("le", 2)]
    assert lex.entries[1].pron == tp("FR", "l", "eh")


def test_load_lowercases_and_skips_comments():
    lex = load_lexicon(";;; cmudict header\nCASA\tk a s a\n\n", "ES")
    assert [e.word for e in lex] == ["casa"]


def test_load_errors_carry_line_number():
    with pytest.raises(ParseError) as err:
        load_lexicon("casa  k a s a\nperro\n", "ES")
    assert err.value.lineno == 2
    with pytest.raises(ParseError):
        load_lexicon("le(0)  l ax\n", "FR")
    with pytest.raises(ParseError):
        load_lexicon("le(x)  l ax\n", "FR")


def test_filter_tie_break():
    lex = load_lexicon("a  a\nb  b\nc  c\nd  d\n", "ES")
    kept = filter_top_k(lex, ["a a b c"], 2)
    assert [e.word for e in kept] == ["a", "b"]


def test_filter_zero_and_oversized_k():
    lex = load_lexicon("a  a\nb  b\nzz  z z\n", "ES")
    assert len(filter_top_k(lex, ["a b"], 0)) == 0
    assert [e.word for e in filter_top_k(lex, ["a b"], 100)] == ["a", "b"]


def test_filter_keeps_all_variants_and_normalizes_corpus():
    lex = load_lexicon("hola  o l a\nhola(2)  h o l a\nmundo  m u n d o\n", "ES")
    kept = filter_top_k(lex, ["¡Hola, Mundo!", "hola"], 1)
    assert [(e.word, e.variant) for e in kept] == [("hola", 1), ("hola", 2)]


def test_merge_homograph_across_languages():
    es = load_lexicon("mesa  m e s a\n", "ES")
    tr = load_lexicon("mesa  m e s a\n", "TR")
    merged = merge_lexicons([es, tr])
    assert write_lexicon(merged) == "mesa  ES_m ES_e ES_s ES_a\nmesa(2)  TR_m TR_e TR_s TR_a\n"


def test_merge_single_is_identity():
    lex = load_lexicon("le  l ax\nle(2)  l eh\nde  d ax\n", "FR")
    assert merge_lexicons([lex]) == lex


def test_merge_three_parts_in_order():
    parts = [load_lexicon("a  x\n", "ES"), load_lexicon("a  y\n", "FR"), load_lexicon("a  z\n", "AR")]
    merged = merge_lexicons(parts)
    assert [(e.variant, e.language) for e in merged] == [(1, "ES"), (2, "FR"), (3, "AR")]


def test_merge_drops_exact_duplicates():
    lex = load_lexicon("a  x\na(2)  x\na(3)  y\n", "ES")
    merged = merge_lexicons([lex])
    assert [(e.variant, e.pron) for e in merged] == [(1, tp("ES", "x")), (2, tp("ES", "y"))]


def test_merge_rejects_shared_language():
    with pytest.raises(ValueError, match="more than one part"):
        merge_lexicons([load_lexicon("a  x\n", "ES"), load_lexicon("b  y\n", "ES")])


def test_write_basura_and_empty():
    lex = load_lexicon("basura  b a s u r a\n", "ES")
    assert write_lexicon(lex) == "basura  ES_b ES_a ES_s ES_u ES_r ES_a\n"
    assert write_lexicon(Lexicon()) == ""


# --- properties -------------------------------------------------------------

words = st.text(alphabet="abcdeñ", min_size=1, max_size=4)
bases = st.lists(st.sampled_from(["a", "b", "e", "rr", "sh", "aa"]), min_size=1, max_size=4)
langs = st.lists(st.sampled_from(["AR", "ES", "FR", "TR", "DE"]), min_size=1, max_size=5, unique=True)


@st.composite
def lexicon_parts(draw):
    tags = draw(langs)
    shared = draw(st.lists(words, min_size=1, max_size=3))  # planted homographs
    parts = []
    for tag in tags:
        ws = draw(st.lists(words, max_size=8)) + shared
        lines = "".join(f"{w}  {' '.join(draw(bases))}\n" for w in ws)
        parts.append(load_lexicon(lines, tag))
    return parts


TAG_RE = re.compile(r"^[A-Z]{2,8}_\S+$")


@settings(max_examples=150, deadline=None)
@given(lexicon_parts())
def test_merge_invariants(parts):
    merged = merge_lexicons(parts)
    merged.check()
    for e in merged:
        assert all(TAG_RE.match(str(p)) for p in e.pron)
    again = merge_lexicons(split_by_language(merged))
    assert again == merged
    assert parse_lexicon(write_lexicon(merged)) == merged
    text = write_lexicon(merged)
    assert write_lexicon(parse_lexicon(text)) == text


@settings(max_examples=100, deadline=None)
@given(lexicon_parts(), st.lists(st.lists(words, max_size=6).map(" ".join), max_size=8), st.integers(0, 6), st.integers(0, 6))
def test_filter_monotone(parts, corpus, k1, k2):
    k1, k2 = sorted((k1, k2))
    small = set(filter_top_k(parts[0], corpus, k1).entries)
    large = set(filter_top_k(parts[0], corpus, k2).entries)
    assert small <= large


@settings(max_examples=100, deadline=None)
@given(lexicon_parts())
def test_untagged_round_trip_per_language(parts):
    for part in parts:
        if not len(part):
            continue
        tag = next(iter(part.languages))
        untagged = "".join(f"{e.headword}  {' '.join(p.base for p in e.pron)}\n" for e in part)
        assert load_lexicon(untagged, tag) == part
