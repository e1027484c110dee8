import pytest
from hypothesis import given
from hypothesis import strategies as st

from phonevote.ctm import (
    CtmRecord,
    PhoneTable,
    UnknownPhoneError,
    format_ctm,
    format_phone_table,
    group_by_utterance,
    map_phone_ids,
    parse_ctm,
    parse_phone_table,
)
from phonevote.errors import ParseError


def test_six_fields():
    assert parse_ctm("utt1 1 0.32 0.08 ES_b 0.97\n") == [CtmRecord("utt1", "1", 0.32, 0.08, "ES_b", 0.97)]


def test_five_fields_no_confidence():
    (r,) = parse_ctm("utt1 1 0.32 0.08 ES_b")
    assert r.confidence is None


@pytest.mark.parametrize(
    "line, message",
    [
        ("utt1 1 0.32 ES_b", "5 or 6 fields"),
        ("utt1 1 -0.1 0.08 ES_b", "negative"),
        ("utt1 1 0.1 -0.08 ES_b", "negative"),
        ("utt1 1 0.1 0.08 ES_b 1.5", "outside"),
        ("utt1 1 abc 0.08 ES_b", "non-numeric"),
    ],
)
def test_parse_errors(line, message):
    with pytest.raises(ParseError, match=message) as err:
        parse_ctm("utt0 1 0.00 0.10 SIL\n" + line + "\n")
    assert err.value.lineno == 2


tokens = st.sampled_from(["ES_b", "FR_u", "AR_a", "SIL", "TR_oe", "14"])
records = st.builds(
    CtmRecord,
    utterance_id=st.sampled_from(["u1", "u2", "spk-03_utt7"]),
    channel=st.sampled_from(["1", "A"]),
    start=st.integers(0, 100000).map(lambda c: c / 100),
    duration=st.integers(0, 500).map(lambda c: c / 100),
    token=tokens,
    confidence=st.one_of(st.none(), st.integers(0, 100).map(lambda c: c / 100)),
)


@given(st.lists(records, max_size=30))
def test_ctm_round_trip(recs):
    assert parse_ctm(format_ctm(recs)) == recs


def test_phone_table():
    table = parse_phone_table("<eps> 0\nSIL 1\nES_b 14\n")
    assert table.symbol(14) == "ES_b" and table.id("SIL") == 1


@pytest.mark.parametrize("text", ["ES_b 14\nFR_b 14\n", "ES_b 14\nES_b 15\n", "ES_b\n", "ES_b x\n"])
def test_phone_table_errors(text):
    with pytest.raises(ParseError):
        parse_phone_table(text)


@given(st.permutations(range(200)))
def test_phone_table_round_trip(ids):
    table = PhoneTable((f"XX_p{i}", pid) for i, pid in enumerate(ids))
    assert parse_phone_table(format_phone_table(table)) == table
    assert len(table) == 200


def test_map_phone_ids():
    table = parse_phone_table("SIL 1\nES_b 14\n")
    recs = parse_ctm("u 1 0.00 0.10 14\nu 1 0.10 0.05 1 0.50\n")
    assert map_phone_ids(recs, table) == [
        CtmRecord("u", "1", 0.0, 0.1, "ES_b"),
        CtmRecord("u", "1", 0.1, 0.05, "SIL", 0.5),
    ]
    assert map_phone_ids([], table) == []


def test_map_unknown_id():
    table = parse_phone_table("ES_b 14\n")
    with pytest.raises(UnknownPhoneError) as err:
        map_phone_ids(parse_ctm("u 1 0 1 14\nu 1 1 1 99\n"), table)
    assert (err.value.phone_id, err.value.index) == (99, 1)


def test_id_and_symbol_paths_agree():
    symbols = ["SIL"] + [f"{lang}_{b}" for lang in ("ES", "FR", "AR") for b in ("a", "b", "s", "u")]
    table_text = "".join(f"{s} {i}\n" for i, s in enumerate(symbols, 1))
    lines = [(f"u{k % 3}", (k * 7) % len(symbols) + 1) for k in range(40)]
    ids_ctm = "".join(f"{u} 1 {k * 0.1:.2f} 0.10 {pid}\n" for k, (u, pid) in enumerate(lines))
    sym_ctm = "".join(f"{u} 1 {k * 0.1:.2f} 0.10 {symbols[pid - 1]}\n" for k, (u, pid) in enumerate(lines))
    assert map_phone_ids(parse_ctm(ids_ctm), parse_phone_table(table_text)) == parse_ctm(sym_ctm)


def test_group_interleaved():
    recs = parse_ctm("b 1 0.5 0.1 ES_a\na 1 0.3 0.1 FR_a\nb 1 0.1 0.1 ES_b\na 1 0.1 0.1 FR_b\n")
    groups = group_by_utterance(recs)
    assert list(groups) == ["b", "a"]
    assert [r.start for r in groups["b"]] == [0.1, 0.5]
    assert [r.token for r in groups["a"]] == ["FR_b", "FR_a"]


def test_group_single():
    (r,) = parse_ctm("u 1 0 1 ES_a")
    assert group_by_utterance([r]) == {"u": [r]}


@given(st.lists(records, max_size=40))
def test_group_conserves_and_is_stable(recs):
    groups = group_by_utterance(recs)
    assert sum(len(g) for g in groups.values()) == len(recs)
    for utt, g in groups.items():
        expected = sorted([r for r in recs if r.utterance_id == utt], key=lambda r: r.start)
        assert g == expected
