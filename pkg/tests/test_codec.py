import itertools

import pytest
from hypothesis import given, strategies as st

from hohoho.codec import (
    FULL8,
    LOOPLESS4,
    OOK_MAPPING,
    Command,
    Mapping,
    all_codes,
    builtin_mapping,
    decode,
    encode,
    format_mapping,
    parse_bf,
    parse_mapping,
    print_bf,
    read_mapping,
    write_mapping,
)
from hohoho.errors import (
    CommandNotEncodable,
    LengthNotDivisible,
    MappingFormatError,
    UnmappedCode,
)
from hohoho.notation import HO, OOK, AtomSeq, parse_standard

from strategies import commands

C = Command
HOHOHO = builtin_mapping("hohoho")
SIMPLE = builtin_mapping("simplehoho")


def test_eight_commands():
    assert len(set(Command)) == 8
    assert FULL8.allowed == frozenset(Command)
    assert LOOPLESS4.allowed == {C.MOVE_RIGHT, C.INC, C.DEC, C.OUTPUT}


def test_decode_anchor():
    s = parse_standard("HoHoho hoHoho", HO)
    assert decode(s, HOHOHO) == [C.MOVE_RIGHT, C.OUTPUT]


def test_decode_empty():
    assert decode(AtomSeq(HO, ()), HOHOHO) == []


def test_decode_length_not_divisible():
    with pytest.raises(LengthNotDivisible) as e:
        decode(AtomSeq(HO, (0, 0)), HOHOHO)
    assert (e.value.length, e.value.width) == (2, 3)


def test_decode_unmapped_ninth_ook_code():
    (ninth,) = OOK_MAPPING.unmapped_codes()
    with pytest.raises(UnmappedCode) as e:
        decode(AtomSeq(OOK, (0, 0) + ninth), OOK_MAPPING)
    assert e.value.position == 1
    assert e.value.code == "Ook?Ook?"


def test_decode_rejects_other_alphabet():
    with pytest.raises(ValueError):
        decode(AtomSeq(OOK, (0, 0)), SIMPLE)


def test_encode_anchor():
    assert encode([C.MOVE_RIGHT, C.OUTPUT], HOHOHO).atoms == (0, 0, 1, 1, 0, 1)
    assert encode([], HOHOHO).atoms == ()


def test_encode_loop_under_simple_hoho():
    with pytest.raises(CommandNotEncodable) as e:
        encode([C.LOOP_OPEN], SIMPLE)
    assert e.value.command is C.LOOP_OPEN


def test_parse_bf():
    assert parse_bf(">.") == [C.MOVE_RIGHT, C.OUTPUT]
    assert parse_bf("") == []
    assert parse_bf("+hello+") == [C.INC, C.INC]


def test_print_bf():
    assert print_bf([C.MOVE_RIGHT, C.OUTPUT]) == ">."
    assert print_bf([]) == ""
    assert print_bf([C.INC] * 3) == "+++"


def test_hohoho_is_zero_waste():
    assert len(HOHOHO) == 8 == len(all_codes(HO, 3))
    assert HOHOHO.is_total(FULL8)
    assert not HOHOHO.unmapped_codes()


def test_ook_wastes_one_code():
    assert len(all_codes(OOK, 2)) == 9
    assert len(OOK_MAPPING) == 8
    assert len(OOK_MAPPING.unmapped_codes()) == 1


def test_simple_hoho_is_loopless4():
    assert len(SIMPLE) == 4 == len(all_codes(HO, 2))
    assert SIMPLE.commands() == LOOPLESS4.allowed
    for c in (C.MOVE_LEFT, C.INPUT, C.LOOP_OPEN, C.LOOP_CLOSE):
        assert SIMPLE.code(c) is None


def test_ook_reference_table():
    expected = {
        "Ook.Ook?": ">", "Ook?Ook.": "<", "Ook.Ook.": "+", "Ook!Ook!": "-",
        "Ook!Ook.": ".", "Ook.Ook!": ",", "Ook!Ook?": "[", "Ook?Ook!": "]",
    }
    got = {OOK_MAPPING.spell(code): cmd.value for code, cmd in OOK_MAPPING.entries}
    assert got == expected
    assert builtin_mapping("ook") == OOK_MAPPING


def test_mapping_must_be_injective():
    with pytest.raises(ValueError):
        Mapping(HO, 2, {(0, 0): C.INC, (0, 1): C.INC})
    with pytest.raises(ValueError):
        Mapping(HO, 2, {(0, 0, 0): C.INC})


def test_mapping_equality_ignores_entry_order():
    a = Mapping(HO, 2, [((0, 0), C.INC), ((1, 1), C.DEC)])
    b = Mapping(HO, 2, [((1, 1), C.DEC), ((0, 0), C.INC)])
    assert a == b


@pytest.mark.parametrize("m", [HOHOHO, SIMPLE, OOK_MAPPING], ids=["hohoho", "simple", "ook"])
def test_mapping_file_roundtrip(m, tmp_path):
    path = tmp_path / "m.map"
    write_mapping(m, path)
    assert read_mapping(path) == m
    assert format_mapping(read_mapping(path)) == path.read_text()


def test_mapping_file_comments_and_header():
    text = "# table\nalphabet=Ho,ho\nwidth=3\nHoHoho=>  # anchor\n"
    m = parse_mapping(text)
    assert m.command((0, 0, 1)) is C.MOVE_RIGHT and len(m) == 1


@pytest.mark.parametrize("text", [
    "width=3\nHoHoho=>\n",
    "alphabet=Ho,ho\nHoHoho=>\n",
    "alphabet=Ho,ho\nwidth=3\nHoHo=>\n",
    "alphabet=Ho,ho\nwidth=3\nHoHoho=x\n",
    "alphabet=Ho,ho\nwidth=3\nHoHoho=>\nHoHoHo=>\n",
    "alphabet=Ho,ho\nwidth=3\nHoXoho=>\n",
])
def test_mapping_file_errors(text):
    with pytest.raises(MappingFormatError):
        parse_mapping(text)


@given(commands)
def test_bf_roundtrip(cmds):
    assert parse_bf(print_bf(cmds)) == cmds


@pytest.mark.parametrize("m", [HOHOHO, OOK_MAPPING], ids=["hohoho", "ook"])
@given(cmds=commands)
def test_encode_decode_identity(m, cmds):
    assert decode(encode(cmds, m), m) == cmds


@given(st.lists(st.sampled_from(sorted(LOOPLESS4.allowed, key=lambda c: c.order)), max_size=50))
def test_simple_encode_decode_identity(cmds):
    assert decode(encode(cmds, SIMPLE), SIMPLE) == cmds


@given(st.lists(st.integers(0, 1), max_size=10).map(lambda xs: xs * 3))
def test_decode_encode_identity_on_atoms(atoms):
    s = AtomSeq(HO, tuple(atoms))
    assert encode(decode(s, HOHOHO), HOHOHO) == s
