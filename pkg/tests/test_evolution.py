import pytest
from hypothesis import given, strategies as st

from stabtime.evolution import (
    BitString,
    BitStringParseError,
    all_bitstrings,
    format_trace,
    is_stable,
    pack,
    parse_bitstring,
    stabilization_time,
    stabilize,
    stabilize_packed,
    step,
    step_packed,
    strip_to_core,
    unpack,
)

bits = st.lists(st.integers(0, 1), max_size=80).map(lambda b: BitString(tuple(b)))


def reverse_complement(s):
    return BitString(tuple(1 - b for b in reversed(s.bits)))


def test_worked_example_trace():
    final, steps, trace = stabilize("01101011", record_trace=True)
    assert [str(s) for s in trace] == [
        "01101011",
        "10110101",
        "11011010",
        "11101100",
        "11110100",
        "11111000",
    ]
    assert steps == 5
    assert str(final) == "11111000"


@pytest.mark.parametrize("text,expected", [("", 0), ("0", 0), ("1", 0), ("1100", 0), ("01", 1), ("0011", 3), ("0101", 2)])
def test_small_times(text, expected):
    assert stabilization_time(text) == expected


def test_step_swaps_every_pair_at_once():
    assert str(step("0101")) == "1010"
    assert str(step("0011")) == "0101"
    assert str(step("1100")) == "1100"


def test_parse_errors_report_position():
    with pytest.raises(BitStringParseError) as info:
        parse_bitstring("01x1")
    assert info.value.index == 2
    assert str(parse_bitstring("0101\n")) == "0101"


def test_bitstring_rejects_non_bits():
    with pytest.raises(ValueError):
        BitString((0, 2))


def test_strip_to_core():
    dec = strip_to_core("1101100")
    assert (dec.leading_ones, str(dec.core), dec.trailing_zeros) == (2, "011", 2)
    assert len(strip_to_core("1100").core) == 0


def test_all_bitstrings_is_lexicographic():
    assert [str(s) for s in all_bitstrings(2)] == ["00", "01", "10", "11"]


def test_format_trace():
    assert format_trace([BitString((0, 1)), BitString((1, 0))]) == "01\n10\n"


@given(bits)
def test_step_preserves_ones(s):
    assert step(s).ones() == s.ones()


@given(bits)
def test_time_bounded_by_length(s):
    final, steps, _ = stabilize(s)
    assert is_stable(final)
    assert steps <= max(len(s) - 1, 0)
    assert str(final) == "1" * s.ones() + "0" * (len(s) - s.ones())


@given(bits)
def test_time_equals_core_time(s):
    assert stabilization_time(s) == stabilization_time(strip_to_core(s).core)


@given(bits)
def test_reverse_complement_symmetry(s):
    assert stabilization_time(s) == stabilization_time(reverse_complement(s))


@given(bits)
def test_packed_step_matches_tuple_step(s):
    assert unpack(step_packed(pack(s)), len(s)) == step(s)
    assert unpack(pack(s), len(s)) == s


@given(bits)
def test_packed_stabilize_matches(s):
    final, steps = stabilize_packed(pack(s))
    ref_final, ref_steps, _ = stabilize(s)
    assert steps == ref_steps
    assert unpack(final, len(s)) == ref_final
