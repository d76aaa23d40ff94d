from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stabtime.rng import (
    MASK64,
    bernoulli_bits,
    bernoulli_threshold,
    bitsliced_less_than,
    raw_words,
    words_to_bits,
)

M0, M1 = 0xD2E7470EE14C6C93, 0xCA5A826395121157
W0, W1 = 0x9E3779B97F4A7C15, 0xBB67AE8584CAA73B


def philox4x64(ctr, key, rounds=10):
    """Reference Philox4x64 block cipher on Python ints."""
    x0, x1, x2, x3 = ctr
    k0, k1 = key
    for r in range(rounds):
        p0, p1 = M0 * x0, M1 * x2
        x0, x1, x2, x3 = (p1 >> 64) ^ x1 ^ k0, p1 & MASK64, (p0 >> 64) ^ x3 ^ k1, p0 & MASK64
        k0, k1 = (k0 + W0) & MASK64, (k1 + W1) & MASK64
    return [x0, x1, x2, x3]


def reference_words(seed, index, count):
    out, c = [], 1
    while len(out) < count:
        ctr = [(c >> (64 * i)) & MASK64 for i in range(4)]
        out.extend(philox4x64(ctr, (seed & MASK64, index & MASK64)))
        c += 1
    return out[:count]


def test_philox_known_answer():
    # published answer for counter 0, key 0
    assert philox4x64([0, 0, 0, 0], (0, 0)) == [
        0x16554D9ECA36314C,
        0xDB20FE9D672D0FDC,
        0xD7E772CEE186176B,
        0x7E68B68AEC7BA23B,
    ]


def test_first_words_of_stream_zero():
    assert raw_words(0, 0, 4).tolist() == [0x2F4BA6408E4D89B, 0x3DD62B0B9CA8C5B2, 0x1C8667A55D902E79, 0x907D7A052FD5B4DC]


@settings(max_examples=25)
@given(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1), st.integers(1, 13))
def test_stream_matches_reference(seed, index, count):
    assert raw_words(seed, index, count).tolist() == reference_words(seed, index, count)


def test_prefix_stability():
    assert raw_words(5, 9, 3).tolist() == raw_words(5, 9, 10).tolist()[:3]
    assert raw_words(5, 9, 3).tolist() != raw_words(5, 10, 3).tolist()


@pytest.mark.parametrize(
    "p,expected",
    [(Fraction(1, 2), (1, 1)), (Fraction(3, 4), (2, 3)), (0.75, (2, 3)), (Fraction(5, 8), (3, 5))],
)
def test_threshold_dyadic(p, expected):
    assert bernoulli_threshold(p) == expected


def test_threshold_non_dyadic_rounds_up():
    k, j = bernoulli_threshold(Fraction(1, 3))
    assert k == 53
    assert j == -(-(1 << 53) // 3)
    with pytest.raises(ValueError):
        bernoulli_threshold(1)


@settings(max_examples=40)
@given(st.integers(1, 12), st.data())
def test_bitsliced_compare_matches_integer_compare(k, data):
    j = data.draw(st.integers(1, (1 << k) - 1))
    words = np.array(data.draw(st.lists(st.integers(0, MASK64), min_size=k, max_size=k)), dtype=np.uint64)
    lt = int(bitsliced_less_than(words[None, :], j, k)[0])
    for lane in range(64):
        u = 0
        for b in range(k):
            u = (u << 1) | ((int(words[b]) >> lane) & 1)
        assert ((lt >> lane) & 1) == (u < j)


def test_words_to_bits_little_endian():
    bits = words_to_bits(np.array([0b1011], dtype=np.uint64), 5)
    assert bits.tolist() == [1, 1, 0, 1, 0]


def test_half_is_complement_of_raw_bits():
    # k = 1, j = 1: a lane is 1 exactly when its raw bit is 0
    words = raw_words(3, 4, 2)
    assert bernoulli_bits(3, 4, 128, 0.5).tolist() == (1 - words_to_bits(words, 128)).tolist()


@pytest.mark.parametrize("p", [0.5, 0.75, 0.3, 101 / 200])
def test_bernoulli_frequency(p):
    bits = bernoulli_bits(11, 0, 400_000, p)
    se = np.sqrt(p * (1 - p) / bits.size)
    assert abs(bits.mean() - p) < 5 * se
