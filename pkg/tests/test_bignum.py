import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anse import (
    InvalidInput,
    PeriodicSpread,
    bignum_decode,
    bignum_encode,
    decode_sequence,
    encode_sequence,
)


def naive_encode(symbol, x, spread):
    """Linear-scan oracle: walk the naturals counting appearances."""
    seen = 0
    pos = 0
    while True:
        if spread.symbol_at(pos) == symbol:
            if seen == x:
                return pos
            seen += 1
        pos += 1


BINARY = PeriodicSpread([0, 1])
SKEWED = PeriodicSpread([0, 1, 1, 1])


class TestGoldenChains:
    def test_binary_chain_reaches_47(self):
        x, chain = 1, []
        for s in [0, 1, 1, 1, 1]:
            x = bignum_encode(s, x, BINARY)
            chain.append(x)
        assert chain == [2, 5, 11, 23, 47]

    def test_skewed_chain_reaches_18(self):
        x, chain = 1, []
        for s in [0, 1, 1, 1, 1]:
            x = bignum_encode(s, x, SKEWED)
            chain.append(x)
        assert chain == [4, 6, 9, 13, 18]

    def test_decode_18(self):
        assert bignum_decode(18, SKEWED) == (1, 13)

    def test_decode_4(self):
        assert bignum_decode(4, SKEWED) == (0, 1)

    def test_decode_47(self):
        assert bignum_decode(47, BINARY) == (1, 23)

    def test_binary_is_double_plus_symbol(self):
        for s in (0, 1):
            for x in range(50):
                assert bignum_encode(s, x, BINARY) == 2 * x + s


class TestSequences:
    def test_sequence_roundtrip_golden(self):
        assert encode_sequence([0, 1, 1, 1, 1], 1, SKEWED) == 18
        assert decode_sequence(18, 5, SKEWED) == ([0, 1, 1, 1, 1], 1)

    def test_empty_sequence_is_identity(self):
        assert encode_sequence([], 7, SKEWED) == 7

    def test_rejects_zero_start(self):
        with pytest.raises(InvalidInput):
            encode_sequence([0], 0, BINARY)

    @settings(max_examples=60, deadline=None)
    @given(
        data=st.data(),
        m=st.integers(2, 8),
        x0=st.integers(1, 1000),
        n=st.integers(0, 40),
    )
    def test_random_sequence_roundtrip(self, data, m, x0, n):
        period = data.draw(
            st.lists(st.integers(0, m - 1), min_size=8, max_size=8).filter(
                lambda p: len(set(p)) >= 2
            )
        )
        spread = PeriodicSpread(period)
        alphabet = sorted(set(period))
        msg = [data.draw(st.sampled_from(alphabet)) for _ in range(n)]
        x = encode_sequence(msg, x0, spread)
        assert decode_sequence(x, n, spread) == (msg, x0)


class TestProperties:
    def test_zeroth_appearance_is_first_occurrence(self):
        spread = PeriodicSpread([2, 0, 2, 1])
        for s in (0, 1, 2):
            assert bignum_encode(s, 0, spread) == spread.positions[s][0]

    def test_unknown_symbol_rejected(self):
        with pytest.raises(InvalidInput):
            bignum_encode(5, 3, BINARY)

    @settings(max_examples=40, deadline=None)
    @given(data=st.data(), m=st.integers(2, 8))
    def test_bijection(self, data, m):
        period = data.draw(
            st.lists(st.integers(0, m - 1), min_size=4, max_size=16).filter(
                lambda p: len(set(p)) >= 2
            )
        )
        spread = PeriodicSpread(period)
        alphabet = sorted(set(period))
        for _ in range(20):
            s = data.draw(st.sampled_from(alphabet))
            x = data.draw(st.integers(0, 9999))
            assert bignum_decode(bignum_encode(s, x, spread), spread) == (s, x)

    def test_matches_naive_oracle(self):
        rng = random.Random(7)
        spread = PeriodicSpread([rng.randrange(3) for _ in range(8)])
        for s in sorted(set(spread.symbols)):
            for x in range(60):
                assert bignum_encode(s, x, spread) == naive_encode(s, x, spread)

    def test_monotonicity(self):
        spread = PeriodicSpread([0, 1, 0, 2, 0, 0, 1, 2])
        for s in (0, 1, 2):
            values = [bignum_encode(s, x, spread) for x in range(500)]
            assert all(a < b for a, b in zip(values, values[1:]))

    def test_growth_matches_information_content(self):
        # position of the x-th appearance grows like x / q_s
        rng = random.Random(3)
        for _ in range(5):
            m = rng.randrange(2, 9)
            period = [rng.randrange(m) for _ in range(16)]
            if len(set(period)) < 2:
                continue
            spread = PeriodicSpread(period)
            for s in sorted(set(period)):
                q = spread.counts[s] / spread.period
                for x in range(1001, 10000, 997):
                    lg_pos = math.log2(bignum_encode(s, x, spread))
                    assert abs(lg_pos - math.log2(x) - math.log2(1 / q)) < 0.05
