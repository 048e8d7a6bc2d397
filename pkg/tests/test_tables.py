import random

import pytest

from anse import (
    FrequencyTable,
    InvalidInput,
    PeriodicSpread,
    SymbolSpread,
    bignum_decode,
    build_decoding_table,
    build_encoding_table,
    quantize_frequencies,
)


def random_table_pair(rng, radix_log, max_symbols=12):
    L = 1 << radix_log
    m = rng.randrange(1, min(max_symbols, L) + 1)
    counts = [rng.randrange(0, 100) for _ in range(m)]
    if sum(counts) == 0:
        counts[0] = 1
    freq = quantize_frequencies(counts, radix_log)
    slots = [s for s, f in enumerate(freq.freqs) for _ in range(f)]
    rng.shuffle(slots)
    return freq, SymbolSpread(tuple(slots))


FOUR_STATE_FREQ = FrequencyTable(2, (3, 1))
FOUR_STATE_SPREAD = SymbolSpread((0, 1, 0, 0))


class TestDecodingTable:
    def test_four_state_entries(self):
        dec = build_decoding_table(FOUR_STATE_SPREAD, FOUR_STATE_FREQ)
        assert list(zip(dec.symbols, dec.nb_bits, dec.new_x)) == [
            (0, 1, 2),
            (1, 2, 0),
            (0, 0, 0),
            (0, 0, 1),
        ]

    def test_two_state_binary(self):
        dec = build_decoding_table(SymbolSpread((0, 1)), FrequencyTable(1, (1, 1)))
        assert list(zip(dec.symbols, dec.nb_bits, dec.new_x)) == [(0, 1, 0), (1, 1, 0)]

    def test_single_symbol_alphabet(self):
        dec = build_decoding_table(SymbolSpread((0, 0)), FrequencyTable(1, (2,)))
        assert list(zip(dec.symbols, dec.nb_bits, dec.new_x)) == [(0, 0, 0), (0, 0, 1)]

    def test_inconsistent_spread_rejected(self):
        with pytest.raises(InvalidInput):
            build_decoding_table(SymbolSpread((0, 0, 0, 1)), FrequencyTable(2, (2, 2)))

    def test_default_parameter_table_fits_eight_kilobytes(self):
        freq = quantize_frequencies([1] * 256, 11)
        slots = [s for s, f in enumerate(freq.freqs) for _ in range(f)]
        dec = build_decoding_table(SymbolSpread(tuple(slots)), freq)
        assert dec.packed_size_bytes == 8192

    def test_invariants_random(self):
        rng = random.Random(11)
        for _ in range(20):
            radix_log = rng.randrange(2, 9)
            freq, spread = random_table_pair(rng, radix_log)
            dec = build_decoding_table(spread, freq)
            L = 1 << radix_log
            per_symbol = [0] * freq.num_symbols
            for slot in range(L):
                assert 0 <= dec.nb_bits[slot] <= radix_log
                assert dec.new_x[slot] + (1 << dec.nb_bits[slot]) <= L
                per_symbol[dec.symbols[slot]] += 1
            assert tuple(per_symbol) == freq.freqs


class TestEncodingTable:
    def test_four_state_constants(self):
        enc = build_encoding_table(FOUR_STATE_SPREAD, FOUR_STATE_FREQ)
        assert enc.max_bits == (1, 2)
        assert enc.renorm_bias == (2, 12)
        assert enc.segment_offset == (-3, 2)
        assert enc.next_states == (4, 6, 7, 5)

    def test_two_state_binary(self):
        enc = build_encoding_table(SymbolSpread((0, 1)), FrequencyTable(1, (1, 1)))
        assert enc.next_states == (2, 3)
        assert enc.segment_offset == (-1, 0)
        assert enc.max_bits == (1, 1)

    def test_single_symbol_alphabet(self):
        enc = build_encoding_table(SymbolSpread((0, 0)), FrequencyTable(1, (2,)))
        assert enc.next_states == (2, 3)
        assert enc.max_bits == (0,)
        assert enc.renorm_bias == (-2,)
        assert enc.step_bits(2, 0) == 0 and enc.step_bits(3, 0) == 0

    def test_partition_of_state_range(self):
        rng = random.Random(5)
        for _ in range(20):
            freq, spread = random_table_pair(rng, rng.randrange(2, 9))
            enc = build_encoding_table(spread, freq)
            assert sorted(enc.next_states) == list(
                range(freq.num_states, 2 * freq.num_states)
            )

    def test_segments_increasing_and_enumerate_symbol_states(self):
        rng = random.Random(6)
        for _ in range(20):
            freq, spread = random_table_pair(rng, rng.randrange(2, 9))
            enc = build_encoding_table(spread, freq)
            L = freq.num_states
            lo = 0
            for s, slots in enumerate(freq.freqs):
                seg = enc.next_states[lo : lo + slots]
                assert all(a < b for a, b in zip(seg, seg[1:]))
                assert set(seg) == {
                    x for x in range(L, 2 * L) if spread.symbols[x - L] == s
                }
                lo += slots


class TestCrossConsistency:
    def test_enumeration_matches_bignum_decode(self):
        # dual route: table construction vs arbitrary-precision decode over
        # one shared spread
        rng = random.Random(13)
        for _ in range(25):
            freq, spread = random_table_pair(rng, rng.randrange(2, 9))
            periodic = PeriodicSpread(spread)
            enc = build_encoding_table(spread, freq)
            dec = build_decoding_table(spread, freq)
            L = freq.num_states
            next_appearance = list(freq.freqs)
            for x in range(L, 2 * L):
                s, appearance = bignum_decode(x, periodic)
                assert s == dec.symbols[x - L]
                assert appearance == next_appearance[s]
                next_appearance[s] += 1
                assert enc.next_states[enc.segment_offset[s] + appearance] == x

    def test_bit_count_consistency(self):
        rng = random.Random(17)
        for _ in range(25):
            freq, spread = random_table_pair(rng, rng.randrange(2, 9))
            enc = build_encoding_table(spread, freq)
            L = freq.num_states
            for s, slots in enumerate(freq.freqs):
                low, high = slots, 2 * slots
                for x in range(L, 2 * L):
                    nbits = enc.step_bits(x, s)
                    assert nbits in (enc.max_bits[s] - 1, enc.max_bits[s])
                    assert low <= (x >> nbits) < high
