"""Lookup-table generation for the streaming coder.

Both tables are derived from a symbol spread over the state range
``I = {L, ..., 2L-1}`` with ``L = 2**radix_log``.  Decoding walks slot
records; encoding uses a flattened next-state table plus three small
per-symbol arrays that turn the renormalization bit count into one shift.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInput
from .freq import FrequencyTable
from .spread import SymbolSpread


@dataclass(frozen=True)
class DecodingTable:
    """Per-slot decode records: symbol, bits to read, and the base next slot."""

    radix_log: int
    symbols: tuple[int, ...]
    nb_bits: tuple[int, ...]
    new_x: tuple[int, ...]

    @property
    def num_states(self) -> int:
        return 1 << self.radix_log

    @property
    def packed_size_bytes(self) -> int:
        # symbol u8 + bit count u8 + next slot u16 per entry
        return 4 * self.num_states


@dataclass(frozen=True)
class EncodingTable:
    """Flattened encode function over ``I`` plus per-symbol renorm constants.

    ``next_states[segment_offset[s] + (x >> nbits)]`` is the successor state,
    where ``nbits = (x + renorm_bias[s]) >> shift`` equals ``max_bits[s]`` or
    ``max_bits[s] - 1``.  ``segment_offset`` may be negative; the summed index
    always lands in ``range(num_states)``.
    """

    radix_log: int
    next_states: tuple[int, ...]
    max_bits: tuple[int, ...]
    renorm_bias: tuple[int, ...]
    segment_offset: tuple[int, ...]

    @property
    def num_states(self) -> int:
        return 1 << self.radix_log

    @property
    def num_symbols(self) -> int:
        return len(self.max_bits)

    @property
    def shift(self) -> int:
        return self.radix_log + 1

    def step_bits(self, x: int, symbol: int) -> int:
        """Bits emitted when encoding ``symbol`` from state ``x``."""
        return (x + self.renorm_bias[symbol]) >> self.shift


def _check_consistent(spread: SymbolSpread, freq: FrequencyTable) -> None:
    if not spread.matches(freq):
        raise InvalidInput("spread occurrence counts do not match the frequency table")


def build_decoding_table(spread: SymbolSpread, freq: FrequencyTable) -> DecodingTable:
    """Enumerate symbol appearances in slot order and precompute refill counts."""
    _check_consistent(spread, freq)
    R = freq.radix_log
    L = 1 << R
    next_appearance = list(freq.freqs)
    symbols = []
    nb_bits = []
    new_x = []
    for slot in range(L):
        s = spread.symbols[slot]
        x = next_appearance[s]
        next_appearance[s] += 1
        nbits = R - (x.bit_length() - 1)
        symbols.append(s)
        nb_bits.append(nbits)
        new_x.append((x << nbits) - L)
    return DecodingTable(R, tuple(symbols), tuple(nb_bits), tuple(new_x))


def build_encoding_table(spread: SymbolSpread, freq: FrequencyTable) -> EncodingTable:
    """Flatten the encode function and precompute per-symbol renorm constants."""
    _check_consistent(spread, freq)
    R = freq.radix_log
    L = 1 << R
    shift = R + 1
    max_bits = []
    renorm_bias = []
    segment_offset = []
    running = 0
    for slots in freq.freqs:
        k = R - (slots.bit_length() - 1)
        max_bits.append(k)
        renorm_bias.append((k << shift) - (slots << k))
        segment_offset.append(running - slots)
        running += slots
    next_states = [0] * L
    next_appearance = list(freq.freqs)
    for x in range(L, 2 * L):
        s = spread.symbols[x - L]
        next_states[segment_offset[s] + next_appearance[s]] = x
        next_appearance[s] += 1
    return EncodingTable(
        R,
        tuple(next_states),
        tuple(max_bits),
        tuple(renorm_bias),
        tuple(segment_offset),
    )
