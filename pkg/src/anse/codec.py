"""Streaming coder: renormalizing encode/decode steps and whole-frame helpers.

Bit order contract (normative for the container format):

* ``encode_step`` emits the ``nbits`` least-significant bits of the state,
  lowest bit first.
* ``encode_frame`` walks the message from its last symbol to its first and
  the frame payload is the **full reversal** of everything emitted, so the
  decoder streams strictly forward.
* ``decode_step`` reads a group of ``nbits`` payload bits where the first bit
  read is the most significant of the group (the classic
  ``x = 2*x + bit`` refill loop).
* Payload bytes pack stream bit ``8*k + i`` into bit ``i`` of byte ``k``;
  the final byte is zero-padded and the exact bit length travels with the
  payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput, TruncatedStream
from .tables import DecodingTable, EncodingTable

_REV_TABLES: dict[int, list[int]] = {0: [0]}


def _rev_table(nbits: int) -> list[int]:
    """Bit-reversal table for ``nbits``-wide values, built on first use."""
    table = _REV_TABLES.get(nbits)
    if table is None:
        table = [0] * (1 << nbits)
        half = 1 << (nbits - 1)
        for v in range(1 << nbits):
            table[v] = (table[v >> 1] >> 1) | (half if v & 1 else 0)
        _REV_TABLES[nbits] = table
    return table


@dataclass(frozen=True)
class BitPayload:
    """A bit sequence packed least-significant-bit first into bytes."""

    data: bytes
    bit_length: int

    def __post_init__(self):
        if self.bit_length < 0:
            raise InvalidInput("bit length must be nonnegative")
        if not self.bit_length <= 8 * len(self.data) < self.bit_length + 8:
            raise InvalidInput(
                f"{len(self.data)} bytes cannot hold exactly {self.bit_length} bits"
            )

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitPayload":
        data = bytearray((len(bits) + 7) // 8)
        for i, b in enumerate(bits):
            if b:
                data[i >> 3] |= 1 << (i & 7)
        return cls(bytes(data), len(bits))

    def bits(self) -> list[int]:
        return [(self.data[i >> 3] >> (i & 7)) & 1 for i in range(self.bit_length)]


class BitWriter:
    """Accumulates stream bits; groups are written most-significant bit first."""

    def __init__(self):
        self._acc = 0
        self._fill = 0
        self._bytes = bytearray()
        self._nbits = 0

    def write_group(self, value: int, nbits: int) -> None:
        if nbits:
            # Reversing the group makes its MSB the earliest stream bit while
            # keeping the byte packing LSB-first.
            self._acc |= _rev_table(nbits)[value] << self._fill
            self._fill += nbits
            self._nbits += nbits
            while self._fill >= 8:
                self._bytes.append(self._acc & 0xFF)
                self._acc >>= 8
                self._fill -= 8

    def payload(self) -> BitPayload:
        data = bytes(self._bytes) + (
            bytes([self._acc & 0xFF]) if self._fill else b""
        )
        return BitPayload(data, self._nbits)


class BitReader:
    """Forward reader over a payload; groups come back first-bit-most-significant.

    With ``pad=True`` reads past the end return zero bits instead of raising,
    which keeps wrong-key decodes structurally harmless.
    """

    def __init__(self, payload: BitPayload, pad: bool = False):
        self._data = payload.data
        self._remaining = payload.bit_length
        self._pos = 0
        self._buf = 0
        self._avail = 0
        self._pad = pad

    def read_group(self, nbits: int) -> int:
        if nbits == 0:
            return 0
        if nbits > self._remaining:
            if not self._pad:
                raise TruncatedStream(
                    f"needed {nbits} bits, only {self._remaining} left"
                )
            self._remaining = nbits  # zero-fill past the end
        while self._avail < nbits:
            if self._pos < len(self._data):
                self._buf |= self._data[self._pos] << self._avail
                self._pos += 1
            self._avail += 8
        raw = self._buf & ((1 << nbits) - 1)
        self._buf >>= nbits
        self._avail -= nbits
        self._remaining -= nbits
        return _rev_table(nbits)[raw]

    @property
    def bits_remaining(self) -> int:
        return self._remaining


def _check_state(x: int, radix_log: int) -> None:
    L = 1 << radix_log
    if not L <= x < 2 * L:
        raise InvalidInput(f"state {x} outside [{L}, {2 * L})")


def encode_step(
    x: int, symbol: int, table: EncodingTable
) -> tuple[int, tuple[int, ...]]:
    """One encode step: returns the new state and the emitted bits (lowest first)."""
    _check_state(x, table.radix_log)
    if not 0 <= symbol < table.num_symbols:
        raise InvalidInput(f"symbol {symbol} outside the alphabet")
    nbits = (x + table.renorm_bias[symbol]) >> table.shift
    bits = tuple((x >> i) & 1 for i in range(nbits))
    new_x = table.next_states[table.segment_offset[symbol] + (x >> nbits)]
    return new_x, bits


def decode_step(
    x: int, table: DecodingTable, reader: BitReader
) -> tuple[int, int]:
    """One decode step: returns the symbol and the refilled state."""
    _check_state(x, table.radix_log)
    L = 1 << table.radix_log
    slot = x - L
    nbits = table.nb_bits[slot]
    return table.symbols[slot], L + table.new_x[slot] + reader.read_group(nbits)


def encode_frame(
    symbols: Sequence[int], table: EncodingTable, x0: int
) -> tuple[BitPayload, int]:
    """Encode a whole message; returns the payload and the final state.

    Symbols are processed last to first so the decoder can run forward; the
    payload is the reversed emission sequence.
    """
    _check_state(x0, table.radix_log)
    if symbols and not 0 <= min(symbols) <= max(symbols) < table.num_symbols:
        raise InvalidInput("message contains symbols outside the alphabet")
    bias = table.renorm_bias
    seg = table.segment_offset
    nxt = table.next_states
    shift = table.shift
    x = x0
    groups = []
    append = groups.append
    for s in reversed(symbols):
        nbits = (x + bias[s]) >> shift
        append((x & ((1 << nbits) - 1), nbits))
        x = nxt[seg[s] + (x >> nbits)]
    writer = BitWriter()
    for value, nbits in reversed(groups):
        writer.write_group(value, nbits)
    return writer.payload(), x


def decode_frame(
    payload: BitPayload,
    table: DecodingTable,
    final_state: int,
    count: int,
    pad: bool = False,
) -> tuple[list[int], int]:
    """Decode ``count`` symbols reading the payload front to back.

    Returns the symbols in original message order and the end state, which
    equals the encoder's starting state.
    """
    _check_state(final_state, table.radix_log)
    reader = BitReader(payload, pad=pad)
    L = 1 << table.radix_log
    syms = table.symbols
    nb = table.nb_bits
    new_x = table.new_x
    read = reader.read_group
    x = final_state
    out = []
    append = out.append
    for _ in range(count):
        slot = x - L
        append(syms[slot])
        x = L + new_x[slot] + read(nb[slot])
    return out, x
