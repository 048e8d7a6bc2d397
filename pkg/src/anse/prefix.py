"""Canonical Huffman coder, used as a baseline and for the degenerate-case check.

When every symbol's slot count is a power of two and the spread lays symbols
out in contiguous ranges, the tabled coder's decode table behaves exactly like
a prefix-code decoder; :func:`degenerate_equivalence_check` verifies this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codec import BitPayload, BitWriter, encode_frame
from .errors import InvalidInput
from .freq import FrequencyTable
from .spread import range_spread
from .tables import build_decoding_table, build_encoding_table


@dataclass(frozen=True)
class PrefixCode:
    """Canonical prefix code: per-symbol length and MSB-first codeword.

    Symbols absent from the source (zero count) are not encodable; a
    single-symbol alphabet codes its one symbol at length 0, with the symbol
    count carried externally.
    """

    lengths: tuple[int, ...]
    codes: tuple[int, ...]
    encodable: tuple[bool, ...]

    def codeword_str(self, symbol: int) -> str:
        n = self.lengths[symbol]
        return format(self.codes[symbol], f"0{n}b") if n else ""

    def kraft_sum(self) -> float:
        return sum(2.0 ** -n for n in self.lengths if n > 0)


def _huffman_lengths(counts: Sequence[int]) -> list[int]:
    """Code lengths via the two-queue method over count-sorted leaves."""
    order = sorted((c, s) for s, c in enumerate(counts) if c > 0)
    leaves = [(c, ("leaf", s)) for c, s in order]
    internal: list[tuple[int, tuple]] = []
    li = ii = 0

    def pop_min():
        nonlocal li, ii
        # prefer the leaf queue on ties for a deterministic shape
        if li < len(leaves) and (ii == len(internal) or leaves[li][0] <= internal[ii][0]):
            li += 1
            return leaves[li - 1]
        ii += 1
        return internal[ii - 1]

    if len(leaves) == 1:
        return [0] * len(counts)
    while (len(leaves) - li) + (len(internal) - ii) > 1:
        a = pop_min()
        b = pop_min()
        internal.append((a[0] + b[0], ("node", a[1], b[1])))

    lengths = [0] * len(counts)
    stack = [(internal[-1][1], 0)]
    while stack:
        node, depth = stack.pop()
        if node[0] == "leaf":
            lengths[node[1]] = depth
        else:
            stack.append((node[1], depth + 1))
            stack.append((node[2], depth + 1))
    return lengths


def huffman_build(counts: Sequence[int]) -> PrefixCode:
    """Optimal code lengths for ``counts`` with canonical codeword assignment
    (shorter lengths first, ties by symbol index)."""
    counts = [int(c) for c in counts]
    if not counts or all(c == 0 for c in counts):
        raise InvalidInput("need at least one positive count")
    if any(c < 0 for c in counts):
        raise InvalidInput("counts must be nonnegative")
    lengths = _huffman_lengths(counts)
    codes = [0] * len(counts)
    code = 0
    prev_len = 0
    for s in sorted((s for s, c in enumerate(counts) if c > 0), key=lambda s: (lengths[s], s)):
        if lengths[s] == 0:
            continue
        code <<= lengths[s] - prev_len
        codes[s] = code
        prev_len = lengths[s]
        code += 1
    return PrefixCode(tuple(lengths), tuple(codes), tuple(c > 0 for c in counts))


def prefix_encode(symbols: Sequence[int], code: PrefixCode) -> BitPayload:
    """Concatenate codewords, most-significant bit first."""
    writer = BitWriter()
    for s in symbols:
        if not 0 <= s < len(code.lengths) or not code.encodable[s]:
            raise InvalidInput(f"symbol {s} has no codeword")
        writer.write_group(code.codes[s], code.lengths[s])
    return writer.payload()


def prefix_decode(payload: BitPayload, code: PrefixCode, count: int) -> list[int]:
    """Decode ``count`` symbols; needs the count because codes may be empty."""
    lookup = {
        (code.lengths[s], code.codes[s]): s
        for s in range(len(code.lengths))
        if code.lengths[s] > 0
    }
    if not lookup:
        present = [s for s, e in enumerate(code.encodable) if e]
        if len(present) != 1:
            raise InvalidInput("ambiguous all-zero-length code")
        return [present[0]] * count
    bits = payload.bits()
    out = []
    pos = 0
    for _ in range(count):
        acc = 0
        n = 0
        while (n, acc) not in lookup:
            if pos >= len(bits):
                raise InvalidInput("bit stream exhausted mid-codeword")
            acc = (acc << 1) | bits[pos]
            pos += 1
            n += 1
        out.append(lookup[(n, acc)])
    return out


def range_induced_code(freq: FrequencyTable) -> PrefixCode:
    """The prefix code implied by a contiguous range layout of power-of-two
    slot counts: symbol ``s`` gets the top bits of its slot block."""
    R = freq.radix_log
    lengths = []
    codes = []
    lo = 0
    for slots in freq.freqs:
        if slots & (slots - 1):
            raise InvalidInput("slot counts must all be powers of two")
        n = R - (slots.bit_length() - 1)
        if lo % slots:
            raise InvalidInput("range layout is not bit-aligned")
        lengths.append(n)
        codes.append(lo >> (R - n) if n else 0)
        lo += slots
    return PrefixCode(tuple(lengths), tuple(codes), (True,) * len(lengths))


def degenerate_equivalence_check(freq: FrequencyTable, message: Sequence[int]) -> bool:
    """True when the range-layout coder for ``freq`` behaves as a prefix coder.

    Checks, for power-of-two slot counts: per-symbol emitted bit counts are
    constant and equal the Huffman code lengths; every decode-table entry
    selects the symbol whose induced codeword prefixes the slot's bit pattern
    (MSB-first) and refills by a pure shift; and encoding ``message`` yields
    exactly the concatenated codewords once the final state's slot bits are
    prepended (the tail is the starting state's slot bits).
    """
    if any(f & (f - 1) for f in freq.freqs):
        raise InvalidInput("slot counts must all be powers of two")
    R = freq.radix_log
    L = 1 << R
    spr = range_spread(freq)
    dec = build_decoding_table(spr, freq)
    enc = build_encoding_table(spr, freq)
    induced = range_induced_code(freq)
    huff = huffman_build(freq.freqs)

    if huff.lengths != induced.lengths:
        return False
    for s in range(freq.num_symbols):
        n = induced.lengths[s]
        if any(enc.step_bits(x, s) != n for x in range(L, 2 * L)):
            return False
    for slot in range(L):
        s = dec.symbols[slot]
        n = induced.lengths[s]
        if slot >> (R - n) != induced.codes[s]:
            return False
        if dec.new_x[slot] != (slot << dec.nb_bits[slot]) & (L - 1):
            return False

    x0 = L
    payload, final_state = encode_frame(list(message), enc, x0)
    stream_bits = _msb_bits(final_state - L, R) + payload.bits()
    expected = []
    for s in message:
        expected.extend(_msb_bits(induced.codes[s], induced.lengths[s]))
    expected.extend(_msb_bits(x0 - L, R))
    return stream_bits == expected


def _msb_bits(value: int, nbits: int) -> list[int]:
    return [(value >> (nbits - 1 - i)) & 1 for i in range(nbits)]
