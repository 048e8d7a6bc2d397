"""Container format: framing, headers, and the end-to-end byte pipeline.

Layout (all multi-byte integers little-endian):

    container header: magic "ANSE" | version u8 | flags u8 | radix_log u8 |
                      alphabet_size u16 | salt 8B | frame_count u64
    per frame:        frame_index u64 | symbol_count u32 | n_rand u8 |
                      masked_final_state u16 | payload_bit_length u32 |
                      freqs u16 * alphabet_size | payload bytes

Flags: bit 0 = encrypted, bit 1 = whitened.  Frames are independently keyed
and independently decodable given the container header.  Per frame the
keystream is consumed in a fixed order -- spread shifts, state mask,
whitening masks, then encoder-only draws (initial state, pad symbols) -- so
a decoder never has to replay draws it does not need.

There is no authentication tag: decoding with the wrong key yields garbage
bytes, not an error.
"""

from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .codec import BitPayload, decode_frame, encode_frame
from .crypto import (
    KeyMaterial,
    Keystream,
    apply_whitening,
    draw_initial_state,
    draw_prefix_symbols,
    fresh_salt,
    keyed_spread_from_stream,
    state_mask_bits,
    whitening_masks,
)
from .errors import CorruptContainer, FormatError, InvalidInput, TruncatedStream
from .freq import FrequencyTable, quantize_frequencies
from .spread import fast_spread
from .tables import build_decoding_table, build_encoding_table

MAGIC = b"ANSE"
VERSION = 1
FLAG_ENCRYPTED = 0x01
FLAG_WHITENED = 0x02

DEFAULT_RADIX_LOG = 11
DEFAULT_BLOCK_SIZE = 8
DEFAULT_FRAME_SIZE = 10240
DEFAULT_N_RAND = 4
DEFAULT_ALPHABET = 256
WHITENING_MASK_COUNT = 16

_HEADER = struct.Struct("<4sBBBH8sQ")
_FRAME_FIXED = struct.Struct("<QIBHI")


@dataclass(frozen=True)
class ContainerHeader:
    version: int
    flags: int
    radix_log: int
    alphabet_size: int
    salt: bytes
    frame_count: int

    @property
    def encrypted(self) -> bool:
        return bool(self.flags & FLAG_ENCRYPTED)

    @property
    def whitened(self) -> bool:
        return bool(self.flags & FLAG_WHITENED)

    def encode(self) -> bytes:
        return _HEADER.pack(
            MAGIC,
            self.version,
            self.flags,
            self.radix_log,
            self.alphabet_size,
            self.salt,
            self.frame_count,
        )


@dataclass(frozen=True)
class Frame:
    frame_index: int
    symbol_count: int
    n_rand: int
    masked_final_state: int
    payload: BitPayload
    freqs: tuple[int, ...]

    def encode(self) -> bytes:
        head = _FRAME_FIXED.pack(
            self.frame_index,
            self.symbol_count,
            self.n_rand,
            self.masked_final_state,
            self.payload.bit_length,
        )
        freq_bytes = struct.pack(f"<{len(self.freqs)}H", *self.freqs)
        return head + freq_bytes + self.payload.data


def write_container(header: ContainerHeader, frames: list[Frame]) -> bytes:
    if header.frame_count != len(frames):
        raise InvalidInput("frame count does not match header")
    return header.encode() + b"".join(f.encode() for f in frames)


def read_container(data: bytes) -> tuple[ContainerHeader, list[Frame]]:
    """Parse and validate; raises on bad magic/version, truncation, or broken
    invariants."""
    if len(data) < _HEADER.size:
        raise TruncatedStream("container shorter than its header")
    magic, version, flags, radix_log, m, salt, frame_count = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    if not 1 <= radix_log <= 15:
        raise CorruptContainer(f"radix_log {radix_log} outside 1..15")
    if not 1 <= m <= (1 << radix_log):
        raise CorruptContainer(f"alphabet size {m} outside 1..2^radix_log")
    if flags & FLAG_WHITENED and not flags & FLAG_ENCRYPTED:
        raise CorruptContainer("whitening flag set on an unencrypted container")
    header = ContainerHeader(version, flags, radix_log, m, salt, frame_count)

    frames = []
    pos = _HEADER.size
    for _ in range(frame_count):
        if pos + _FRAME_FIXED.size + 2 * m > len(data):
            raise TruncatedStream("frame header truncated")
        index, count, n_rand, masked, bit_length = _FRAME_FIXED.unpack_from(data, pos)
        pos += _FRAME_FIXED.size
        freqs = struct.unpack_from(f"<{m}H", data, pos)
        pos += 2 * m
        if sum(freqs) != 1 << radix_log:
            raise CorruptContainer("frame frequencies do not sum to the table size")
        if masked >= 1 << radix_log:
            raise CorruptContainer("masked state does not fit the state range")
        nbytes = (bit_length + 7) // 8
        if pos + nbytes > len(data):
            raise TruncatedStream("frame payload truncated")
        payload = BitPayload(data[pos : pos + nbytes], bit_length)
        pos += nbytes
        frames.append(Frame(index, count, n_rand, masked, payload, freqs))
    if pos != len(data):
        raise CorruptContainer(f"{len(data) - pos} trailing bytes after last frame")
    return header, frames


def _encode_one_frame(
    chunk: bytes,
    index: int,
    key: bytes | None,
    salt: bytes,
    radix_log: int,
    block_size: int,
    n_rand: int,
    whitening: bool,
    alphabet_size: int,
) -> Frame:
    counts = [0] * alphabet_size
    for b in chunk:
        counts[b] += 1
    freq = quantize_frequencies(counts, radix_log)
    L = 1 << radix_log

    if key is not None:
        stream = Keystream.from_material(KeyMaterial(key, salt, index))
        spr = keyed_spread_from_stream(freq, stream, block_size)
        mask = state_mask_bits(stream, radix_log)
        masks = whitening_masks(stream, WHITENING_MASK_COUNT) if whitening else None
        x0 = draw_initial_state(stream, radix_log)
        symbols = draw_prefix_symbols(stream, n_rand, alphabet_size) + list(chunk)
    else:
        spr = fast_spread(freq)
        mask = 0
        masks = None
        x0 = L
        n_rand = 0
        symbols = list(chunk)

    enc = build_encoding_table(spr, freq)
    payload, final_state = encode_frame(symbols, enc, x0)
    data = payload.data if masks is None else apply_whitening(payload.data, masks)
    return Frame(
        index,
        len(chunk),
        n_rand,
        (final_state - L) ^ mask,
        BitPayload(data, payload.bit_length),
        freq.freqs,
    )


def compress_encrypt(
    plaintext: bytes,
    key: bytes | None = None,
    *,
    radix_log: int = DEFAULT_RADIX_LOG,
    block_size: int = DEFAULT_BLOCK_SIZE,
    frame_size: int = DEFAULT_FRAME_SIZE,
    n_rand: int = DEFAULT_N_RAND,
    whitening: bool = False,
    alphabet_size: int = DEFAULT_ALPHABET,
    salt: bytes | None = None,
    threads: int = 1,
) -> bytes:
    """Compress (and, when a key is given, encrypt) ``plaintext`` into a container.

    Without a key the output is a plain compressed container: deterministic
    spread, fixed starting state, no pad symbols, zero salt.  With a key every
    frame gets independent keyed tables, a keyed starting state, ``n_rand``
    keyed pad symbols and a masked final state; pass ``salt`` explicitly to
    make repeated encryptions byte-identical.
    """
    if frame_size < 1:
        raise InvalidInput("frame size must be positive")
    if not 1 <= radix_log <= 15:
        raise InvalidInput(f"radix_log {radix_log} outside 1..15")
    if not 1 <= alphabet_size <= 1 << radix_log:
        raise InvalidInput("alphabet does not fit the state table")
    if not 0 <= n_rand <= 255:
        raise InvalidInput("pad length must fit in one byte")
    if plaintext and max(plaintext) >= alphabet_size:
        raise InvalidInput("plaintext contains bytes outside the declared alphabet")
    if whitening and key is None:
        raise InvalidInput("whitening requires a key")
    if key is None:
        salt = bytes(8)
        flags = 0
    else:
        if salt is None:
            salt = fresh_salt()
        flags = FLAG_ENCRYPTED | (FLAG_WHITENED if whitening else 0)

    chunks = [plaintext[i : i + frame_size] for i in range(0, len(plaintext), frame_size)]

    def job(args):
        i, chunk = args
        return _encode_one_frame(
            chunk, i, key, salt, radix_log, block_size, n_rand, whitening, alphabet_size
        )

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            frames = list(pool.map(job, enumerate(chunks)))
    else:
        frames = [job(item) for item in enumerate(chunks)]

    header = ContainerHeader(
        VERSION, flags, radix_log, alphabet_size, salt, len(frames)
    )
    return write_container(header, frames)


def decode_single_frame(
    header: ContainerHeader,
    frame: Frame,
    key: bytes | None,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> bytes:
    """Decode one frame given the container header it was written under.

    The container layout does not record the perturbation block size, so a
    non-default ``block_size`` must be supplied by the caller exactly as used
    when compressing; a mismatch behaves like a wrong key.
    """
    radix_log = header.radix_log
    L = 1 << radix_log
    freq = FrequencyTable(radix_log, frame.freqs)
    payload = frame.payload

    if header.encrypted:
        if key is None:
            raise InvalidInput("container is encrypted; a key is required")
        stream = Keystream.from_material(KeyMaterial(key, header.salt, frame.frame_index))
        spr = keyed_spread_from_stream(freq, stream, block_size)
        mask = state_mask_bits(stream, radix_log)
        if header.whitened:
            masks = whitening_masks(stream, WHITENING_MASK_COUNT)
            payload = BitPayload(
                apply_whitening(payload.data, masks), payload.bit_length
            )
    else:
        spr = fast_spread(freq)
        mask = 0

    dec = build_decoding_table(spr, freq)
    final_state = L + (frame.masked_final_state ^ mask)
    # pad=True: with a wrong key the walk may overrun the payload; feed zeros
    # so the result is garbage rather than an error.
    symbols, _ = decode_frame(
        payload, dec, final_state, frame.symbol_count + frame.n_rand, pad=True
    )
    return bytes(symbols[frame.n_rand :])


def decrypt_decompress(
    container: bytes,
    key: bytes | None = None,
    *,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> bytes:
    """Invert :func:`compress_encrypt`; the inverse is exact under the same key
    (and the same ``block_size``, when a non-default one was used)."""
    header, frames = read_container(container)
    return b"".join(
        decode_single_frame(header, frame, key, block_size) for frame in frames
    )


def extract_payloads(container: bytes) -> list[BitPayload]:
    """Stored frame payloads (post-whitening form), for statistical analysis."""
    _, frames = read_container(container)
    return [f.payload for f in frames]
