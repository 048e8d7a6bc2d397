"""Key handling: seed derivation, deterministic keystream, masking, whitening.

The keystream construction is normative for interoperability: the stream is
the ChaCha20 keystream under key ``SHA-256(key || salt || frame_index)`` with
``frame_index`` serialized as 8 big-endian bytes, an all-zero nonce and the
block counter starting at 0.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from hashlib import sha256
from random import Random

from cryptography.hazmat.primitives.ciphers import Cipher
from cryptography.hazmat.primitives.ciphers.algorithms import ChaCha20

from .errors import InvalidInput
from .freq import FrequencyTable
from .spread import SymbolSpread, fast_spread, perturb_spread

KEY_BYTES = 32
SALT_BYTES = 8

_ZERO_NONCE = bytes(16)
_ZERO_BLOCK = bytes(1024)


@dataclass(frozen=True)
class KeyMaterial:
    """Secret key plus the public per-container salt and per-frame index."""

    key: bytes
    salt: bytes
    frame_index: int

    def __post_init__(self):
        if len(self.key) != KEY_BYTES:
            raise InvalidInput(f"key must be {KEY_BYTES} bytes, got {len(self.key)}")
        if len(self.salt) != SALT_BYTES:
            raise InvalidInput(f"salt must be {SALT_BYTES} bytes, got {len(self.salt)}")
        if not 0 <= self.frame_index < 1 << 64:
            raise InvalidInput("frame index must fit in 64 bits")


def fresh_salt() -> bytes:
    """Random public salt from the system entropy source."""
    return secrets.token_bytes(SALT_BYTES)


def derive_seed(material: KeyMaterial) -> bytes:
    """32-byte stream seed: SHA-256 over key, salt and big-endian frame index."""
    h = sha256()
    h.update(material.key)
    h.update(material.salt)
    h.update(material.frame_index.to_bytes(8, "big"))
    return h.digest()


class Keystream:
    """Single-consumer deterministic byte stream (ChaCha20 under a derived seed)."""

    def __init__(self, seed: bytes):
        if len(seed) != 32:
            raise InvalidInput("seed must be 32 bytes")
        self._enc = Cipher(ChaCha20(seed, _ZERO_NONCE), mode=None).encryptor()
        self._buf = b""
        self._pos = 0

    @classmethod
    def from_material(cls, material: KeyMaterial) -> "Keystream":
        return cls(derive_seed(material))

    def read(self, n: int) -> bytes:
        out = bytearray()
        while n:
            if self._pos == len(self._buf):
                self._buf = self._enc.update(_ZERO_BLOCK)
                self._pos = 0
            take = min(n, len(self._buf) - self._pos)
            out += self._buf[self._pos : self._pos + take]
            self._pos += take
            n -= take
        return bytes(out)

    def read_byte(self) -> int:
        return self.read(1)[0]

    def draw_below(self, bound: int) -> int:
        """Unbiased draw from ``range(bound)`` via byte rejection, ``bound <= 256``."""
        if not 1 <= bound <= 256:
            raise InvalidInput("bound must be in 1..256")
        limit = 256 - 256 % bound
        while True:
            b = self.read_byte()
            if b < limit:
                return b % bound


def keyed_spread(
    freq: FrequencyTable, material: KeyMaterial, block_size: int = 8
) -> SymbolSpread:
    """Deterministic keyed spread: fast spread, then per-block keyed rotation."""
    return keyed_spread_from_stream(freq, Keystream.from_material(material), block_size)


def keyed_spread_from_stream(
    freq: FrequencyTable, stream: Keystream, block_size: int
) -> SymbolSpread:
    """Same as :func:`keyed_spread` but consuming an already-open stream.

    Reads exactly ``num_states // block_size`` bytes, one shift per block.
    """
    base = fast_spread(freq)
    n_blocks = freq.num_states // block_size
    if block_size < 1 or freq.num_states % block_size:
        raise InvalidInput(
            f"block size {block_size} does not divide table size {freq.num_states}"
        )
    return perturb_spread(base, block_size, stream.read(n_blocks))


def state_mask_bits(stream: Keystream, radix_log: int) -> int:
    """Next mask for an ``radix_log``-bit state: little-endian bytes, truncated."""
    nbytes = (radix_log + 7) // 8
    return int.from_bytes(stream.read(nbytes), "little") & ((1 << radix_log) - 1)


def mask_state(slot: int, stream: Keystream, radix_log: int) -> int:
    """XOR a state slot value with fresh keystream bits; self-inverse at the
    same stream offset."""
    if not 0 <= slot < 1 << radix_log:
        raise InvalidInput(f"slot {slot} does not fit in {radix_log} bits")
    return slot ^ state_mask_bits(stream, radix_log)


def random_initial_state(radix_log: int, rng: Random | None = None) -> int:
    """Uniform starting state from system entropy (or ``rng`` when supplied)."""
    L = 1 << radix_log
    value = rng.getrandbits(radix_log) if rng is not None else secrets.randbits(radix_log)
    return L + value


def prefix_pad(
    symbols: list[int], n_rand: int, alphabet_size: int, rng: Random | None = None
) -> list[int]:
    """Prepend ``n_rand`` uniform symbols; the decoder discards them by count."""
    if n_rand < 0:
        raise InvalidInput("pad length must be nonnegative")
    if rng is not None:
        pad = [rng.randrange(alphabet_size) for _ in range(n_rand)]
    else:
        pad = [secrets.randbelow(alphabet_size) for _ in range(n_rand)]
    return pad + list(symbols)


def draw_initial_state(stream: Keystream, radix_log: int) -> int:
    """Keystream-driven starting state; uniform over the working range."""
    L = 1 << radix_log
    return L + state_mask_bits(stream, radix_log)


def draw_prefix_symbols(stream: Keystream, n_rand: int, alphabet_size: int) -> list[int]:
    """Keystream-driven pad symbols, one unbiased draw per symbol."""
    return [stream.draw_below(alphabet_size) for _ in range(n_rand)]


def whitening_masks(stream: Keystream, count: int) -> list[int]:
    """Balanced 64-bit masks (exactly 32 one bits each).

    Each mask is a Fisher-Yates shuffle of 32 ones and 32 zeros driven by
    unbiased keystream draws; bit ``i`` of the mask is element ``i`` of the
    shuffled array.
    """
    if count < 1:
        raise InvalidInput("need at least one mask")
    masks = []
    for _ in range(count):
        bits = [1] * 32 + [0] * 32
        for i in range(63, 0, -1):
            j = stream.draw_below(i + 1)
            bits[i], bits[j] = bits[j], bits[i]
        mask = 0
        for i, b in enumerate(bits):
            mask |= b << i
        masks.append(mask)
    return masks


def apply_whitening(data: bytes, masks: list[int]) -> bytes:
    """XOR 64-bit little-endian words with the mask cycle; self-inverse.

    A trailing partial word uses the low-order mask bytes only.
    """
    out = bytearray(data)
    for w in range(0, len(data), 8):
        nb = min(8, len(data) - w)
        mask = masks[(w // 8) % len(masks)] & ((1 << (8 * nb)) - 1)
        chunk = int.from_bytes(out[w : w + nb], "little") ^ mask
        out[w : w + nb] = chunk.to_bytes(nb, "little")
    return bytes(out)
