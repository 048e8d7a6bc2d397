"""Quantitative analysis: state statistics, key-space sizes, and cipher tests.

Everything here is measurement code; results go to plain arrays so callers
can dump them to CSV or assert on them directly.  All randomized procedures
take explicit seeds and are deterministic for a given seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .codec import BitPayload, encode_frame
from .container import compress_encrypt, extract_payloads
from .errors import InvalidInput, NumericalError
from .tables import EncodingTable

LN2 = math.log(2.0)
LN10 = math.log(10.0)


# ---------------------------------------------------------------------------
# state-occupancy statistics


def transition_maps(table: EncodingTable) -> tuple[np.ndarray, np.ndarray]:
    """Per-symbol successor slots and emitted bit counts, shape ``(m, L)``.

    Row ``s`` column ``slot`` describes encoding symbol ``s`` from state
    ``L + slot``.
    """
    L = table.num_states
    m = table.num_symbols
    x = np.arange(L, 2 * L, dtype=np.int64)
    nxt_tbl = np.asarray(table.next_states, dtype=np.int64)
    successors = np.empty((m, L), dtype=np.int64)
    bit_counts = np.empty((m, L), dtype=np.int64)
    for s in range(m):
        nbits = (x + table.renorm_bias[s]) >> table.shift
        successors[s] = nxt_tbl[table.segment_offset[s] + (x >> nbits)] - L
        bit_counts[s] = nbits
    return successors, bit_counts


def stationary_distribution(
    table: EncodingTable,
    probs: Sequence[float],
    *,
    tol: float = 1e-12,
    max_iter: int = 10**6,
    mix: float = 1e-9,
) -> np.ndarray:
    """State-visit probabilities of the encoder chain under an i.i.d. source.

    Power iteration with a tiny uniform-restart mixing term (so reducible
    chains still converge), followed by a short undamped polish.  Raises
    :class:`NumericalError` if the L1 change never drops below ``tol``.
    """
    probs = np.asarray(probs, dtype=float)
    L = table.num_states
    if probs.shape != (table.num_symbols,):
        raise InvalidInput("probability vector length must match the alphabet")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-9:
        raise InvalidInput("probabilities must be nonnegative and sum to 1")

    successors, _ = transition_maps(table)
    m = table.num_symbols
    rows = successors.ravel()
    cols = np.tile(np.arange(L), m)
    data = np.repeat(probs, L)
    chain = sp.csr_matrix((data, (rows, cols)), shape=(L, L))

    rho = np.full(L, 1.0 / L)
    uniform = 1.0 / L
    for _ in range(max_iter):
        new = chain @ rho
        new = (1.0 - mix) * new + mix * uniform
        delta = np.abs(new - rho).sum()
        rho = new
        if delta < tol:
            break
    else:
        raise NumericalError(f"no convergence below {tol} in {max_iter} iterations")

    # Undamped polish removes the mixing bias when the chain allows it.
    for _ in range(256):
        new = chain @ rho
        delta = np.abs(new - rho).sum()
        rho = new
        if delta < tol / 10:
            break
    return rho / rho.sum()


def expected_rate(
    table: EncodingTable,
    probs: Sequence[float],
    rho: np.ndarray | None = None,
) -> float:
    """Mean emitted bits per symbol at stationarity."""
    probs = np.asarray(probs, dtype=float)
    if rho is None:
        rho = stationary_distribution(table, probs)
    _, bit_counts = transition_maps(table)
    return float(probs @ (bit_counts @ rho))


def simulate_state_histogram(
    table: EncodingTable, symbols: Sequence[int]
) -> np.ndarray:
    """Empirical state-visit distribution from actually encoding ``symbols``."""
    L = table.num_states
    bias = table.renorm_bias
    seg = table.segment_offset
    nxt = table.next_states
    shift = table.shift
    hist = [0] * L
    x = L
    for s in symbols:
        nbits = (x + bias[s]) >> shift
        x = nxt[seg[s] + (x >> nbits)]
        hist[x - L] += 1
    out = np.asarray(hist, dtype=float)
    return out / out.sum()


def inverse_law_fit(rho: np.ndarray) -> float:
    """Pearson correlation between state probabilities and a ``1/x`` profile.

    A flat distribution has zero variance and no linear relationship; the
    correlation is reported as 0 in that case.
    """
    rho = np.asarray(rho, dtype=float)
    L = rho.shape[0]
    inv = 1.0 / np.arange(L, 2 * L, dtype=float)
    inv /= inv.sum()
    if rho.std() == 0.0:
        return 0.0
    return float(np.corrcoef(rho, inv)[0, 1])


# ---------------------------------------------------------------------------
# key-space sizes (log domain)


def spread_count_log2(freq) -> float:
    """log2 of the number of distinct spreads: a multinomial coefficient."""
    L = freq.num_states
    total = math.lgamma(L + 1) - sum(math.lgamma(f + 1) for f in freq.freqs)
    return total / LN2


def ddp_spread_count_log10(num_states: int, num_symbols: int) -> float:
    """log10 spread count in the worst case: one dominant symbol, rest single-slot."""
    if not 1 <= num_symbols <= num_states:
        raise InvalidInput("need 1 <= symbols <= states")
    return (
        math.lgamma(num_states + 1) - math.lgamma(num_states - num_symbols + 2)
    ) / LN10


def perturbation_count_log10(num_states: int, block_size: int) -> float:
    """log10 of the number of distinct block-rotation patterns."""
    if num_states % block_size:
        raise InvalidInput("block size must divide the state count")
    return (num_states / block_size) * math.log10(block_size)


def ddp_unchanged_fraction(num_states: int, num_symbols: int, block_size: int) -> float:
    """Expected fraction of blocks holding only the dominant symbol (random
    placement model)."""
    return ((num_states - num_symbols + 1) / num_states) ** block_size


def ddp_perturbation_count_log10(
    num_states: int, num_symbols: int, block_size: int
) -> float:
    """log10 of effective rotation patterns once dominant-only blocks are
    discounted."""
    frac = ddp_unchanged_fraction(num_states, num_symbols, block_size)
    return (1.0 - frac) * perturbation_count_log10(num_states, block_size)


# ---------------------------------------------------------------------------
# bitstream statistics


def payload_bit_array(payload: BitPayload) -> np.ndarray:
    data = np.frombuffer(payload.data, dtype=np.uint8)
    return np.unpackbits(data, bitorder="little")[: payload.bit_length]


def concat_bits(payloads: Sequence[BitPayload]) -> np.ndarray:
    if not payloads:
        return np.zeros(0, dtype=np.uint8)
    return np.concatenate([payload_bit_array(p) for p in payloads])


def bit_balance(payload: BitPayload | np.ndarray) -> float:
    """Empirical probability of a zero bit."""
    bits = payload if isinstance(payload, np.ndarray) else payload_bit_array(payload)
    if bits.size == 0:
        raise InvalidInput("empty bit stream")
    return 1.0 - float(bits.mean())


def pattern_frequencies(payload: BitPayload | np.ndarray, k: int) -> np.ndarray:
    """Frequencies of the ``2**k`` patterns over non-overlapping ``k``-bit
    windows (first window bit is the pattern's least significant bit)."""
    bits = payload if isinstance(payload, np.ndarray) else payload_bit_array(payload)
    n = bits.size // k
    if n == 0:
        raise InvalidInput("stream shorter than one window")
    windows = bits[: n * k].reshape(n, k).astype(np.int64)
    values = windows @ (1 << np.arange(k, dtype=np.int64))
    return np.bincount(values, minlength=1 << k) / n


def pattern_balance(payload: BitPayload | np.ndarray, k: int) -> float:
    """Largest deviation of any ``k``-bit pattern frequency from ``2**-k``."""
    return float(np.abs(pattern_frequencies(payload, k) - 2.0**-k).max())


# ---------------------------------------------------------------------------
# avalanche / completeness


@dataclass(frozen=True)
class AvalancheResult:
    fractions: np.ndarray

    @property
    def mean_fraction(self) -> float:
        return float(self.fractions.mean())


def _container_bits(plaintext: bytes, key: bytes, salt: bytes, options: dict) -> np.ndarray:
    blob = compress_encrypt(plaintext, key, salt=salt, **options)
    return concat_bits(extract_payloads(blob))


def avalanche_test(
    key: bytes,
    plaintext: bytes,
    trials: int,
    *,
    salt: bytes = bytes(8),
    seed: int = 0,
    **options,
) -> AvalancheResult:
    """Mean ciphertext difference over single-bit key flips.

    Each trial flips one uniformly chosen key bit, re-encrypts, and compares
    equal-length payload-bit prefixes (payload lengths differ slightly across
    keys, so the common prefix is the measurement convention).
    """
    if trials < 1:
        raise InvalidInput("need at least one trial")
    rng = random.Random(seed)
    base = _container_bits(plaintext, key, salt, options)
    fractions = np.empty(trials)
    for t in range(trials):
        flipped = bytearray(key)
        pos = rng.randrange(8 * len(key))
        flipped[pos >> 3] ^= 1 << (pos & 7)
        other = _container_bits(plaintext, bytes(flipped), salt, options)
        n = min(base.size, other.size)
        fractions[t] = float(np.count_nonzero(base[:n] != other[:n])) / n
    return AvalancheResult(fractions)


@dataclass(frozen=True)
class CompletenessResult:
    """Difference profile indexed by emitted-bit offset after the change point."""

    diff_counts: np.ndarray
    sample_counts: np.ndarray
    pre_change_mismatches: int

    def profile(self) -> np.ndarray:
        with np.errstate(invalid="ignore"):
            return np.where(
                self.sample_counts > 0, self.diff_counts / self.sample_counts, np.nan
            )

    def tail_fraction(self, start_offset: int) -> float:
        d = self.diff_counts[start_offset:].sum()
        n = self.sample_counts[start_offset:].sum()
        if n == 0:
            raise InvalidInput("no samples beyond the requested offset")
        return float(d) / float(n)


def _emission_record(symbols, table: EncodingTable, x0: int):
    """Emission-order bit list plus cumulative bit count after each step."""
    bias = table.renorm_bias
    seg = table.segment_offset
    nxt = table.next_states
    shift = table.shift
    x = x0
    bits = []
    cum = []
    for s in reversed(symbols):
        nbits = (x + bias[s]) >> shift
        bits.extend((x >> i) & 1 for i in range(nbits))
        cum.append(len(bits))
        x = nxt[seg[s] + (x >> nbits)]
    return bits, cum, x


def completeness_test(
    plaintext: Sequence[int],
    trials: int,
    table: EncodingTable,
    *,
    seed: int = 0,
    window: int = 256,
) -> CompletenessResult:
    """Plaintext diffusion: change one symbol, compare emission streams.

    Both encodings start from the same state, so everything emitted before
    the change point must match bit for bit; the profile reports how the
    difference rate ramps up to one half with distance past the change.
    """
    symbols = list(plaintext)
    if not symbols:
        raise InvalidInput("plaintext must not be empty")
    m = table.num_symbols
    if m < 2:
        raise InvalidInput("need at least two symbols to change one")
    rng = random.Random(seed)
    L = table.num_states
    x0 = L
    base_bits, base_cum, _ = _emission_record(symbols, table, x0)

    diff = np.zeros(window, dtype=np.int64)
    count = np.zeros(window, dtype=np.int64)
    pre_mismatch = 0
    n = len(symbols)
    for _ in range(trials):
        pos = rng.randrange(n)
        replacement = rng.randrange(m - 1)
        if replacement >= symbols[pos]:
            replacement += 1
        mutated = list(symbols)
        mutated[pos] = replacement
        other_bits, _, _ = _emission_record(mutated, table, x0)
        # encoder walks the tail first; bits emitted for symbols after `pos`
        # are shared, and their count marks the change point
        steps_before_change = n - 1 - pos
        change = base_cum[steps_before_change - 1] if steps_before_change else 0
        if base_bits[:change] != other_bits[:change]:
            pre_mismatch += 1
        span = min(len(base_bits), len(other_bits)) - change
        span = min(span, window)
        for d in range(span):
            count[d] += 1
            if base_bits[change + d] != other_bits[change + d]:
                diff[d] += 1
    return CompletenessResult(diff, count, pre_mismatch)


# ---------------------------------------------------------------------------
# small-scale nonlinearity


def affine_nonlinearity(table: EncodingTable, msg_len: int, x0: int) -> int:
    """Distance from each final-state bit to the nearest affine function.

    Exhaustive over all ``2**msg_len`` binary messages and all affine maps of
    the message bits; only intended for small tables.  Returns the minimum
    distance across output bits (0 means some output bit is affine).
    """
    if table.num_symbols != 2:
        raise InvalidInput("exhaustive check uses a binary alphabet")
    n_inputs = 1 << msg_len
    inputs = np.array(
        [[(v >> i) & 1 for i in range(msg_len)] for v in range(n_inputs)],
        dtype=np.int8,
    )
    R = table.radix_log
    outputs = np.empty((n_inputs, R), dtype=np.int8)
    for v in range(n_inputs):
        msg = [(v >> i) & 1 for i in range(msg_len)]
        _, xf = encode_frame(msg, table, x0)
        slot = xf - table.num_states
        outputs[v] = [(slot >> b) & 1 for b in range(R)]

    masks = np.array(
        [[(mv >> i) & 1 for i in range(msg_len)] for mv in range(n_inputs)],
        dtype=np.int8,
    )
    linear = (inputs @ masks.T) & 1  # column j = linear function with mask j
    best = n_inputs
    for b in range(R):
        col = outputs[:, b][:, None]
        d = np.count_nonzero(linear != col, axis=0)
        dist = int(np.minimum(d, n_inputs - d).min())  # constant-offset twin
        best = min(best, dist)
    return best
