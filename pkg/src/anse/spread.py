"""Symbol spreads: the assignment of one symbol to each coder state slot."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput
from .freq import FrequencyTable


@dataclass(frozen=True)
class SymbolSpread:
    """Length-``L`` table slot assignment; entry ``i`` is the symbol owning slot ``i``."""

    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        n = len(self.symbols)
        if n < 2 or n & (n - 1):
            raise InvalidInput(f"spread length must be a power of two >= 2, got {n}")
        if any(s < 0 for s in self.symbols):
            raise InvalidInput("symbols must be nonnegative")

    @property
    def num_states(self) -> int:
        return len(self.symbols)

    @property
    def radix_log(self) -> int:
        return self.num_states.bit_length() - 1

    def occurrence_counts(self, num_symbols: int | None = None) -> tuple[int, ...]:
        m = (max(self.symbols) + 1) if num_symbols is None else num_symbols
        counts = [0] * m
        for s in self.symbols:
            counts[s] += 1
        return tuple(counts)

    def matches(self, freq: FrequencyTable) -> bool:
        return (
            self.num_states == freq.num_states
            and max(self.symbols) < freq.num_symbols
            and self.occurrence_counts(freq.num_symbols) == freq.freqs
        )


def fast_spread(freq: FrequencyTable) -> SymbolSpread:
    """Cheap pseudorandom spread: walk the table with a fixed odd stride.

    The stride is forced odd so it is coprime to the power-of-two table size
    and the walk visits every slot exactly once.
    """
    L = freq.num_states
    step = ((5 * L) // 8 + 3) | 1
    symbols = [-1] * L
    pos = 0
    for s, slots in enumerate(freq.freqs):
        for _ in range(slots):
            symbols[pos] = s
            pos = (pos + step) % L
    return SymbolSpread(tuple(symbols))


def range_spread(freq: FrequencyTable) -> SymbolSpread:
    """Each symbol occupies one contiguous block of slots, in symbol order."""
    symbols = []
    for s, slots in enumerate(freq.freqs):
        symbols.extend([s] * slots)
    return SymbolSpread(tuple(symbols))


def perturb_spread(
    spread: SymbolSpread, block_size: int, shifts: Sequence[int]
) -> SymbolSpread:
    """Rotate each contiguous ``block_size`` chunk left by its shift value.

    ``shifts`` supplies one integer per block (used modulo ``block_size``);
    per-symbol occurrence counts are preserved, and rotating right by the same
    shifts undoes the perturbation.
    """
    L = spread.num_states
    if block_size < 1 or L % block_size:
        raise InvalidInput(
            f"block size {block_size} does not divide table size {L}"
        )
    n_blocks = L // block_size
    shifts = list(shifts)
    if len(shifts) != n_blocks:
        raise InvalidInput(f"need {n_blocks} shifts, got {len(shifts)}")
    out = []
    for i in range(n_blocks):
        block = spread.symbols[i * block_size : (i + 1) * block_size]
        k = shifts[i] % block_size
        out.extend(block[k:] + block[:k])
    return SymbolSpread(tuple(out))
