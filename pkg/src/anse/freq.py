"""Quantized symbol-frequency tables and entropy helpers.

A coder over ``L = 2**radix_log`` states assigns each symbol ``s`` an integer
number of state slots ``freqs[s] >= 1`` with ``sum(freqs) == L``; the coding
probability of ``s`` is then ``freqs[s] / L``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import CapacityError, InvalidInput


@dataclass(frozen=True)
class FrequencyTable:
    """Slot counts per symbol over a power-of-two state table.

    Attributes:
        radix_log: table has ``2**radix_log`` slots.
        freqs: slots per symbol; every entry >= 1, total exactly the table size.
    """

    radix_log: int
    freqs: tuple[int, ...]

    def __post_init__(self):
        if self.radix_log < 1:
            raise InvalidInput(f"radix_log must be >= 1, got {self.radix_log}")
        object.__setattr__(self, "freqs", tuple(int(f) for f in self.freqs))
        L = 1 << self.radix_log
        if not self.freqs:
            raise InvalidInput("alphabet must contain at least one symbol")
        if len(self.freqs) > L:
            raise CapacityError(
                f"{len(self.freqs)} symbols cannot fit into {L} state slots"
            )
        if any(f < 1 for f in self.freqs):
            raise InvalidInput("every symbol needs at least one slot")
        if sum(self.freqs) != L:
            raise InvalidInput(
                f"slot counts sum to {sum(self.freqs)}, expected {L}"
            )

    @property
    def num_states(self) -> int:
        return 1 << self.radix_log

    @property
    def num_symbols(self) -> int:
        return len(self.freqs)

    def probabilities(self) -> tuple[float, ...]:
        L = self.num_states
        return tuple(f / L for f in self.freqs)


def quantize_frequencies(counts: Sequence[int], radix_log: int) -> FrequencyTable:
    """Scale empirical symbol counts to slot counts summing to ``2**radix_log``.

    Largest-remainder rounding: ideal shares are floored, then the leftover
    slots go to the largest fractional remainders (ties to the lower symbol
    index).  A symbol present in the alphabet but absent from the data still
    gets one slot, taken from the most frequent symbol, so every symbol stays
    encodable.
    """
    counts = [int(c) for c in counts]
    m = len(counts)
    if m == 0:
        raise InvalidInput("alphabet must contain at least one symbol")
    if any(c < 0 for c in counts):
        raise InvalidInput("counts must be nonnegative")
    total = sum(counts)
    if total == 0:
        raise InvalidInput("at least one count must be positive")
    if radix_log < 1:
        raise InvalidInput(f"radix_log must be >= 1, got {radix_log}")
    L = 1 << radix_log
    if m > L:
        raise CapacityError(f"{m} symbols cannot fit into {L} state slots")

    slots = [c * L // total for c in counts]
    # Remainder numerators share the denominator `total`, so they order the
    # fractional parts exactly.
    remainders = [c * L % total for c in counts]
    leftover = L - sum(slots)
    order = sorted(range(m), key=lambda s: (-remainders[s], s))
    for s in order[:leftover]:
        slots[s] += 1

    for s in range(m):
        if slots[s] == 0:
            donor = max(range(m), key=lambda t: (slots[t], -t))
            assert slots[donor] >= 2
            slots[donor] -= 1
            slots[s] = 1

    return FrequencyTable(radix_log, tuple(slots))


def shannon_entropy(probs: Sequence[float]) -> float:
    """Entropy of a distribution in bits per symbol; zero entries contribute 0."""
    probs = list(probs)
    if not probs:
        raise InvalidInput("empty distribution")
    if any(p < 0 for p in probs):
        raise InvalidInput("probabilities must be nonnegative")
    if abs(sum(probs) - 1.0) > 1e-9:
        raise InvalidInput(f"probabilities sum to {sum(probs)!r}, expected 1")
    return -sum(p * math.log2(p) for p in probs if p > 0)


def redundancy_estimate(num_symbols: int, num_states: int) -> float:
    """Order-of-magnitude estimate of the coding overhead in bits per symbol.

    The overhead of a tabled coder above source entropy scales roughly like
    ``(m/L)**2`` for an ``m``-symbol alphabet over ``L`` states; this returns
    that ratio and should be read as a scale, not a bound.
    """
    if num_symbols < 1:
        raise InvalidInput("need at least one symbol")
    if num_states < num_symbols:
        raise InvalidInput("need at least as many states as symbols")
    return (num_symbols * num_symbols) / (num_states * num_states)
