"""Arbitrary-precision coding of a symbol sequence into one natural number.

The state is a single unbounded integer.  Encoding symbol ``s`` from state
``x`` moves to the position of the ``x``-th appearance of ``s`` in an infinite
symbol assignment; decoding reads the symbol at the current position and the
appearance index, recovering the previous state.  The infinite assignment is
the periodic tiling of one finite spread, so this coder and the tabled coder
share a single spread definition.

This module favors clarity over speed: it serves as a ground-truth oracle for
the streaming codec.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Iterable, Sequence

from .errors import InvalidInput
from .spread import SymbolSpread


class PeriodicSpread:
    """Infinite symbol assignment obtained by tiling one spread period."""

    def __init__(self, symbols: SymbolSpread | Sequence[int]):
        if isinstance(symbols, SymbolSpread):
            symbols = symbols.symbols
        self.symbols = tuple(int(s) for s in symbols)
        if not self.symbols:
            raise InvalidInput("spread period must not be empty")
        self.period = len(self.symbols)
        positions: dict[int, list[int]] = {}
        for i, s in enumerate(self.symbols):
            positions.setdefault(s, []).append(i)
        # Insertion order is ascending, so per-symbol position lists are sorted.
        self.positions = {s: tuple(p) for s, p in positions.items()}
        self.counts = {s: len(p) for s, p in positions.items()}

    def symbol_at(self, x: int) -> int:
        """Symbol assigned to natural number ``x``."""
        return self.symbols[x % self.period]


def bignum_encode(symbol: int, x: int, spread: PeriodicSpread) -> int:
    """Return the position of the ``x``-th appearance (0-based) of ``symbol``."""
    if x < 0:
        raise InvalidInput("appearance index must be nonnegative")
    if symbol not in spread.positions:
        raise InvalidInput(f"symbol {symbol} does not occur in the spread")
    per_period = spread.counts[symbol]
    whole, rank = divmod(x, per_period)
    return spread.period * whole + spread.positions[symbol][rank]


def bignum_decode(x: int, spread: PeriodicSpread) -> tuple[int, int]:
    """Inverse of :func:`bignum_encode`: symbol at ``x`` and its appearance index."""
    if x < 0:
        raise InvalidInput("position must be nonnegative")
    offset = x % spread.period
    symbol = spread.symbols[offset]
    rank = bisect_left(spread.positions[symbol], offset)
    return symbol, spread.counts[symbol] * (x // spread.period) + rank


def encode_sequence(symbols: Iterable[int], x0: int, spread: PeriodicSpread) -> int:
    """Fold a symbol sequence (in order) into one integer, starting from ``x0 >= 1``."""
    if x0 < 1:
        raise InvalidInput("initial state must be >= 1")
    x = x0
    for s in symbols:
        x = bignum_encode(s, x, spread)
    return x


def decode_sequence(
    x: int, count: int, spread: PeriodicSpread
) -> tuple[list[int], int]:
    """Peel ``count`` symbols off ``x``; returns them in original order plus the
    remaining state (the encoder's starting value)."""
    out = []
    for _ in range(count):
        s, x = bignum_decode(x, spread)
        out.append(s)
    out.reverse()
    return out, x
