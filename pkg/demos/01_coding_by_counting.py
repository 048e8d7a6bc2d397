"""Coding a symbol sequence into one natural number.

The coder redefines which naturals are "even" and which are "odd": a spread
assigns a symbol to every natural, and encoding symbol s from state x jumps
to the x-th appearance of s.  Skewing the spread toward a frequent symbol
makes the state grow more slowly, which is the whole compression effect.
"""

from anse import PeriodicSpread, bignum_encode, decode_sequence

MESSAGE = [0, 1, 1, 1, 1]

for name, period in [("balanced 01", [0, 1]), ("skewed 0111", [0, 1, 1, 1])]:
    spread = PeriodicSpread(period)
    x = 1
    chain = [x]
    for s in MESSAGE:
        x = bignum_encode(s, x, spread)
        chain.append(x)
    print(f"{name}: state chain {' -> '.join(map(str, chain))}")
    symbols, x0 = decode_sequence(x, len(MESSAGE), spread)
    print(f"  decoding {chain[-1]} recovers {symbols} and start state {x0}")

print()
print("the skewed spread stores the same five symbols in a smaller number:")
print("fewer bits, because the message is mostly made of the frequent symbol")
