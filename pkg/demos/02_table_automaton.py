"""The four-state automaton: tables, stream coding, and the cost of tabling.

Builds the classic 4-state coder for a 3:1 binary source, walks one message
through it, and compares the stationary bit rate against the source entropy.
"""

from anse import (
    FrequencyTable,
    SymbolSpread,
    build_decoding_table,
    build_encoding_table,
    decode_frame,
    encode_frame,
    shannon_entropy,
)
from anse import analysis

freq = FrequencyTable(2, (3, 1))  # symbol a gets 3 of 4 slots, b gets 1
spread = SymbolSpread((0, 1, 0, 0))  # slot layout "abaa"

dec = build_decoding_table(spread, freq)
print("decode table (slot -> symbol, bits to read, next slot base):")
for slot in range(4):
    print(f"  state {4 + slot}: ({'ab'[dec.symbols[slot]]}, {dec.nb_bits[slot]}, {dec.new_x[slot]})")

enc = build_encoding_table(spread, freq)
message = [0, 1, 0, 0, 0, 1, 0, 0]
payload, final_state = encode_frame(message, enc, x0=4)
print(f"\nmessage {''.join('ab'[s] for s in message)} from state 4:")
print(f"  payload bits {payload.bits()}  final state {final_state}")
decoded, x_end = decode_frame(payload, dec, final_state, len(message))
print(f"  decoded back: {''.join('ab'[s] for s in decoded)}  start state {x_end}")

probs = (0.75, 0.25)
rho = analysis.stationary_distribution(enc, probs)
rate = analysis.expected_rate(enc, probs, rho)
H = shannon_entropy(probs)
print("\nstationary state probabilities:", [round(float(r), 3) for r in rho])
print(f"bits/symbol at stationarity: {rate:.4f}  entropy: {H:.4f}  overhead: {rate - H:.4f}")
