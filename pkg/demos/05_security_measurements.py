"""Quick pass over the security measurements: key space, balance, avalanche.

Uses small trial counts to stay fast; the test suite runs the full-size
versions with pinned tolerances.
"""

import numpy as np

from anse import compress_encrypt, extract_payloads
from anse import analysis

key = bytes(range(32))
salt = b"demosalt"

print("key-space sizes at the default parameters (log10):")
print(f"  worst-case spreads:      {analysis.ddp_spread_count_log10(2048, 256):8.2f}")
print(f"  rotation patterns:       {analysis.perturbation_count_log10(2048, 8):8.2f}")
print(f"  rotation-immune blocks:  {analysis.ddp_unchanged_fraction(2048, 256, 8):8.3f}")
print(f"  effective rotations:     {analysis.ddp_perturbation_count_log10(2048, 256, 8):8.2f}")

rng = np.random.default_rng(3)
p = 1.0 / np.arange(1, 17)
p /= p.sum()
data = bytes(rng.choice(16, size=150_000, p=p).astype(np.uint8))

bits = analysis.concat_bits(extract_payloads(compress_encrypt(data, key, salt=salt)))
print(f"\nbit balance over {bits.size} payload bits: Pr(0) = {analysis.bit_balance(bits):.4f}")
print(f"largest byte-pattern deviation from 1/256: {analysis.pattern_balance(bits, 8):.5f}")

result = analysis.avalanche_test(key, data[:40_000], trials=15, salt=salt, seed=0)
print(f"\navalanche over 15 single-bit key flips: mean difference {result.mean_fraction:.4f}")
print("(0.5 means each flipped key rewrites half of the ciphertext bits)")
