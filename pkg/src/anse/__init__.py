"""anse: tabled asymmetric-numeral-system coding with keyed table encryption.

The package provides, bottom-up: quantized frequency tables, symbol spreads
(including the keyed perturbation that implements encryption), encode/decode
lookup tables, a bit-exact streaming codec, an arbitrary-precision reference
coder, keystream/crypto helpers, a framed container format, a canonical
Huffman baseline, and an analysis toolbox (``anse.analysis``).
"""

from .bignum import (
    PeriodicSpread,
    bignum_decode,
    bignum_encode,
    decode_sequence,
    encode_sequence,
)
from .codec import (
    BitPayload,
    BitReader,
    BitWriter,
    decode_frame,
    decode_step,
    encode_frame,
    encode_step,
)
from .container import (
    ContainerHeader,
    Frame,
    compress_encrypt,
    decode_single_frame,
    decrypt_decompress,
    extract_payloads,
    read_container,
    write_container,
)
from .crypto import (
    KeyMaterial,
    Keystream,
    apply_whitening,
    derive_seed,
    fresh_salt,
    keyed_spread,
    mask_state,
    prefix_pad,
    random_initial_state,
    whitening_masks,
)
from .errors import (
    AnseError,
    CapacityError,
    CorruptContainer,
    FormatError,
    InvalidInput,
    NumericalError,
    TruncatedStream,
)
from .freq import (
    FrequencyTable,
    quantize_frequencies,
    redundancy_estimate,
    shannon_entropy,
)
from .prefix import (
    PrefixCode,
    degenerate_equivalence_check,
    huffman_build,
    prefix_decode,
    prefix_encode,
    range_induced_code,
)
from .spread import SymbolSpread, fast_spread, perturb_spread, range_spread
from .tables import (
    DecodingTable,
    EncodingTable,
    build_decoding_table,
    build_encoding_table,
)

__version__ = "0.1.0"

__all__ = [
    "AnseError",
    "BitPayload",
    "BitReader",
    "BitWriter",
    "CapacityError",
    "ContainerHeader",
    "CorruptContainer",
    "DecodingTable",
    "EncodingTable",
    "FormatError",
    "Frame",
    "FrequencyTable",
    "InvalidInput",
    "KeyMaterial",
    "Keystream",
    "NumericalError",
    "PeriodicSpread",
    "PrefixCode",
    "SymbolSpread",
    "TruncatedStream",
    "apply_whitening",
    "bignum_decode",
    "bignum_encode",
    "build_decoding_table",
    "build_encoding_table",
    "compress_encrypt",
    "decode_frame",
    "decode_sequence",
    "decode_single_frame",
    "decode_step",
    "decrypt_decompress",
    "degenerate_equivalence_check",
    "derive_seed",
    "encode_frame",
    "encode_sequence",
    "encode_step",
    "extract_payloads",
    "fast_spread",
    "fresh_salt",
    "huffman_build",
    "keyed_spread",
    "mask_state",
    "perturb_spread",
    "prefix_decode",
    "prefix_encode",
    "prefix_pad",
    "quantize_frequencies",
    "random_initial_state",
    "range_induced_code",
    "range_spread",
    "read_container",
    "redundancy_estimate",
    "shannon_entropy",
    "write_container",
]
