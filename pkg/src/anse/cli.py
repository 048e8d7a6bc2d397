"""Command-line front end: compress/decompress, statistics suites, benchmarks."""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import container
from .errors import AnseError, InvalidInput

KEY_ENV = "ANSE_KEY"


def _parse_key(text: str) -> bytes:
    text = text.strip()
    try:
        key = bytes.fromhex(text)
    except ValueError:
        key = b""
    if len(key) != 32:
        raise InvalidInput("key must be exactly 64 hex characters (32 bytes)")
    return key


def _resolve_key(args) -> bytes | None:
    if getattr(args, "key", None):
        return _parse_key(args.key)
    if getattr(args, "key_file", None):
        with open(args.key_file, "r", encoding="ascii") as fh:
            return _parse_key(fh.read())
    env = os.environ.get(KEY_ENV)
    if env:
        return _parse_key(env)
    return None


def _add_key_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--key", help="64 hex chars; overrides --key-file and $" + KEY_ENV)
    p.add_argument("--key-file", help="file containing the key as hex")


def _text_like_bytes(n: int, seed: int) -> bytes:
    """Deterministic byte sample with a heavy-tailed, text-like histogram."""
    import numpy as np

    rng = np.random.default_rng(seed)
    p = 1.0 / np.arange(1, 257)
    p /= p.sum()
    return bytes(rng.choice(256, size=n, p=p).astype(np.uint8).tobytes())


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_compress(args) -> int:
    key = _resolve_key(args)
    if args.encrypt and key is None:
        print("error: --encrypt requires a key (--key, --key-file or $ANSE_KEY)", file=sys.stderr)
        return 2
    with open(args.input, "rb") as fh:
        data = fh.read()
    blob = container.compress_encrypt(
        data,
        key,
        radix_log=args.radix_log,
        block_size=args.block_size,
        frame_size=args.frame_size,
        n_rand=args.n_rand,
        whitening=args.whitening,
        salt=bytes.fromhex(args.salt) if args.salt else None,
        threads=args.threads,
    )
    with open(args.output, "wb") as fh:
        fh.write(blob)
    mode = "encrypted" if key is not None else "plain"
    print(f"{args.input}: {len(data)} -> {len(blob)} bytes ({mode})")
    return 0


def _cmd_decompress(args) -> int:
    key = _resolve_key(args)
    with open(args.input, "rb") as fh:
        blob = fh.read()
    header, _ = container.read_container(blob)
    if header.encrypted and key is None:
        print("error: container is encrypted; provide a key", file=sys.stderr)
        return 2
    data = container.decrypt_decompress(blob, key, block_size=args.block_size)
    with open(args.output, "wb") as fh:
        fh.write(data)
    print(f"{args.input}: {len(blob)} -> {len(data)} bytes")
    return 0


def _stats_key(args) -> bytes:
    key = _resolve_key(args)
    if key is not None:
        return key
    import hashlib

    return hashlib.sha256(f"anse-stats-{args.seed}".encode()).digest()


def _cmd_stats(args) -> int:
    from . import analysis

    out = args.out or f"{args.experiment}.csv"
    if args.experiment == "keyspace":
        rows = [[
            args.L,
            args.m,
            args.B,
            round(analysis.ddp_spread_count_log10(args.L, args.m), 4),
            round(analysis.perturbation_count_log10(args.L, args.B), 4),
            round(analysis.ddp_unchanged_fraction(args.L, args.m, args.B), 4),
            round(analysis.ddp_perturbation_count_log10(args.L, args.m, args.B), 4),
        ]]
        _write_csv(
            out,
            [
                "num_states",
                "alphabet",
                "block_size",
                "ddp_spread_count_log10",
                "perturbation_count_log10",
                "ddp_unchanged_fraction",
                "ddp_perturbation_count_log10",
            ],
            rows,
        )
        return 0

    key = _stats_key(args)
    salt = bytes(8)
    if args.experiment == "balance":
        data = _text_like_bytes(args.symbols, args.seed)
        blob = container.compress_encrypt(data, key, salt=salt)
        bits = analysis.concat_bits(container.extract_payloads(blob))
        freqs = analysis.pattern_frequencies(bits, 8)
        _write_csv(
            out,
            ["total_bits", "pr_zero", "max_8bit_pattern_deviation"],
            [[bits.size, analysis.bit_balance(bits), float(abs(freqs - 2**-8).max())]],
        )
        return 0
    if args.experiment == "avalanche":
        data = _text_like_bytes(args.symbols, args.seed)
        result = analysis.avalanche_test(key, data, args.trials, salt=salt, seed=args.seed)
        rows = [[t, float(f)] for t, f in enumerate(result.fractions)]
        rows.append(["mean", result.mean_fraction])
        _write_csv(out, ["trial", "difference_fraction"], rows)
        return 0
    if args.experiment == "statedist":
        from . import (
            build_encoding_table,
            keyed_spread,
            quantize_frequencies,
        )
        from .crypto import KeyMaterial

        data = _text_like_bytes(200000, args.seed)
        counts = [0] * 256
        for b in data:
            counts[b] += 1
        freq = quantize_frequencies(counts, args.radix_log)
        spr = keyed_spread(freq, KeyMaterial(key, salt, 0), args.block_size)
        enc = build_encoding_table(spr, freq)
        rho = analysis.stationary_distribution(enc, freq.probabilities())
        corr = analysis.inverse_law_fit(rho)
        L = freq.num_states
        rows = [[L + i, float(rho[i])] for i in range(L)]
        print(f"correlation against 1/x profile: {corr:.4f}")
        _write_csv(out, ["state", "probability"], rows)
        return 0
    if args.experiment == "completeness":
        from . import build_encoding_table, fast_spread, quantize_frequencies

        data = _text_like_bytes(args.symbols, args.seed)
        counts = [0] * 256
        for b in data:
            counts[b] += 1
        freq = quantize_frequencies(counts, args.radix_log)
        enc = build_encoding_table(fast_spread(freq), freq)
        result = analysis.completeness_test(data, args.trials, enc, seed=args.seed)
        prof = result.profile()
        rows = [
            [d, float(prof[d]), int(result.sample_counts[d])]
            for d in range(prof.size)
            if result.sample_counts[d] > 0
        ]
        _write_csv(out, ["bit_offset_after_change", "difference_fraction", "samples"], rows)
        return 0
    raise InvalidInput(f"unknown experiment {args.experiment}")


def _cmd_bench(args) -> int:
    from . import (
        analysis,
        build_decoding_table,
        build_encoding_table,
        decode_frame,
        encode_frame,
        fast_spread,
        huffman_build,
        prefix_encode,
        quantize_frequencies,
        shannon_entropy,
    )
    import numpy as np

    rng = np.random.default_rng(args.seed)
    sources = {
        "skewed-binary": bytes(
            rng.choice(2, size=args.size, p=[0.9, 0.1]).astype(np.uint8).tobytes()
        ),
        "text-like": _text_like_bytes(args.size, args.seed),
        "uniform": bytes(rng.integers(0, 256, size=args.size).astype(np.uint8).tobytes()),
    }
    print(f"{'source':<14} {'H':>7} {'tans':>7} {'huff':>7} {'enc MB/s':>9} {'dec MB/s':>9}")
    for name, data in sources.items():
        counts = [0] * 256
        for b in data:
            counts[b] += 1
        freq = quantize_frequencies(counts, args.radix_log)
        spr = fast_spread(freq)
        enc = build_encoding_table(spr, freq)
        dec = build_decoding_table(spr, freq)
        L = freq.num_states
        t0 = time.perf_counter()
        payload, xf = encode_frame(data, enc, L)
        t1 = time.perf_counter()
        decoded, _ = decode_frame(payload, dec, xf, len(data))
        t2 = time.perf_counter()
        assert bytes(decoded) == data
        probs = [c / len(data) for c in counts]
        H = shannon_entropy(probs)
        tans_rate = payload.bit_length / len(data)
        code = huffman_build(counts)
        huff_rate = prefix_encode(data, code).bit_length / len(data)
        mb = len(data) / 1e6
        print(
            f"{name:<14} {H:7.4f} {tans_rate:7.4f} {huff_rate:7.4f} "
            f"{mb / (t1 - t0):9.2f} {mb / (t2 - t1):9.2f}"
        )
    return 0


def _cmd_selftest(args) -> int:
    from . import (
        FrequencyTable,
        PeriodicSpread,
        SymbolSpread,
        analysis,
        bignum_encode,
        build_decoding_table,
        build_encoding_table,
        compress_encrypt,
        decode_frame,
        decrypt_decompress,
        encode_frame,
    )

    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    ps = PeriodicSpread([0, 1])
    x = 1
    for s in [0, 1, 1, 1, 1]:
        x = bignum_encode(s, x, ps)
    check("binary spread codes 01111 from 1 to 47", x == 47)

    ps = PeriodicSpread([0, 1, 1, 1])
    x = 1
    for s in [0, 1, 1, 1, 1]:
        x = bignum_encode(s, x, ps)
    check("skewed spread codes 01111 from 1 to 18", x == 18)

    freq = FrequencyTable(2, (3, 1))
    spr = SymbolSpread((0, 1, 0, 0))
    dec = build_decoding_table(spr, freq)
    check(
        "four-state decode table",
        list(zip(dec.symbols, dec.nb_bits, dec.new_x))
        == [(0, 1, 2), (1, 2, 0), (0, 0, 0), (0, 0, 1)],
    )
    enc = build_encoding_table(spr, freq)
    rho = analysis.stationary_distribution(enc, (0.75, 0.25))
    check("four-state stationary mass on top states", abs(rho[2] + rho[3] - 0.4286) < 5e-3)

    payload, xf = encode_frame([0, 1], enc, 4)
    msg, x_end = decode_frame(payload, dec, xf, 2)
    check("frame roundtrip on the four-state coder", msg == [0, 1] and x_end == 4)

    check(
        "worst-case spread count log10",
        abs(analysis.ddp_spread_count_log10(2048, 256) - 837.218) < 0.1,
    )

    key = bytes(range(32))
    data = bytes([i % 23 for i in range(4096)])
    check("container roundtrip", decrypt_decompress(compress_encrypt(data, key), key) == data)

    return 1 if failures else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anse",
        description="tANS compression with keyed coding-table encryption",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a file (encrypts when a key is given)")
    p.add_argument("input")
    p.add_argument("output")
    _add_key_args(p)
    p.add_argument("--encrypt", action="store_true", help="require encryption")
    p.add_argument("--radix-log", type=int, default=container.DEFAULT_RADIX_LOG)
    p.add_argument("--block-size", type=int, default=container.DEFAULT_BLOCK_SIZE)
    p.add_argument("--frame-size", type=int, default=container.DEFAULT_FRAME_SIZE)
    p.add_argument("--n-rand", type=int, default=container.DEFAULT_N_RAND)
    p.add_argument("--whitening", action="store_true")
    p.add_argument("--salt", help="16 hex chars; fixes the container salt")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("decompress", help="decompress a container")
    p.add_argument("input")
    p.add_argument("output")
    _add_key_args(p)
    p.add_argument("--block-size", type=int, default=container.DEFAULT_BLOCK_SIZE)
    p.set_defaults(func=_cmd_decompress)

    p = sub.add_parser("stats", help="run a statistics experiment, emit CSV")
    p.add_argument(
        "experiment",
        choices=["balance", "avalanche", "statedist", "keyspace", "completeness"],
    )
    _add_key_args(p)
    p.add_argument("--out", help="CSV output path (default <experiment>.csv)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symbols", type=int, default=100000)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--radix-log", type=int, default=container.DEFAULT_RADIX_LOG)
    p.add_argument("--block-size", type=int, default=container.DEFAULT_BLOCK_SIZE)
    p.add_argument("--L", type=int, default=2048, help="state count for keyspace")
    p.add_argument("--m", type=int, default=256, help="alphabet size for keyspace")
    p.add_argument("--B", type=int, default=8, help="block size for keyspace")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("bench", help="compare against the Huffman baseline")
    p.add_argument("--size", type=int, default=200000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radix-log", type=int, default=container.DEFAULT_RADIX_LOG)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("selftest", help="run the built-in golden vectors")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AnseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
