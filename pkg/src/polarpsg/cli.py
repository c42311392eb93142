"""Command-line entry point: ``polarpsg <command> [options]``.

Bit vectors are written as hex with bit 0 in the most significant position
of the first digit, zero-padded on the right to a whole number of digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

import numpy as np

from .fast_ssc import Caps, build_schedule, fast_ssc_decode
from .hardware import DelayModel, comparison_table, mux_network_report, shifter_report
from .polar_core import CodeConfig, construct_frozen, encode, load_frozen_file, polar_transform
from .psg_model import PsgChecker, bits_to_hex, hex_to_bits
from .sc_reference import sc_decode
from .sim_harness import (
    PUBLISHED_N1024, ChannelParams, format_latency_table, frame_rng, bpsk_awgn, latency_table,
    sweep, write_rows,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

HEX_NOTE = "Hex vectors put bit 0 in the MSB of the first digit, right-padded with zeros."


class UsageError(Exception):
    pass


def _code_options(p):
    p.add_argument("--n", type=int, help="block length (power of two)")
    p.add_argument("--k", type=int, help="information length")
    p.add_argument("--frozen-file", help="frozen set file: 'n k' then n-k ascending indices")
    p.add_argument("--design-param", type=float, default=0.5,
                   help="BEC erasure probability for the Bhattacharyya construction (default 0.5)")


def _cap_options(p):
    p.add_argument("--max-spc", type=int, default=None, help="largest SPC block (1 disables SPC)")
    p.add_argument("--max-rep", type=int, default=None, help="largest REP block (1 disables REP)")


def _caps(args) -> Caps:
    return Caps(max_spc=args.max_spc, max_rep=args.max_rep,
                max_block=1 if getattr(args, "blocks_of_one", False) else None)


def _code(args) -> CodeConfig:
    if args.frozen_file:
        if args.k is not None:
            raise UsageError("give either --frozen-file or --k, not both")
        cfg = load_frozen_file(args.frozen_file)
        if args.n is not None and args.n != cfg.n:
            raise UsageError(f"--n {args.n} disagrees with frozen file (n={cfg.n})")
        return cfg
    if args.n is None or args.k is None:
        raise UsageError("need --frozen-file or both --n and --k")
    return construct_frozen(args.n, args.k, args.design_param)


def _read_text(path):
    with open(path) as fh:
        return fh.read()


def _read_llrs(path, n):
    rows = [line.split() for line in _read_text(path).splitlines() if line.strip()]
    try:
        llr = np.array([[float(v) for v in row] for row in rows])
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if llr.ndim != 2 or llr.shape[1] != n:
        raise UsageError(f"{path}: every line must hold {n} LLRs")
    return llr


@contextmanager
def _output(path):
    if path:
        with open(path, "w") as fh:
            yield fh
    else:
        yield sys.stdout


def cmd_encode(args) -> int:
    cfg = _code(args)
    text = args.u if args.u is not None else _read_text(args.u_file)
    u = hex_to_bits(text, cfg.n)
    x = encode(cfg, u)
    print(bits_to_hex(x))
    return EXIT_OK


def cmd_decode(args) -> int:
    cfg = _code(args)
    llr = _read_llrs(args.llr_file, cfg.n)
    with _output(args.out) as out:
        if args.decoder == "sc":
            res, latency = sc_decode(cfg, llr), 2 * cfg.n - 2
        else:
            res, latency = fast_ssc_decode(cfg, llr, _caps(args))
        for u_hat, x_hat in zip(res.u_hat, res.x_hat):
            out.write(f"{bits_to_hex(u_hat)} {bits_to_hex(x_hat)} {latency}\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = _code(args)
    rows = sweep(cfg, args.decoder, args.ebn0, seed=args.seed, min_frames=args.frames,
                 min_errors=args.min_errors, max_frames=args.max_frames, caps=_caps(args),
                 workers=args.workers)
    with _output(args.out) as out:
        write_rows(rows, out, args.format)
    return EXIT_OK


def _trace_frame(args, cfg):
    if args.u is not None:
        u = hex_to_bits(args.u, cfg.n)
        return (1.0 - 2.0 * encode(cfg, u)) * 10.0
    if args.llr_file:
        return _read_llrs(args.llr_file, cfg.n)[0]
    rng = frame_rng(args.seed, 0)
    u = np.zeros(cfg.n, dtype=np.uint8)
    u[cfg.info_indices] = rng.integers(0, 2, size=cfg.k, dtype=np.uint8)
    p = ChannelParams(args.ebn0, cfg.rate if cfg.k else 1.0, args.seed)
    return bpsk_awgn(polar_transform(u), p, rng)


def _parse_fault(text):
    if text is None:
        return None
    try:
        commit, reg = (int(v) for v in text.split(":"))
    except ValueError as exc:
        raise UsageError("--inject-fault expects COMMIT:REGISTER") from exc
    return commit, reg


def cmd_psg_trace(args) -> int:
    cfg = _code(args)
    fault = _parse_fault(args.inject_fault)
    if fault is not None and not 0 <= fault[1] < cfg.n // 2:
        raise UsageError(f"register index must lie in [0, {cfg.n // 2})")
    llr = _trace_frame(args, cfg)
    checker = PsgChecker(cfg, bitwise=args.blocks_of_one, fault=fault)
    schedule = build_schedule(cfg, _caps(args))
    fast_ssc_decode(cfg, llr, listener=checker, schedule=schedule)
    with _output(args.out) as out:
        for rec in checker.trace:
            if args.format == "jsonl":
                out.write(json.dumps(rec.as_dict()) + "\n")
            else:
                out.write(f"{rec.commit},{rec.n_c},{rec.i},{rec.beta_c},{rec.regs}\n")
        verdict = "OK" if checker.ok else "FAIL"
        out.write(f"{verdict} reads={checker.reads} mismatches={len(checker.mismatches)}\n")
    return EXIT_OK if checker.ok else EXIT_VERIFY


def cmd_report(args) -> int:
    d = DelayModel(args.d_mux, args.d_and, args.d_xor)
    rows = comparison_table(args.n, d)
    mux = mux_network_report(args.n)
    sh = shifter_report(args.n)
    cols = ("design", "critical_path", "dff", "mux", "xor", "and", "rom_bits")
    lines = [f"n = {args.n}, delays: mux={d.d_mux:g} and={d.d_and:g} xor={d.d_xor:g}",
             " ".join(f"{c:>13}" for c in cols)]
    for row in rows:
        lines.append(" ".join(f"{'-' if row[c] is None else row[c]!s:>13}" for c in cols))
    lines.append("")
    lines.append(f"mux network: {mux.mux_count} MUX ({mux.registers} registers x "
                 f"{mux.muxes_per_register}), select width {mux.select_width}")
    lines.append(f"shifter: {sh.mux_count} MUX, {sh.decoder_k}-to-{1 << sh.decoder_k} select decoder")
    lines.append(f"mux total: {mux.mux_count + sh.mux_count}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_latency_table(args) -> int:
    rows = latency_table(args.n, args.rate, _caps(args), args.design_param)
    with _output(args.out) as out:
        if args.format == "text":
            out.write(format_latency_table(rows, args.n) + "\n")
        else:
            write_rows(rows, out, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarpsg", description=__doc__.splitlines()[0],
                                     epilog=HEX_NOTE)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a message", epilog=HEX_NOTE)
    _code_options(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--u", help="full length-n message as hex")
    src.add_argument("--u-file", help="file holding the message hex")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode LLR frames (one per line)", epilog=HEX_NOTE)
    _code_options(p)
    _cap_options(p)
    p.add_argument("--llr-file", required=True)
    p.add_argument("--decoder", choices=("sc", "fast-ssc"), default="fast-ssc")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo BER/FER sweep")
    _code_options(p)
    _cap_options(p)
    p.add_argument("--decoder", choices=("sc", "fast-ssc", "uncoded"), default="fast-ssc")
    p.add_argument("--ebn0", type=float, nargs="+", required=True, help="Eb/N0 points in dB")
    p.add_argument("--frames", type=int, default=1000, help="minimum frames per point")
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--max-frames", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("psg-trace", help="trace the partial-sum generator over one frame",
                       epilog=HEX_NOTE)
    _code_options(p)
    _cap_options(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--u", help="noiseless frame from this message (hex)")
    src.add_argument("--llr-file", help="first line of this file is the frame")
    p.add_argument("--ebn0", type=float, default=3.0, help="noisy random frame (default source)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--blocks-of-one", action="store_true",
                   help="bit-by-bit decoding with the conventional shift-register rule")
    p.add_argument("--inject-fault", metavar="COMMIT:REG",
                   help="flip register REG right after commit COMMIT")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_psg_trace)

    p = sub.add_parser("report", help="critical path and resource comparison")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d-mux", type=float, default=1.0)
    p.add_argument("--d-and", type=float, default=1.0)
    p.add_argument("--d-xor", type=float, default=1.0)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("latency-table", help="fast-SSC latency vs 2n-2 baseline across rates")
    p.add_argument("--n", type=int, default=1024)
    p.add_argument("--rate", type=float, nargs="+", default=list(PUBLISHED_N1024["rates"]))
    p.add_argument("--design-param", type=float, default=0.5)
    _cap_options(p)
    p.add_argument("--format", choices=("text", "csv", "jsonl"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_latency_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError) as exc:
        print(f"polarpsg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"polarpsg {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
