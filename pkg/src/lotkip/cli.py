"""Command-line entry point.

Subcommands: seal/open byte streams through a session config, reproduce the
complexity table, evaluate the energy formulas, run network simulations, and
regenerate or validate the golden vector files.  Diagnostics go to stderr;
data goes to the output file or stdout.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from lotkip import codec, cost, netsim, vectors
from lotkip.codec import (
    CodecError,
    FrameLayout,
    ReceiverSession,
    SenderSession,
    container_to_frames,
    fragment_count,
    frames_to_container,
    parse_session_config,
)

DEFAULT_MSDU_BYTES = codec.MSDU_MAX_BYTES


def _say(*parts: object) -> None:
    print(*parts, file=sys.stderr)


def _print_resolved(command: str, settings: dict[str, object]) -> None:
    resolved = " ".join(f"{k}={v}" for k, v in settings.items())
    _say(f"lotkip {command}: {resolved}")


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(data)


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------

def cmd_table1(args: argparse.Namespace) -> int:
    _print_resolved("table1", {"csv": args.csv})
    try:
        _write_text(args.csv, cost.table1_csv())
    except OSError as exc:
        _say(f"IO error: {exc}")
        return 1
    _say(cost.TABLE1_NOTES)
    return 0


# ---------------------------------------------------------------------------
# seal / open
# ---------------------------------------------------------------------------

def _load_session(args: argparse.Namespace) -> codec.SessionConfig:
    config = parse_session_config(Path(args.config).read_text())
    if args.mode:
        config.mode = args.mode
    return config


def _split_msdus(data: bytes, msdu_bytes: int) -> list[bytes]:
    if not data:
        return [b""]
    return [data[i:i + msdu_bytes] for i in range(0, len(data), msdu_bytes)]


def cmd_seal(args: argparse.Namespace) -> int:
    try:
        config = _load_session(args)
        _print_resolved("seal", {
            "config": args.config, "in": getattr(args, "in"), "out": args.out,
            "mode": config.mode, "msdu_bytes": args.msdu_bytes,
            "frag_threshold": config.frag_threshold, "K": config.refresh_interval,
        })
        data = Path(getattr(args, "in")).read_bytes()
        sender = SenderSession(config)
        frames = []
        for msdu in _split_msdus(data, args.msdu_bytes):
            frames.extend(sender.seal(msdu))
        _write_output(args.out, frames_to_container(frames))
    except (CodecError, OSError) as exc:
        _say(f"{type(exc).__name__}: {exc}")
        return 1
    _say(f"sealed {len(frames)} frames")
    return 0


def cmd_open(args: argparse.Namespace) -> int:
    try:
        config = _load_session(args)
        _print_resolved("open", {
            "config": args.config, "in": getattr(args, "in"), "out": args.out,
            "mode": config.mode, "msdu_bytes": args.msdu_bytes,
            "frag_threshold": config.frag_threshold,
        })
        frames = container_to_frames(Path(getattr(args, "in")).read_bytes())
        receiver = ReceiverSession(config, clock=time.monotonic)
        per_full_msdu = fragment_count(args.msdu_bytes, config.frag_threshold)
        recovered = bytearray()
        pos = 0
        while pos < len(frames):
            if frames[pos].layout is FrameLayout.PROBE:
                receiver.open([frames[pos]])
                pos += 1
                continue
            take = min(per_full_msdu, len(frames) - pos)
            msdu = receiver.open(frames[pos:pos + take])
            if msdu is not None:
                recovered += msdu
            pos += take
        _write_output(args.out, bytes(recovered))
    except (CodecError, OSError) as exc:
        _say(f"{type(exc).__name__}: {exc}")
        return 1
    _say(f"recovered {len(recovered)} bytes")
    return 0


# ---------------------------------------------------------------------------
# energy
# ---------------------------------------------------------------------------

def cmd_energy(args: argparse.Namespace) -> int:
    case = cost.Case.NO_CACHE if args.case == 1 else cost.Case.CACHE
    first = not args.subsequent
    params = replace(cost.DEFAULT_ENERGY_PARAMS, cycle_energy=args.cycle_energy)
    _print_resolved("energy", {
        "m": args.m, "case": args.case, "first_packet": first,
        "cycle_energy": args.cycle_energy, "frame_bytes": args.frame_bytes,
    })
    try:
        cycles = cost.tkip_energy_cycles(args.m, case, first)
    except ValueError as exc:
        _say(f"ValueError: {exc}")
        return 1
    print(f"cycles={cycles}")
    print(f"compute_uJ={cycles * params.cycle_energy:.4f}")
    if args.frame_bytes is not None:
        print(f"tx_uJ={cost.tx_energy(args.frame_bytes, params):.4f}")
        print(f"rx_uJ={cost.rx_energy(args.frame_bytes, params):.4f}")
    return 0


# ---------------------------------------------------------------------------
# sim
# ---------------------------------------------------------------------------

def cmd_sim(args: argparse.Namespace) -> int:
    try:
        topo_cfgs, traffic = netsim.parse_scenario_config(
            Path(args.scenario).read_text())
        if args.seed is not None:
            topo_cfgs = [replace(tc, seed=args.seed) for tc in topo_cfgs]
            traffic = replace(traffic, seed=args.seed)
        if args.scheme:
            traffic = replace(traffic, scheme=args.scheme)
        if args.placement:
            placements = (("grid", "random") if args.placement == "both"
                          else (args.placement,))
            topo_cfgs = [replace(topo_cfgs[0], placement=pl) for pl in placements]
        _print_resolved("sim", {
            "scenario": args.scenario, "csv": args.csv,
            "placements": ",".join(tc.placement for tc in topo_cfgs),
            "scheme": traffic.scheme, "P": ",".join(map(str, traffic.packet_sizes)),
            "packets": traffic.packets_per_scenario,
            "scenarios": traffic.scenario_count, "K": traffic.refresh_interval,
            "ack": traffic.ack_enabled, "seed": traffic.seed,
        })
        results = [netsim.run_experiment(tc, traffic) for tc in topo_cfgs]
        _write_text(args.csv, netsim.emit_series(results))
    except (netsim.ScenarioError, ValueError, OSError) as exc:
        _say(f"{type(exc).__name__}: {exc}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def cmd_vectors(args: argparse.Namespace) -> int:
    directory = Path(args.dir)
    _print_resolved("vectors", {"dir": args.dir, "write": args.write})
    if args.write:
        try:
            written = vectors.write_dir(directory)
        except OSError as exc:
            _say(f"IO error: {exc}")
            return 1
        _say(f"wrote {', '.join(written)}")
        return 0
    problems = vectors.validate_dir(directory)
    if problems:
        for problem in problems:
            _say(f"vector mismatch: {problem}")
        return 1
    _say("all vector files match the reference implementations")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lotkip",
        description="TKIP/LOTKIP codec, cost model, and network energy simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="emit the complexity decomposition table")
    p.add_argument("--csv", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_table1)

    for name, func in (("seal", cmd_seal), ("open", cmd_open)):
        p = sub.add_parser(name, help=f"{name} a byte stream")
        p.add_argument("--config", required=True, help="session config file")
        p.add_argument("--in", required=True, help="input file")
        p.add_argument("--out", required=True, help="output file ('-' for stdout)")
        p.add_argument("--mode", choices=("tkip", "lotkip"),
                       help="override the config's mode")
        p.add_argument("--msdu-bytes", type=int, default=DEFAULT_MSDU_BYTES,
                       dest="msdu_bytes",
                       help="input chunking unit (default %(default)s)")
        p.set_defaults(func=func)

    p = sub.add_parser("energy", help="evaluate the per-packet energy formulas")
    p.add_argument("--m", type=int, required=True, help="bytes encrypted")
    p.add_argument("--case", type=int, choices=(1, 2), default=1)
    p.add_argument("--subsequent", action="store_true",
                   help="case 2 with the phase-1 cache already warm")
    p.add_argument("--cycle-energy", type=float, default=0.0198,
                   dest="cycle_energy", help="microjoules per cycle")
    p.add_argument("--frame-bytes", type=int, default=None, dest="frame_bytes",
                   help="also print radio tx/rx energy for this frame size")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("sim", help="run the network energy simulation")
    p.add_argument("--scenario", required=True, help="scenario config file")
    p.add_argument("--csv", default="-", help="output path ('-' for stdout)")
    p.add_argument("--seed", type=int, default=None, help="override the seed")
    p.add_argument("--scheme", choices=("tkip", "lotkip", "both"), default=None)
    p.add_argument("--placement", choices=("grid", "random", "both"), default=None)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("vectors", help="validate or regenerate golden vectors")
    p.add_argument("--dir", default="vectors", help="vector directory")
    p.add_argument("--write", action="store_true", help="regenerate the files")
    p.set_defaults(func=cmd_vectors)

    return parser


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
