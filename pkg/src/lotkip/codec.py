"""MSDU/MPDU encapsulation for baseline TKIP and the low-overhead variant.

Seal: the 8-byte Michael tag is appended to the MSDU, the result is split
into fragments, and every fragment gets its own counter value, its own
per-packet RC4 seed, and a CRC trailer before encryption.  Open runs the
checks in a fixed order -- counter parse, replay window, key mixing,
decrypt, CRC, reassembly, and the Michael verify last -- so that noise and
replays can never feed the MIC-failure countermeasures.

Wire layouts (after the MAC header, which is not modeled):

  baseline / type A / probe   B0 B1 B2 B3  TSC2 TSC3 TSC4 TSC5  <ciphertext>
  type B                      B0 B1 B2 B3  <ciphertext>

with B0 = TSC1, B1 = (TSC1 | 0x20) & 0x7F, B2 = TSC0 (the WEP IV bytes the
RC4 seed is required to start with), and the flags byte
B3 = key_id << 6 | extiv << 5 | type_a << 4 | probe << 3; bits 0-2 are zero.
Type A frames carry the full 48-bit counter; type B frames carry only its
low 16 bits and the receiver supplies the upper bits from the last type A
frame of the epoch.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from lotkip.crypto import (
    MicHeader,
    crc32_icv,
    michael_mic,
    phase1_mix,
    phase2_mix,
    rc4_apply,
)

MSDU_MAX_BYTES = 2304
FRAG_THRESHOLD_MIN = 256
FRAG_THRESHOLD_MAX = 2346
MIC_BYTES = 8
ICV_BYTES = 4
TSC_MAX = (1 << 48) - 1
REPLAY_WINDOW_SIZE = 16
MIC_FAILURE_WINDOW_S = 60.0
BLACKOUT_S = 60.0
# For comparison: plain WEP appends 3 IV bytes + 1 key-id byte + 4 ICV bytes.
WEP_OVERHEAD_BYTES = 8
PROBE_PAYLOAD = b"\x00\x00\x00\x00"

Clock = Callable[[], float]


class CodecError(Exception):
    """Base class for encapsulation/decapsulation failures."""


class OversizeMsdu(CodecError):
    pass


class TscExhausted(CodecError):
    """Counter space used up; the session must be rekeyed before more traffic."""


class MalformedFrame(CodecError):
    pass


class ReplayRejected(CodecError):
    pass


class IcvMismatch(CodecError):
    pass


class MicFailure(CodecError):
    """Michael verify failed; recorded against the countermeasure state."""


class Blackout(CodecError):
    """Frame dropped: countermeasures have suspended traffic."""


class NoEpochState(CodecError):
    """Type B frame arrived before any type A frame of its counter epoch."""


class ProbingActive(CodecError):
    """Data transmission is stopped while the sender is probing."""


# ---------------------------------------------------------------------------
# Counter and key material
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Tsc48:
    """48-bit packet sequence counter; byte 0 is least significant."""

    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value <= TSC_MAX:
            raise ValueError("counter out of 48-bit range")

    def byte(self, k: int) -> int:
        return (self.value >> (8 * k)) & 0xFF

    @property
    def low16(self) -> int:
        return self.value & 0xFFFF

    @property
    def high32(self) -> int:
        return self.value >> 16


@dataclass(frozen=True)
class SessionKeys:
    """Per-session key material: 128-bit encryption key plus the 64-bit
    integrity key for each direction, bound to the transmitter address."""

    tk: bytes
    mic_key_tx: bytes
    mic_key_rx: bytes
    ta: bytes
    key_id: int = 0

    def __post_init__(self) -> None:
        if len(self.tk) != 16:
            raise ValueError("tk must be 16 bytes")
        if len(self.mic_key_tx) != 8 or len(self.mic_key_rx) != 8:
            raise ValueError("integrity keys must be 8 bytes")
        if len(self.ta) != 6:
            raise ValueError("ta must be 6 bytes")
        if not 0 <= self.key_id <= 3:
            raise ValueError("key_id must be in 0..3")


# ---------------------------------------------------------------------------
# Frame layout
# ---------------------------------------------------------------------------

class FrameLayout(enum.Enum):
    TKIP_BASELINE = "tkip_baseline"
    LOTKIP_TYPE_A = "lotkip_type_a"
    LOTKIP_TYPE_B = "lotkip_type_b"
    PROBE = "probe"


_EXTENDED_LAYOUTS = (FrameLayout.TKIP_BASELINE, FrameLayout.LOTKIP_TYPE_A,
                     FrameLayout.PROBE)


@dataclass
class MpduFrame:
    """One on-air fragment: parsed header fields plus the encrypted body."""

    layout: FrameLayout
    key_id: int
    tsc_low: int
    tsc_hi: Optional[int]
    body: bytes

    @property
    def tsc(self) -> Optional[Tsc48]:
        if self.tsc_hi is None:
            return None
        return Tsc48((self.tsc_hi << 16) | self.tsc_low)

    def header(self) -> bytes:
        tsc1 = self.tsc_low >> 8
        extiv = self.layout in _EXTENDED_LAYOUTS
        type_a = self.layout in (FrameLayout.LOTKIP_TYPE_A, FrameLayout.PROBE)
        probe = self.layout is FrameLayout.PROBE
        flags = (self.key_id << 6) | (extiv << 5) | (type_a << 4) | (probe << 3)
        head = bytes((tsc1, (tsc1 | 0x20) & 0x7F, self.tsc_low & 0xFF, flags))
        if extiv:
            head += self.tsc_hi.to_bytes(4, "little")
        return head

    def raw(self) -> bytes:
        return self.header() + self.body


def parse_frame(raw: bytes) -> MpduFrame:
    if len(raw) < 4:
        raise MalformedFrame("frame shorter than minimum header")
    tsc1, check, tsc0, flags = raw[0], raw[1], raw[2], raw[3]
    if check != (tsc1 | 0x20) & 0x7F:
        raise MalformedFrame("WEP IV structure byte does not match")
    if flags & 0x07:
        raise MalformedFrame("reserved flag bits set")
    key_id = flags >> 6
    extiv = bool(flags & 0x20)
    type_a = bool(flags & 0x10)
    probe = bool(flags & 0x08)
    if (probe or type_a) and not extiv:
        raise MalformedFrame("type A and probe frames must carry the full counter")
    tsc_low = (tsc1 << 8) | tsc0
    if extiv:
        if len(raw) < 8:
            raise MalformedFrame("truncated extended counter field")
        tsc_hi = int.from_bytes(raw[4:8], "little")
        body = raw[8:]
        if probe:
            layout = FrameLayout.PROBE
        elif type_a:
            layout = FrameLayout.LOTKIP_TYPE_A
        else:
            layout = FrameLayout.TKIP_BASELINE
    else:
        tsc_hi = None
        body = raw[4:]
        layout = FrameLayout.LOTKIP_TYPE_B
    return MpduFrame(layout, key_id, tsc_low, tsc_hi, body)


# ---------------------------------------------------------------------------
# Replay window
# ---------------------------------------------------------------------------

class Classification(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    WINDOW = "window"


@dataclass
class ReplayWindow:
    """Highest counter seen plus the largest 16 accepted counter values.

    Duplicates are always rejected; a counter below the smallest tracked
    value is rejected once the window is full (16 entries), since it can no
    longer belong to an in-flight burst.
    """

    recent: list[int] = field(default_factory=list)

    @property
    def highest(self) -> Optional[int]:
        return max(self.recent) if self.recent else None

    def classify(self, tsc: "int | Tsc48") -> Classification:
        value = tsc.value if isinstance(tsc, Tsc48) else tsc
        if value in self.recent:
            return Classification.REJECT
        if not self.recent or value > max(self.recent):
            self._admit(value)
            return Classification.ACCEPT
        if len(self.recent) >= REPLAY_WINDOW_SIZE and value < min(self.recent):
            return Classification.REJECT
        self._admit(value)
        return Classification.WINDOW

    def _admit(self, value: int) -> None:
        self.recent.append(value)
        if len(self.recent) > REPLAY_WINDOW_SIZE:
            self.recent.remove(min(self.recent))


def replay_classify(window: ReplayWindow, tsc: "int | Tsc48") -> Classification:
    return window.classify(tsc)


# ---------------------------------------------------------------------------
# MIC-failure countermeasures
# ---------------------------------------------------------------------------

@dataclass
class CountermeasureState:
    """Tracks Michael failures; two failures less than a minute apart
    suspend traffic for 60 seconds and demand a rekey."""

    failure_times: list[float] = field(default_factory=list)
    blackout_until: Optional[float] = None
    rekey_required: bool = False

    def in_blackout(self, now: float) -> bool:
        return self.blackout_until is not None and now < self.blackout_until

    def record_failure(self, now: float) -> bool:
        triggered = bool(self.failure_times) and \
            (now - self.failure_times[-1]) < MIC_FAILURE_WINDOW_S
        self.failure_times.append(now)
        if triggered:
            self.blackout_until = now + BLACKOUT_S
            self.rekey_required = True
        return triggered


# ---------------------------------------------------------------------------
# Seal/open building blocks
# ---------------------------------------------------------------------------

def _check_seal_args(msdu: bytes, frag_threshold: int) -> None:
    if len(msdu) > MSDU_MAX_BYTES:
        raise OversizeMsdu(f"MSDU of {len(msdu)} bytes exceeds {MSDU_MAX_BYTES}")
    if not FRAG_THRESHOLD_MIN <= frag_threshold <= FRAG_THRESHOLD_MAX:
        raise CodecError(
            f"fragmentation threshold {frag_threshold} outside "
            f"[{FRAG_THRESHOLD_MIN}, {FRAG_THRESHOLD_MAX}]")


def fragment_count(msdu_len: int, frag_threshold: int) -> int:
    """Fragments produced for an MSDU of the given length (tag included)."""
    total = msdu_len + MIC_BYTES
    return max(1, -(-total // frag_threshold))


def _chunks(stream: bytes, frag_threshold: int) -> list[bytes]:
    if len(stream) <= frag_threshold:
        return [stream]
    return [stream[i:i + frag_threshold]
            for i in range(0, len(stream), frag_threshold)]


class _TtakCache:
    """Phase 1 results per upper-counter value, with an invocation counter
    so tests can assert how often the mixing actually ran."""

    __slots__ = ("hi", "ttak", "calls")

    def __init__(self) -> None:
        self.hi: Optional[int] = None
        self.ttak = None
        self.calls = 0

    def get(self, keys: SessionKeys, hi: int):
        if self.hi != hi:
            self.ttak = phase1_mix(keys.tk, keys.ta, hi)
            self.hi = hi
            self.calls += 1
        return self.ttak


def _seal_body(keys: SessionKeys, ttak, tsc: Tsc48, chunk: bytes) -> bytes:
    seed = phase2_mix(ttak, keys.tk, tsc.low16)
    return rc4_apply(seed, chunk + crc32_icv(chunk))


def _open_body(keys: SessionKeys, ttak, tsc: Tsc48, body: bytes) -> bytes:
    seed = phase2_mix(ttak, keys.tk, tsc.low16)
    plain = rc4_apply(seed, body)
    if len(plain) < ICV_BYTES:
        raise IcvMismatch("fragment too short to carry a check value")
    chunk, icv = plain[:-ICV_BYTES], plain[-ICV_BYTES:]
    if crc32_icv(chunk) != icv:
        raise IcvMismatch("fragment check value mismatch")
    return chunk


def _as_frame_list(frames: "MpduFrame | Iterable[MpduFrame]") -> list[MpduFrame]:
    if isinstance(frames, MpduFrame):
        return [frames]
    out = list(frames)
    if not out:
        raise MalformedFrame("no frames supplied")
    return out


def _verify_mic(keys: SessionKeys, stream: bytes, sa: bytes, da: bytes,
                priority: int, iv: Optional[int],
                cm_state: Optional[CountermeasureState], now: float) -> bytes:
    if len(stream) < MIC_BYTES:
        if cm_state is not None:
            cm_state.record_failure(now)
        raise MicFailure("reassembled stream shorter than the tag")
    msdu, tag = stream[:-MIC_BYTES], stream[-MIC_BYTES:]
    expect = michael_mic(keys.mic_key_rx, MicHeader(sa, da, priority, iv), msdu)
    if tag != expect:
        if cm_state is not None:
            cm_state.record_failure(now)
        raise MicFailure("Michael tag mismatch")
    return msdu


# ---------------------------------------------------------------------------
# Baseline TKIP
# ---------------------------------------------------------------------------

def tkip_seal(keys: SessionKeys, tsc_start: int, sa: bytes, da: bytes,
              priority: int, msdu: bytes, frag_threshold: int) -> list[MpduFrame]:
    """Encapsulate one MSDU into baseline frames, counters from tsc_start."""
    _check_seal_args(msdu, frag_threshold)
    if tsc_start + fragment_count(len(msdu), frag_threshold) - 1 > TSC_MAX:
        raise TscExhausted("counter would overflow; rekey required")
    mic = michael_mic(keys.mic_key_tx, MicHeader(sa, da, priority), msdu)
    chunks = _chunks(msdu + mic, frag_threshold)
    cache = _TtakCache()
    frames = []
    for offset, chunk in enumerate(chunks):
        tsc = Tsc48(tsc_start + offset)
        ttak = cache.get(keys, tsc.high32)
        frames.append(MpduFrame(FrameLayout.TKIP_BASELINE, keys.key_id,
                                tsc.low16, tsc.high32,
                                _seal_body(keys, ttak, tsc, chunk)))
    return frames


def tkip_open(keys: SessionKeys, frames: "MpduFrame | Iterable[MpduFrame]",
              window: ReplayWindow,
              cm_state: Optional[CountermeasureState] = None,
              clock: Optional[Clock] = None, *,
              sa: bytes, da: bytes, priority: int = 0) -> bytes:
    """Decapsulate the fragments of one MSDU; raises on the first failed check."""
    now = clock() if clock is not None else 0.0
    if cm_state is not None and cm_state.in_blackout(now):
        raise Blackout("countermeasures active; frame dropped")
    cache = _TtakCache()
    chunks = []
    for frame in _as_frame_list(frames):
        if frame.layout is not FrameLayout.TKIP_BASELINE:
            raise MalformedFrame(f"unexpected layout {frame.layout.value}")
        tsc = frame.tsc
        if window.classify(tsc) is Classification.REJECT:
            raise ReplayRejected(f"counter {tsc.value:#014x} rejected")
        ttak = cache.get(keys, tsc.high32)
        chunks.append(_open_body(keys, ttak, tsc, frame.body))
    return _verify_mic(keys, b"".join(chunks), sa, da, priority, None,
                       cm_state, now)


# ---------------------------------------------------------------------------
# Low-overhead framing
# ---------------------------------------------------------------------------

class SenderMode(enum.Enum):
    INITIAL = "initial"      # next data frame must carry the full counter
    STREAMING = "streaming"
    PROBING = "probing"      # data stopped, only probe frames go out


class ProbeEvent(enum.Enum):
    ACK_RECEIVED = "ack_received"
    ACK_TIMEOUT = "ack_timeout"


@dataclass
class LotkipSenderState:
    """Sender side: counter allocation, the type-A refresh schedule, and the
    probe/resume mode machine."""

    refresh_interval: int = 256
    next_tsc: int = 0
    mode: SenderMode = SenderMode.INITIAL
    packets_since_refresh: int = 0
    ttak_cache: _TtakCache = field(default_factory=_TtakCache)

    def __post_init__(self) -> None:
        if self.refresh_interval < 1:
            raise ValueError("refresh interval must be positive")

    @property
    def phase1_calls(self) -> int:
        return self.ttak_cache.calls

    def _alloc(self) -> Tsc48:
        if self.next_tsc > TSC_MAX:
            raise TscExhausted("counter space exhausted; rekey required")
        tsc = Tsc48(self.next_tsc)
        self.next_tsc += 1
        return tsc


def probe_cycle(state: LotkipSenderState, event: ProbeEvent) -> LotkipSenderState:
    """Advance the loss-recovery machine.

    Any ack timeout stops data and enters probing.  An acknowledged probe
    re-arms the sender so the next data frame is a full-counter type A
    frame; an ack while already re-armed simply resumes streaming.
    """
    if event is ProbeEvent.ACK_TIMEOUT:
        state.mode = SenderMode.PROBING
    elif state.mode is SenderMode.PROBING:
        state.mode = SenderMode.INITIAL
    elif state.mode is SenderMode.INITIAL:
        state.mode = SenderMode.STREAMING
    return state


def lotkip_seal(keys: SessionKeys, state: LotkipSenderState, sa: bytes,
                da: bytes, priority: int, msdu: bytes,
                frag_threshold: int) -> list[MpduFrame]:
    """Encapsulate one MSDU; the tag also covers the 48-bit counter of the
    MSDU's first fragment, since most frames do not carry its upper bits."""
    if state.mode is SenderMode.PROBING:
        raise ProbingActive("sender is probing; data transmission stopped")
    _check_seal_args(msdu, frag_threshold)
    if state.next_tsc + fragment_count(len(msdu), frag_threshold) - 1 > TSC_MAX:
        raise TscExhausted("counter would overflow; rekey required")
    mic = michael_mic(keys.mic_key_tx,
                      MicHeader(sa, da, priority, iv=state.next_tsc), msdu)
    chunks = _chunks(msdu + mic, frag_threshold)
    frames = []
    for chunk in chunks:
        tsc = state._alloc()
        hi_changed = state.ttak_cache.hi != tsc.high32
        ttak = state.ttak_cache.get(keys, tsc.high32)
        type_a = (state.mode is SenderMode.INITIAL or hi_changed
                  or state.packets_since_refresh >= state.refresh_interval)
        body = _seal_body(keys, ttak, tsc, chunk)
        if type_a:
            frames.append(MpduFrame(FrameLayout.LOTKIP_TYPE_A, keys.key_id,
                                    tsc.low16, tsc.high32, body))
            state.packets_since_refresh = 1
        else:
            frames.append(MpduFrame(FrameLayout.LOTKIP_TYPE_B, keys.key_id,
                                    tsc.low16, None, body))
            state.packets_since_refresh += 1
        state.mode = SenderMode.STREAMING
    return frames


def make_probe(keys: SessionKeys, state: LotkipSenderState) -> MpduFrame:
    """A 16-byte keep-alive: full-counter header plus an encrypted
    fixed zero payload with its check value."""
    tsc = state._alloc()
    ttak = state.ttak_cache.get(keys, tsc.high32)
    body = _seal_body(keys, ttak, tsc, PROBE_PAYLOAD)
    return MpduFrame(FrameLayout.PROBE, keys.key_id, tsc.low16, tsc.high32, body)


@dataclass
class LotkipReceiverState:
    """Receiver side: the current upper-counter epoch learned from type A
    frames, with the phase 1 result cached across the epoch."""

    ttak_cache: _TtakCache = field(default_factory=_TtakCache)

    @property
    def epoch_hi(self) -> Optional[int]:
        return self.ttak_cache.hi

    @property
    def phase1_calls(self) -> int:
        return self.ttak_cache.calls


def _resolve_tsc(receiver: LotkipReceiverState, frame: MpduFrame) -> Tsc48:
    if frame.tsc_hi is not None:
        return frame.tsc
    if receiver.epoch_hi is None:
        raise NoEpochState("type B frame before any type A frame")
    return Tsc48((receiver.epoch_hi << 16) | frame.tsc_low)


def lotkip_open(keys: SessionKeys, receiver: LotkipReceiverState,
                frames: "MpduFrame | Iterable[MpduFrame]",
                window: ReplayWindow,
                cm_state: Optional[CountermeasureState] = None,
                clock: Optional[Clock] = None, *,
                sa: bytes, da: bytes, priority: int = 0) -> Optional[bytes]:
    """Decapsulate one MSDU (or validate a lone probe, returning None)."""
    now = clock() if clock is not None else 0.0
    if cm_state is not None and cm_state.in_blackout(now):
        raise Blackout("countermeasures active; frame dropped")
    frame_list = _as_frame_list(frames)

    if frame_list[0].layout is FrameLayout.PROBE:
        if len(frame_list) != 1:
            raise MalformedFrame("probe frames are not fragmented")
        frame = frame_list[0]
        tsc = frame.tsc
        if window.classify(tsc) is Classification.REJECT:
            raise ReplayRejected(f"counter {tsc.value:#014x} rejected")
        ttak = receiver.ttak_cache.get(keys, tsc.high32)
        if _open_body(keys, ttak, tsc, frame.body) != PROBE_PAYLOAD:
            raise MalformedFrame("probe payload mismatch")
        return None

    chunks = []
    first_tsc: Optional[Tsc48] = None
    for frame in frame_list:
        if frame.layout not in (FrameLayout.LOTKIP_TYPE_A, FrameLayout.LOTKIP_TYPE_B):
            raise MalformedFrame(f"unexpected layout {frame.layout.value}")
        tsc = _resolve_tsc(receiver, frame)
        if window.classify(tsc) is Classification.REJECT:
            raise ReplayRejected(f"counter {tsc.value:#014x} rejected")
        ttak = receiver.ttak_cache.get(keys, tsc.high32)
        chunks.append(_open_body(keys, ttak, tsc, frame.body))
        if first_tsc is None:
            first_tsc = tsc
    return _verify_mic(keys, b"".join(chunks), sa, da, priority,
                       first_tsc.value, cm_state, now)


# ---------------------------------------------------------------------------
# Overhead accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OverheadLedger:
    """Per-frame encapsulation overhead, by field."""

    iv_keyid: int
    extiv: int
    mic: int
    icv: int

    @property
    def total(self) -> int:
        return self.iv_keyid + self.extiv + self.mic + self.icv


def overhead_of(layout: FrameLayout) -> OverheadLedger:
    if layout is FrameLayout.LOTKIP_TYPE_B:
        return OverheadLedger(iv_keyid=4, extiv=0, mic=8, icv=4)
    if layout in (FrameLayout.TKIP_BASELINE, FrameLayout.LOTKIP_TYPE_A):
        return OverheadLedger(iv_keyid=4, extiv=4, mic=8, icv=4)
    raise ValueError("probe frames carry no data and are not accounted")


# ---------------------------------------------------------------------------
# Framed container and session configuration
# ---------------------------------------------------------------------------

def frames_to_container(frames: Iterable[MpduFrame]) -> bytes:
    """Length-prefixed concatenation: 4-byte big-endian size per frame."""
    out = bytearray()
    for frame in frames:
        raw = frame.raw()
        out += struct.pack(">I", len(raw))
        out += raw
    return bytes(out)


def container_to_frames(data: bytes) -> list[MpduFrame]:
    frames = []
    pos = 0
    while pos < len(data):
        if pos + 4 > len(data):
            raise MalformedFrame("truncated container length prefix")
        (length,) = struct.unpack_from(">I", data, pos)
        pos += 4
        if pos + length > len(data):
            raise MalformedFrame("container frame extends past end of data")
        frames.append(parse_frame(data[pos:pos + length]))
        pos += length
    return frames


def _parse_hex(value: str, expect_len: int, key: str) -> bytes:
    cleaned = value.replace(":", "").replace("-", "").strip()
    try:
        raw = bytes.fromhex(cleaned)
    except ValueError as exc:
        raise CodecError(f"config field {key!r}: invalid hex {value!r}") from exc
    if len(raw) != expect_len:
        raise CodecError(f"config field {key!r}: expected {expect_len} bytes, "
                         f"got {len(raw)}")
    return raw


@dataclass
class SessionConfig:
    """Parsed session description shared by both endpoints of a link.

    The integrity endpoints (sa, da, priority) are part of the tag input and
    must match on both sides; they default to the transmitter address, the
    broadcast address, and zero.
    """

    keys: SessionKeys
    mode: str = "tkip"
    refresh_interval: int = 256
    frag_threshold: int = FRAG_THRESHOLD_MAX
    sa: bytes = b""
    da: bytes = b"\xff" * 6
    priority: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("tkip", "lotkip"):
            raise CodecError(f"mode must be 'tkip' or 'lotkip', got {self.mode!r}")
        if not self.sa:
            self.sa = self.keys.ta


def parse_session_config(text: str) -> SessionConfig:
    """Parse key=value lines; '#' starts a comment."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CodecError(f"config line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()

    missing = [k for k in ("tk", "mic_key_tx", "mic_key_rx", "ta") if k not in fields]
    if missing:
        raise CodecError(f"config missing required fields: {', '.join(missing)}")

    keys = SessionKeys(
        tk=_parse_hex(fields["tk"], 16, "tk"),
        mic_key_tx=_parse_hex(fields["mic_key_tx"], 8, "mic_key_tx"),
        mic_key_rx=_parse_hex(fields["mic_key_rx"], 8, "mic_key_rx"),
        ta=_parse_hex(fields["ta"], 6, "ta"),
        key_id=int(fields.get("key_id", "0")),
    )
    config = SessionConfig(
        keys=keys,
        mode=fields.get("mode", "tkip"),
        refresh_interval=int(fields.get("K", "256")),
        frag_threshold=int(fields.get("frag_threshold", str(FRAG_THRESHOLD_MAX))),
        sa=_parse_hex(fields["sa"], 6, "sa") if "sa" in fields else b"",
        da=_parse_hex(fields["da"], 6, "da") if "da" in fields else b"\xff" * 6,
        priority=int(fields.get("priority", "0")),
    )
    _check_seal_args(b"", config.frag_threshold)
    if config.refresh_interval < 1:
        raise CodecError("K must be positive")
    return config


# ---------------------------------------------------------------------------
# Stateful session endpoints
# ---------------------------------------------------------------------------

class SenderSession:
    """Owns the outbound counter (and low-overhead sender state)."""

    def __init__(self, config: SessionConfig) -> None:
        self.config = config
        self.next_tsc = 0
        self.lotkip = LotkipSenderState(refresh_interval=config.refresh_interval)

    def seal(self, msdu: bytes) -> list[MpduFrame]:
        cfg = self.config
        if cfg.mode == "lotkip":
            return lotkip_seal(cfg.keys, self.lotkip, cfg.sa, cfg.da,
                               cfg.priority, msdu, cfg.frag_threshold)
        frames = tkip_seal(cfg.keys, self.next_tsc, cfg.sa, cfg.da,
                           cfg.priority, msdu, cfg.frag_threshold)
        self.next_tsc += len(frames)
        return frames


class ReceiverSession:
    """Owns the replay window, countermeasure state, and epoch cache."""

    def __init__(self, config: SessionConfig, clock: Optional[Clock] = None) -> None:
        self.config = config
        self.clock = clock
        self.window = ReplayWindow()
        self.cm_state = CountermeasureState()
        self.lotkip = LotkipReceiverState()

    def open(self, frames: "MpduFrame | Iterable[MpduFrame]") -> Optional[bytes]:
        cfg = self.config
        if cfg.mode == "lotkip":
            return lotkip_open(cfg.keys, self.lotkip, frames, self.window,
                               self.cm_state, self.clock,
                               sa=cfg.sa, da=cfg.da, priority=cfg.priority)
        return tkip_open(cfg.keys, frames, self.window, self.cm_state,
                         self.clock, sa=cfg.sa, da=cfg.da, priority=cfg.priority)
