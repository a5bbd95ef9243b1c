"""Golden vector files: generation and validation.

Each file under ``vectors/`` holds one case per line as space-separated hex
fields with ``->`` before the outputs.  Expected outputs are produced by the
independent reference implementations, never by the production code, and
validation additionally cross-checks the production implementations against
every stored case.
"""

from __future__ import annotations

import random
from pathlib import Path

from lotkip import crypto, reference
from lotkip.crypto import MicHeader

CASES_PER_FILE = 24
_SEED = 0x54B1C


def _hex(data: bytes) -> str:
    return data.hex() if data else "-"


def _unhex(text: str) -> bytes:
    return b"" if text == "-" else bytes.fromhex(text)


def _michael_block_lines(rng: random.Random) -> list[str]:
    pairs = [(0, 0), (1, 0), (0xFFFFFFFF, 0xFFFFFFFF)]
    while len(pairs) < CASES_PER_FILE:
        pairs.append((rng.getrandbits(32), rng.getrandbits(32)))
    lines = []
    for l, r in pairs:
        ol, orr = reference.ref_michael_block(l, r)
        lines.append(f"{l:08x} {r:08x} -> {ol:08x} {orr:08x}")
    return lines


def _michael_mic_lines(rng: random.Random) -> list[str]:
    cases = [
        (bytes(8), bytes(6), bytes(6), 0, None, b""),
        (bytes(8), bytes(6), bytes(6), 0, 0, b""),
        (bytes(range(1, 9)), bytes([2] * 6), bytes([3] * 6), 0, None, b"hello"),
    ]
    while len(cases) < CASES_PER_FILE:
        cases.append((
            rng.randbytes(8), rng.randbytes(6), rng.randbytes(6),
            rng.randrange(8),
            rng.getrandbits(48) if rng.random() < 0.5 else None,
            rng.randbytes(rng.randrange(64)),
        ))
    lines = []
    for key, sa, da, priority, iv, data in cases:
        tag = reference.ref_michael_mic(key, sa, da, priority, iv, data)
        iv_text = f"{iv:012x}" if iv is not None else "-"
        lines.append(f"{_hex(key)} {_hex(sa)} {_hex(da)} {priority:02x} "
                     f"{iv_text} {_hex(data)} -> {_hex(tag)}")
    return lines


def _crc32_lines(rng: random.Random) -> list[str]:
    cases = [b"", b"123456789"]
    while len(cases) < CASES_PER_FILE:
        cases.append(rng.randbytes(rng.randrange(128)))
    return [f"{_hex(data)} -> {_hex(reference.ref_crc32_bytes(data))}"
            for data in cases]


def _keymix_lines(rng: random.Random) -> list[str]:
    cases = [(bytes(16), bytes(6), 0, 0)]
    while len(cases) < CASES_PER_FILE:
        cases.append((rng.randbytes(16), rng.randbytes(6),
                      rng.getrandbits(32), rng.getrandbits(16)))
    lines = []
    for tk, ta, tsc_hi, tsc_lo in cases:
        ttak = reference.ref_phase1(tk, ta, tsc_hi)
        seed = reference.ref_phase2(ttak, tk, tsc_lo)
        ttak_text = "".join(f"{w:04x}" for w in ttak)
        lines.append(f"{_hex(tk)} {_hex(ta)} {tsc_hi:08x} {tsc_lo:04x} -> "
                     f"{ttak_text} {_hex(seed)}")
    return lines


def _rc4_lines(rng: random.Random) -> list[str]:
    cases = [(b"Key", b"Plaintext")]
    while len(cases) < CASES_PER_FILE:
        cases.append((rng.randbytes(rng.randrange(1, 32)),
                      rng.randbytes(rng.randrange(64))))
    return [f"{_hex(key)} {_hex(data)} -> {_hex(reference.ref_rc4(key, data))}"
            for key, data in cases]


def build_vector_files() -> dict[str, str]:
    rng = random.Random(_SEED)
    files = {
        "michael_block.txt": _michael_block_lines(rng),
        "michael_mic.txt": _michael_mic_lines(rng),
        "crc32.txt": _crc32_lines(rng),
        "keymix.txt": _keymix_lines(rng),
        "rc4.txt": _rc4_lines(rng),
    }
    return {name: "\n".join(lines) + "\n" for name, lines in files.items()}


def write_dir(directory: Path) -> list[str]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in build_vector_files().items():
        (directory / name).write_text(content)
        written.append(name)
    return sorted(written)


def _check_impl_line(name: str, line: str) -> str | None:
    """Run the production implementation over one stored case; returns an
    error description on mismatch."""
    inputs, _, outputs = line.partition(" -> ")
    if name == "michael_block.txt":
        l, r = (int(v, 16) for v in inputs.split())
        ol, orr = (int(v, 16) for v in outputs.split())
        if crypto.michael_block(l, r) != (ol, orr):
            return f"michael_block({l:#x}, {r:#x})"
    elif name == "michael_mic.txt":
        key, sa, da, prio, iv, data = inputs.split()
        header = MicHeader(_unhex(sa), _unhex(da), int(prio, 16),
                           None if iv == "-" else int(iv, 16))
        if crypto.michael_mic(_unhex(key), header, _unhex(data)) != _unhex(outputs):
            return f"michael_mic case {inputs}"
    elif name == "crc32.txt":
        if crypto.crc32_icv(_unhex(inputs)) != _unhex(outputs):
            return f"crc32_icv({inputs})"
    elif name == "keymix.txt":
        tk, ta, tsc_hi, tsc_lo = inputs.split()
        ttak_text, seed_text = outputs.split()
        ttak = crypto.phase1_mix(_unhex(tk), _unhex(ta), int(tsc_hi, 16))
        if "".join(f"{w:04x}" for w in ttak) != ttak_text:
            return f"phase1_mix case {inputs}"
        if crypto.phase2_mix(ttak, _unhex(tk), int(tsc_lo, 16)) != _unhex(seed_text):
            return f"phase2_mix case {inputs}"
    elif name == "rc4.txt":
        key, data = inputs.split()
        if crypto.rc4_apply(_unhex(key), _unhex(data)) != _unhex(outputs):
            return f"rc4_apply case {inputs}"
    return None


def validate_dir(directory: Path) -> list[str]:
    """Returns a list of problems; empty means every file and case matched."""
    problems = []
    for name, expect in build_vector_files().items():
        path = directory / name
        if not path.exists():
            problems.append(f"{name}: missing")
            continue
        stored = path.read_text()
        if stored != expect:
            problems.append(f"{name}: stored bytes differ from reference output")
            continue
        for lineno, line in enumerate(stored.splitlines(), start=1):
            issue = _check_impl_line(name, line)
            if issue:
                problems.append(f"{name}:{lineno}: implementation mismatch on {issue}")
    return problems
