"""Michael 64-bit message integrity code.

The tag is computed over a fixed pseudo-header (source address, destination
address, priority byte, three zero bytes, and optionally the 48-bit packet
counter) followed by the payload, padded with 0x5a and zeros so the word
stream always ends in exactly one all-zero word.
"""

from __future__ import annotations

from dataclasses import dataclass

_M32 = 0xFFFFFFFF


def _rotl32(x: int, n: int) -> int:
    return ((x << n) | (x >> (32 - n))) & _M32


def _rotr32(x: int, n: int) -> int:
    return ((x >> n) | (x << (32 - n))) & _M32


def _xswap(x: int) -> int:
    # swap the upper and lower 16-bit halves
    return ((x & 0xFFFF) << 16) | (x >> 16)


def michael_block(l: int, r: int) -> tuple[int, int]:
    """The b() mixing round: rotates, a half-word swap, and mod-2^32 adds."""
    r ^= _rotl32(l, 17)
    l = (l + r) & _M32
    r ^= _xswap(l)
    l = (l + r) & _M32
    r ^= _rotl32(l, 3)
    l = (l + r) & _M32
    r ^= _rotr32(l, 2)
    l = (l + r) & _M32
    return l, r


def michael_pad(message: bytes) -> list[int]:
    """Split into little-endian 32-bit words, padded with 0x5a and zeros.

    The padded stream always ends with exactly one all-zero word, and the
    word before it is non-zero because it contains the 0x5a byte.
    """
    buf = bytearray(message)
    buf.append(0x5A)
    buf.extend(b"\x00" * (-len(buf) % 4))
    buf.extend(b"\x00\x00\x00\x00")
    return [int.from_bytes(buf[i:i + 4], "little") for i in range(0, len(buf), 4)]


def michael_key_words(key: bytes) -> tuple[int, int]:
    """Split the 8-byte key into its two little-endian 32-bit words."""
    if len(key) != 8:
        raise ValueError(f"Michael key must be 8 bytes, got {len(key)}")
    return int.from_bytes(key[:4], "little"), int.from_bytes(key[4:], "little")


@dataclass(frozen=True)
class MicHeader:
    """Pseudo-header mixed into the tag ahead of the payload.

    ``iv`` is the 48-bit packet counter; it is included only in the
    low-overhead framing mode, where the counter is authenticated because
    most frames no longer carry its upper bytes on air.
    """

    sa: bytes
    da: bytes
    priority: int = 0
    iv: int | None = None

    def __post_init__(self) -> None:
        if len(self.sa) != 6 or len(self.da) != 6:
            raise ValueError("sa and da must be 6 bytes each")
        if not 0 <= self.priority <= 0xFF:
            raise ValueError("priority must fit in one byte")
        if self.iv is not None and not 0 <= self.iv < 1 << 48:
            raise ValueError("iv must be a 48-bit value")

    def packed(self) -> bytes:
        out = bytearray(self.sa)
        out += self.da
        out.append(self.priority)
        out += b"\x00\x00\x00"
        if self.iv is not None:
            out += self.iv.to_bytes(6, "little")
        return bytes(out)


def michael_mic(key: bytes, header: MicHeader, data: bytes) -> bytes:
    """8-byte tag over header.packed() || data, serialized (L, R) little-endian."""
    l, r = michael_key_words(key)
    for word in michael_pad(header.packed() + data):
        l ^= word
        l, r = michael_block(l, r)
    return l.to_bytes(4, "little") + r.to_bytes(4, "little")
