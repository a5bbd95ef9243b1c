import random

import pytest

from lotkip.codec import SessionKeys


@pytest.fixture
def rng():
    return random.Random(0xD00F)


def make_keys(rng=None, key_id=0):
    r = rng or random.Random(20)
    return SessionKeys(
        tk=r.randbytes(16),
        mic_key_tx=r.randbytes(8),
        mic_key_rx=r.randbytes(8),
        ta=r.randbytes(6),
        key_id=key_id,
    )


def symmetric_keys(rng=None, key_id=0):
    """Keys where both integrity directions match, for self round trips."""
    r = rng or random.Random(21)
    mic = r.randbytes(8)
    return SessionKeys(tk=r.randbytes(16), mic_key_tx=mic, mic_key_rx=mic,
                       ta=r.randbytes(6), key_id=key_id)
