"""TKIP security pipeline, its low-overhead framing variant, the
operation-count/energy cost model, and an ad hoc network energy simulator."""

__version__ = "0.1.0"

from lotkip import codec, cost, crypto, netsim

__all__ = ["codec", "cost", "crypto", "netsim", "__version__"]
