"""Quasi-unit-disk ad hoc topologies and network energy accounting.

Stations are placed on a grid or uniformly at random; two stations at
distance d are linked deterministically when d <= alpha*R, never when
d > R, and with probability (R - d) / (R - alpha*R) in between (one draw
per unordered pair).  Traffic scenarios pick random connected
source/destination pairs, push a stream of fixed-size packets along the
min-hop route, and charge every node its compute energy (encrypt at the
source, decrypt at the destination -- forwarders only relay) plus the
linear radio transmit/receive cost of each hop.

Scenario randomness is derived from (seed, scenario index) only, so the
same scenarios are replayed for every packet size and both encryption
schemes; energy comparisons therefore use common random numbers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from lotkip.codec import FrameLayout, overhead_of
from lotkip.cost import (
    DEFAULT_ENERGY_PARAMS,
    Case,
    EnergyModelParams,
    rx_energy,
    tkip_energy,
    tx_energy,
)

MAC_OVERHEAD_BYTES = 34
EPOCH_PACKETS = 1 << 16
PACKET_SIZE_MIN = 256
PACKET_SIZE_MAX = 2312
DEFAULT_PACKET_SIZES = tuple(range(256, 2049, 256))
SCHEMES = ("tkip", "lotkip")


class ScenarioError(Exception):
    """Raised when a scenario cannot be set up (e.g. no connected pair)."""


@dataclass(frozen=True)
class TopologyConfig:
    node_count: int = 49
    area_w: float = 500.0
    area_h: float = 500.0
    placement: str = "grid"            # "grid" or "random"
    radio_range: float = 120.0
    alpha: float = 0.75
    seed: "int | tuple[int, ...]" = 1

    def __post_init__(self) -> None:
        if self.node_count < 2:
            raise ValueError("need at least two nodes")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if self.placement not in ("grid", "random"):
            raise ValueError(f"unknown placement {self.placement!r}")
        if self.radio_range <= 0:
            raise ValueError("radio_range must be positive")


@dataclass
class Topology:
    positions: np.ndarray              # (n, 2) coordinates in meters
    neighbors: list[list[int]]         # sorted adjacency lists

    @property
    def node_count(self) -> int:
        return len(self.neighbors)

    def degree(self, node: int) -> int:
        return len(self.neighbors[node])


def link_decide(dist: float, radio_range: float, alpha: float,
                rng: np.random.Generator) -> bool:
    """Single link decision; draws from rng only inside the uncertain band."""
    if dist < 0:
        raise ValueError("distance must be non-negative")
    if dist <= alpha * radio_range:
        return True
    if dist > radio_range:
        return False
    p = (radio_range - dist) / (radio_range - alpha * radio_range)
    return bool(rng.random() < p)


def _grid_positions(cfg: TopologyConfig) -> np.ndarray:
    side = math.isqrt(cfg.node_count)
    if side * side < cfg.node_count:
        side += 1
    xs = np.linspace(0.0, cfg.area_w, side)
    ys = np.linspace(0.0, cfg.area_h, side)
    coords = [(xs[k % side], ys[k // side]) for k in range(cfg.node_count)]
    return np.asarray(coords, dtype=float)


def generate_topology(cfg: TopologyConfig) -> Topology:
    rng = np.random.default_rng(cfg.seed)
    if cfg.placement == "grid":
        positions = _grid_positions(cfg)
    else:
        positions = rng.uniform((0.0, 0.0), (cfg.area_w, cfg.area_h),
                                size=(cfg.node_count, 2))
    n = cfg.node_count
    neighbors: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dist = float(np.hypot(*(positions[i] - positions[j])))
            if link_decide(dist, cfg.radio_range, cfg.alpha, rng):
                neighbors[i].append(j)
                neighbors[j].append(i)
    for lst in neighbors:
        lst.sort()
    return Topology(positions, neighbors)


def route(topology: Topology, src: int, dst: int) -> Optional[list[int]]:
    """Minimum-hop path, ties broken toward lower node indices; None if
    the pair is disconnected."""
    if src == dst:
        raise ValueError("src and dst must differ")
    parent: dict[int, int] = {src: src}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        if node == dst:
            path = [dst]
            while path[-1] != src:
                path.append(parent[path[-1]])
            return path[::-1]
        for nxt in topology.neighbors[node]:
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    return None


# ---------------------------------------------------------------------------
# Traffic and energy accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrafficConfig:
    packet_sizes: tuple[int, ...] = DEFAULT_PACKET_SIZES
    packets_per_scenario: int = 10_000
    scenario_count: int = 100
    scheme: str = "both"               # "tkip", "lotkip", or "both"
    refresh_interval: int = 256
    ack_enabled: bool = False
    ack_size: int = 14
    seed: int = 1

    def __post_init__(self) -> None:
        for p in self.packet_sizes:
            if not PACKET_SIZE_MIN <= p <= PACKET_SIZE_MAX:
                raise ValueError(
                    f"packet size {p} outside [{PACKET_SIZE_MIN}, {PACKET_SIZE_MAX}]")
        if self.scheme not in ("tkip", "lotkip", "both"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.packets_per_scenario < 1 or self.scenario_count < 1:
            raise ValueError("packet and scenario counts must be positive")
        if self.refresh_interval < 1:
            raise ValueError("refresh_interval must be positive")

    @property
    def schemes(self) -> tuple[str, ...]:
        return SCHEMES if self.scheme == "both" else (self.scheme,)


def frame_bytes(packet_size: int, layout: FrameLayout) -> int:
    """On-air frame size: payload + encapsulation overhead + MAC header/FCS."""
    return packet_size + overhead_of(layout).total + MAC_OVERHEAD_BYTES


def packet_energy(scheme: str, packet_size: int, hop_count: int,
                  first_packet: bool = False,
                  params: EnergyModelParams = DEFAULT_ENERGY_PARAMS,
                  layout: Optional[FrameLayout] = None,
                  ack_enabled: bool = False, ack_size: int = 14) -> float:
    """Total microjoules one packet costs the network end to end.

    Compute energy is charged twice (encrypt at the source, decrypt at the
    destination); radio energy once per hop.  The frame layout defaults to
    the scheme's steady state but can be forced, e.g. for refresh frames.
    """
    if hop_count < 1:
        raise ValueError("hop_count must be at least 1")
    if scheme == "tkip":
        compute = tkip_energy(packet_size, Case.NO_CACHE, params=params)
        layout = layout or FrameLayout.TKIP_BASELINE
    elif scheme == "lotkip":
        compute = tkip_energy(packet_size, Case.CACHE, first_packet, params)
        if layout is None:
            layout = (FrameLayout.LOTKIP_TYPE_A if first_packet
                      else FrameLayout.LOTKIP_TYPE_B)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    size = frame_bytes(packet_size, layout)
    radio = hop_count * (tx_energy(size, params) + rx_energy(size, params))
    if ack_enabled:
        radio += hop_count * (tx_energy(ack_size, params) + rx_energy(ack_size, params))
    return 2.0 * compute + radio


def lotkip_frame_classes(packets: int, refresh_interval: int) -> tuple[int, int, int]:
    """(epoch-first type A, refresh type A, type B) counts for a stream.

    Frame i is type A when i is a multiple of the refresh interval or of the
    2^16 counter epoch; epoch starts additionally pay the uncached compute.
    """
    n_first = -(-packets // EPOCH_PACKETS)
    n_type_a = -(-packets // refresh_interval)
    for j in range(n_first):
        if (j * EPOCH_PACKETS) % refresh_interval != 0:
            n_type_a += 1
    return n_first, n_type_a - n_first, packets - n_type_a


def _charge_stream(per_node: np.ndarray, path: list[int], count: int,
                   compute_each: float, size: int,
                   params: EnergyModelParams,
                   ack_enabled: bool, ack_size: int) -> None:
    """Add the energy of `count` identical packets along `path` (microjoules)."""
    if count <= 0:
        return
    tx = tx_energy(size, params)
    rx = rx_energy(size, params)
    per_node[path[0]] += count * (compute_each + tx)
    for node in path[1:-1]:
        per_node[node] += count * (rx + tx)
    per_node[path[-1]] += count * (rx + compute_each)
    if ack_enabled:
        ack_tx = tx_energy(ack_size, params)
        ack_rx = rx_energy(ack_size, params)
        for a, b in zip(path, path[1:]):
            per_node[b] += count * ack_tx
            per_node[a] += count * ack_rx


def _scheme_charges(per_node: np.ndarray, path: list[int], packet_size: int,
                    scheme: str, traffic: TrafficConfig,
                    params: EnergyModelParams) -> None:
    ack = traffic.ack_enabled
    ack_size = traffic.ack_size
    packets = traffic.packets_per_scenario
    if scheme == "tkip":
        compute = tkip_energy(packet_size, Case.NO_CACHE, params=params)
        size = frame_bytes(packet_size, FrameLayout.TKIP_BASELINE)
        _charge_stream(per_node, path, packets, compute, size, params, ack, ack_size)
        return
    n_first, n_refresh, n_b = lotkip_frame_classes(packets, traffic.refresh_interval)
    compute_first = tkip_energy(packet_size, Case.CACHE, True, params)
    compute_cached = tkip_energy(packet_size, Case.CACHE, False, params)
    size_a = frame_bytes(packet_size, FrameLayout.LOTKIP_TYPE_A)
    size_b = frame_bytes(packet_size, FrameLayout.LOTKIP_TYPE_B)
    _charge_stream(per_node, path, n_first, compute_first, size_a, params, ack, ack_size)
    _charge_stream(per_node, path, n_refresh, compute_cached, size_a, params, ack, ack_size)
    _charge_stream(per_node, path, n_b, compute_cached, size_b, params, ack, ack_size)


@dataclass
class SimResult:
    """Mean per-node energy ledgers (joules) per scheme and packet size."""

    placement: str
    node_count: int
    packet_sizes: tuple[int, ...]
    schemes: tuple[str, ...]
    scenario_count: int
    packets_per_scenario: int
    per_node_j: dict[tuple[str, int], np.ndarray]

    def network_energy(self, scheme: str, packet_size: int) -> float:
        return float(math.fsum(self.per_node_j[(scheme, packet_size)]))

    def per_node_mean(self, scheme: str, packet_size: int) -> float:
        return self.network_energy(scheme, packet_size) / self.node_count

    def efficiency_factor(self, packet_size: int) -> Optional[float]:
        if "tkip" not in self.schemes or "lotkip" not in self.schemes:
            return None
        return (self.network_energy("tkip", packet_size)
                / self.network_energy("lotkip", packet_size))


def _normalize_seed(seed: "int | tuple[int, ...]") -> tuple[int, ...]:
    return seed if isinstance(seed, tuple) else (seed,)


def _sample_pair(topology: Topology, rng: np.random.Generator,
                 max_tries: int = 1000) -> tuple[list[int], int]:
    n = topology.node_count
    for _ in range(max_tries):
        src = int(rng.integers(n))
        dst = int(rng.integers(n))
        if src == dst:
            continue
        path = route(topology, src, dst)
        if path is not None:
            return path, len(path) - 1
    raise ScenarioError("no connected node pair found after bounded resampling")


def run_experiment(topo_cfg: TopologyConfig, traffic: TrafficConfig) -> SimResult:
    """Average network energy over the configured random scenarios."""
    n = topo_cfg.node_count
    params = DEFAULT_ENERGY_PARAMS
    accum = {(scheme, p): np.zeros(n)
             for scheme in traffic.schemes for p in traffic.packet_sizes}
    topo_seed = _normalize_seed(topo_cfg.seed)
    for s in range(traffic.scenario_count):
        topology = generate_topology(replace(topo_cfg, seed=topo_seed + (s, 0)))
        pair_rng = np.random.default_rng((traffic.seed, s, 1))
        path, _ = _sample_pair(topology, pair_rng)
        for p in traffic.packet_sizes:
            for scheme in traffic.schemes:
                _scheme_charges(accum[(scheme, p)], path, p, scheme, traffic, params)
    per_node_j = {key: arr * 1e-6 / traffic.scenario_count
                  for key, arr in accum.items()}
    return SimResult(
        placement=topo_cfg.placement,
        node_count=n,
        packet_sizes=traffic.packet_sizes,
        schemes=traffic.schemes,
        scenario_count=traffic.scenario_count,
        packets_per_scenario=traffic.packets_per_scenario,
        per_node_j=per_node_j,
    )


SERIES_CSV_HEADER = "P,scheme,placement,network_energy_J,per_node_J,efficiency_factor"


def emit_series(results: "SimResult | list[SimResult]") -> str:
    """CSV rows ordered by (P, scheme, placement); byte-stable across reruns."""
    if isinstance(results, SimResult):
        results = [results]
    rows = []
    for result in results:
        for p in result.packet_sizes:
            eff = result.efficiency_factor(p)
            for scheme in result.schemes:
                rows.append((
                    p, scheme, result.placement,
                    result.network_energy(scheme, p),
                    result.per_node_mean(scheme, p),
                    eff,
                ))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    lines = [SERIES_CSV_HEADER]
    for p, scheme, placement, network, per_node, eff in rows:
        eff_text = f"{eff:.6f}" if eff is not None else ""
        lines.append(f"{p},{scheme},{placement},{network:.6f},{per_node:.6f},{eff_text}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Scenario configuration files
# ---------------------------------------------------------------------------

def parse_scenario_config(text: str) -> tuple[list[TopologyConfig], TrafficConfig]:
    """Parse key=value lines into one topology config per requested placement
    plus the traffic config; '#' starts a comment."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"scenario line {lineno}: expected key=value")
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()

    known = {"nodes", "area_w", "area_h", "placement", "R", "alpha", "P_list",
             "packets", "scenarios", "scheme", "K", "ack", "seed"}
    unknown = set(fields) - known
    if unknown:
        raise ScenarioError(f"unknown scenario fields: {', '.join(sorted(unknown))}")

    seed = int(fields.get("seed", "1"))
    placement = fields.get("placement", "grid")
    placements = ("grid", "random") if placement == "both" else (placement,)
    try:
        topo_cfgs = [
            TopologyConfig(
                node_count=int(fields.get("nodes", "49")),
                area_w=float(fields.get("area_w", "500")),
                area_h=float(fields.get("area_h", "500")),
                placement=pl,
                radio_range=float(fields.get("R", "120")),
                alpha=float(fields.get("alpha", "0.75")),
                seed=seed,
            )
            for pl in placements
        ]
        if "P_list" in fields:
            sizes = tuple(int(v) for v in fields["P_list"].split(",") if v.strip())
        else:
            sizes = DEFAULT_PACKET_SIZES
        traffic = TrafficConfig(
            packet_sizes=sizes,
            packets_per_scenario=int(fields.get("packets", "10000")),
            scenario_count=int(fields.get("scenarios", "100")),
            scheme=fields.get("scheme", "both"),
            refresh_interval=int(fields.get("K", "256")),
            ack_enabled=fields.get("ack", "off") in ("on", "true", "1"),
            seed=seed,
        )
    except ValueError as exc:
        raise ScenarioError(f"invalid scenario config: {exc}") from exc
    return topo_cfgs, traffic
