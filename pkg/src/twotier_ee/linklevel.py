"""Receive combining, SINR, rate, and energy-efficiency evaluation.

A link is a (cell, subcarrier) pair carrying one uplink user.  Each BS
applies maximum-ratio combining matched to its own user's channel, so
co-channel users of other cells enter as residual interference after
combining.  Energy efficiency is spectral efficiency per watt of total
(transmit + circuit) power.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import NetworkConfig
from .topology import ChannelRealization, LargeScaleFading, Topology, sample_topology, \
    sample_large_scale_fading, sample_channels

__all__ = [
    "PowerProfile", "CombinerSet", "LinkMetrics", "LinkContext",
    "mrc_combiner", "build_combiners", "sinr", "rate", "power_sum", "user_ee",
    "group_ee", "network_ee", "compute_link_metrics", "sample_link_context",
    "power_profile_from_strategies", "validate_power_profile",
]

# mapping (cell, subcarrier) -> transmit power in watts, one entry per active link
PowerProfile = dict


def mrc_combiner(g: np.ndarray) -> np.ndarray:
    """Unit-norm maximum-ratio combiner matched to the desired channel."""
    norm = np.linalg.norm(g)
    if norm == 0:
        raise ValueError("cannot build a combiner for an all-zero channel")
    return g / norm


@dataclass
class CombinerSet:
    """One receive combiner per active link, keyed (cell, subcarrier)."""

    a: dict

    def combiner(self, cell: int, subcarrier: int) -> np.ndarray:
        return self.a[(cell, subcarrier)]


def build_combiners(topology: Topology, channels: ChannelRealization) -> CombinerSet:
    a = {}
    for cell, sc in topology.links():
        a[(cell, sc)] = mrc_combiner(channels.vector(cell, cell, sc))
    return CombinerSet(a=a)


@dataclass
class LinkContext:
    """Everything static about one drop: geometry, fading, channels, combiners.

    Transmit powers are the only free variable on top of a context, so all
    algorithms evaluating the same drop share exactly these realizations.
    """

    config: NetworkConfig
    topology: Topology
    fading: LargeScaleFading
    channels: ChannelRealization
    combiners: CombinerSet


def sample_link_context(config: NetworkConfig, rng: np.random.Generator) -> LinkContext:
    """Sample one full drop: topology, then shadowing, then fast fading."""
    topology = sample_topology(config, rng)
    fading = sample_large_scale_fading(topology, config, rng)
    channels = sample_channels(topology, fading, config, rng)
    combiners = build_combiners(topology, channels)
    return LinkContext(
        config=config, topology=topology, fading=fading,
        channels=channels, combiners=combiners,
    )


def sinr(context: LinkContext, profile: PowerProfile, cell: int, subcarrier: int) -> float:
    """Post-combining SINR of the user served by `cell` on `subcarrier`.

    Interference comes only from co-channel users of other cells; OFDMA
    keeps a cell's own users orthogonal.
    """
    a = context.combiners.combiner(cell, subcarrier)
    g_own = context.channels.vector(cell, cell, subcarrier)
    signal = profile[(cell, subcarrier)] * np.abs(np.vdot(a, g_own)) ** 2
    interference = 0.0
    for other in context.topology.cells_on(subcarrier):
        if other == cell:
            continue
        g_int = context.channels.vector(cell, other, subcarrier)
        interference += profile[(other, subcarrier)] * np.abs(np.vdot(a, g_int)) ** 2
    noise = float(np.vdot(a, a).real) * context.config.noise_power
    return float(signal / (interference + noise))


def rate(sinr_value: float) -> float:
    """Spectral efficiency in bit/s/Hz."""
    return float(np.log2(1.0 + sinr_value))


def power_sum(transmit_power: float, config: NetworkConfig) -> float:
    """Total power drawn by the user: transmit plus circuit."""
    return transmit_power + config.circuit_power


def user_ee(context: LinkContext, profile: PowerProfile, cell: int, subcarrier: int) -> float:
    """Energy efficiency of one link, bit/s/Hz per watt."""
    r = rate(sinr(context, profile, cell, subcarrier))
    return r / power_sum(profile[(cell, subcarrier)], context.config)


def group_ee(context: LinkContext, profile: PowerProfile, subcarrier: int) -> float:
    """Sum energy efficiency of the co-channel group on one subcarrier."""
    total = 0.0
    for cell in context.topology.cells_on(subcarrier):
        total += user_ee(context, profile, cell, subcarrier)
    return total


def network_ee(context: LinkContext, profile: PowerProfile) -> float:
    """Network energy efficiency: sum over subcarriers of group EE.

    Accumulation order is fixed (subcarriers ascending, cells ascending
    inside each group) so the result is bit-reproducible.
    """
    total = 0.0
    for sc in context.topology.occupied_subcarriers():
        total += group_ee(context, profile, sc)
    return total


@dataclass
class LinkMetrics:
    """Per-link and aggregate metrics for one power profile on one drop."""

    sinr: dict          # (cell, subcarrier) -> post-combining SINR
    rate: dict          # (cell, subcarrier) -> bit/s/Hz
    ee: dict            # (cell, subcarrier) -> bit/s/Hz/W
    group_ee: dict      # subcarrier -> sum EE of its co-channel group
    network_ee: float

    def cell_ee(self, cell: int) -> float:
        """Sum EE over one cell's links, subcarriers ascending."""
        return sum(v for (c, sc), v in sorted(self.ee.items(), key=lambda kv: kv[0][1])
                   if c == cell)


def compute_link_metrics(context: LinkContext, profile: PowerProfile) -> LinkMetrics:
    validate_power_profile(context, profile)
    sinr_map = {}
    rate_map = {}
    ee_map = {}
    group_map = {}
    total = 0.0
    for sc in context.topology.occupied_subcarriers():
        g_total = 0.0
        for cell in context.topology.cells_on(sc):
            s = sinr(context, profile, cell, sc)
            r = rate(s)
            e = r / power_sum(profile[(cell, sc)], context.config)
            sinr_map[(cell, sc)] = s
            rate_map[(cell, sc)] = r
            ee_map[(cell, sc)] = e
            g_total += e
        group_map[sc] = g_total
        total += g_total
    return LinkMetrics(sinr=sinr_map, rate=rate_map, ee=ee_map,
                       group_ee=group_map, network_ee=total)


def power_profile_from_strategies(context: LinkContext, strategies: dict) -> PowerProfile:
    """Map per-link strategy indices onto the discrete power levels."""
    levels = context.config.power_levels
    profile = {}
    for link, idx in strategies.items():
        if not 0 <= idx < len(levels):
            raise ValueError(f"strategy index {idx} out of range for link {link}")
        profile[link] = levels[idx]
    return profile


def validate_power_profile(context: LinkContext, profile: PowerProfile) -> None:
    """Profile must cover exactly the active links with positive powers."""
    links = set(context.topology.links())
    keys = set(profile)
    if keys != links:
        missing = sorted(links - keys)
        extra = sorted(keys - links)
        raise ValueError(f"power profile mismatch: missing {missing}, extra {extra}")
    for link, p in profile.items():
        if p <= 0:
            raise ValueError(f"non-positive power {p} on link {link}")
