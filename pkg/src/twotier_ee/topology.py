"""Network geometry, large-scale fading, and Rayleigh channel realizations.

Everything here is driven by an explicit numpy Generator, so a fixed
(config, seed) pair reproduces the exact same drop.  Cell 0 is the macro
cell; users are identified by their (serving cell, subcarrier) pair since
OFDMA allows at most one user per subcarrier per cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import NetworkConfig

__all__ = [
    "PlacementError", "User", "Topology", "LargeScaleFading", "ChannelRealization",
    "sample_topology", "large_scale_gain", "draw_shadowing",
    "sample_large_scale_fading", "sample_channels",
]

# BS-user distances are clamped below this to keep the path-loss gain finite
MIN_DISTANCE_M = 1.0

# attempts for the non-overlapping SBS placement before giving up
_PLACEMENT_RETRY_CAP = 10_000


class PlacementError(RuntimeError):
    """Geometry could not be sampled (overconstrained configuration)."""


@dataclass(frozen=True)
class User:
    cell: int          # serving cell, 0 = macro
    subcarrier: int    # 0-based subcarrier index
    position: tuple    # (x, y) in meters


@dataclass
class Topology:
    """One placement of base stations and users.

    Treated as read-only after construction; lookup tables are built once.
    """

    mbs_position: np.ndarray
    sbs_positions: np.ndarray          # (K, 2)
    users: list
    n_subcarriers: int
    _by_link: dict = field(init=False, repr=False)
    _cells_on: dict = field(init=False, repr=False)

    def __post_init__(self):
        self._by_link = {(u.cell, u.subcarrier): u for u in self.users}
        if len(self._by_link) != len(self.users):
            raise ValueError("more than one user on a (cell, subcarrier) pair")
        self._cells_on = {}
        for u in self.users:
            self._cells_on.setdefault(u.subcarrier, []).append(u.cell)
        for cells in self._cells_on.values():
            cells.sort()

    @property
    def n_small_cells(self) -> int:
        return len(self.sbs_positions)

    @property
    def n_cells(self) -> int:
        return len(self.sbs_positions) + 1

    def bs_position(self, cell: int) -> np.ndarray:
        return self.mbs_position if cell == 0 else self.sbs_positions[cell - 1]

    def has_user(self, cell: int, subcarrier: int) -> bool:
        return (cell, subcarrier) in self._by_link

    def user(self, cell: int, subcarrier: int) -> User:
        return self._by_link[(cell, subcarrier)]

    def cells_on(self, subcarrier: int) -> list:
        """Cells with a user on this subcarrier, ascending (the co-channel group)."""
        return list(self._cells_on.get(subcarrier, []))

    def occupied_subcarriers(self) -> list:
        """Subcarriers carrying at least one user, ascending."""
        return sorted(self._cells_on)

    def links(self) -> list:
        """All (cell, subcarrier) pairs carrying a user, sorted by (subcarrier, cell)."""
        return sorted(self._by_link, key=lambda ks: (ks[1], ks[0]))


def _uniform_in_disc(center, radius: float, rng: np.random.Generator) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform())
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return np.asarray(center, dtype=float) + r * np.array([np.cos(theta), np.sin(theta)])


def sample_topology(config: NetworkConfig, rng: np.random.Generator) -> Topology:
    """Drop SBS centers and users for one realization.

    SBS centers are uniform in the macro disc, re-drawn until all pairwise
    distances are at least twice the small-cell radius (non-overlapping
    cells).  Users are uniform in their serving cell's disc, and each cell
    assigns its users to distinct subcarriers chosen uniformly without
    replacement.
    """
    mbs = np.zeros(2)
    sbs = []
    attempts = 0
    while len(sbs) < config.n_small_cells:
        if attempts >= _PLACEMENT_RETRY_CAP:
            raise PlacementError(
                f"could not place {config.n_small_cells} non-overlapping small cells "
                f"in the macro disc after {_PLACEMENT_RETRY_CAP} attempts"
            )
        attempts += 1
        candidate = _uniform_in_disc(mbs, config.macro_radius, rng)
        if all(np.linalg.norm(candidate - p) >= 2.0 * config.small_radius for p in sbs):
            sbs.append(candidate)
    sbs_positions = np.array(sbs) if sbs else np.zeros((0, 2))

    users = []
    for cell in range(config.n_cells):
        center = mbs if cell == 0 else sbs_positions[cell - 1]
        radius = config.macro_radius if cell == 0 else config.small_radius
        subcarriers = rng.choice(config.n_subcarriers, size=config.n_users_per_cell, replace=False)
        for sc in np.sort(subcarriers):
            pos = _uniform_in_disc(center, radius, rng)
            users.append(User(cell=cell, subcarrier=int(sc), position=(pos[0], pos[1])))
    return Topology(
        mbs_position=mbs,
        sbs_positions=sbs_positions,
        users=users,
        n_subcarriers=config.n_subcarriers,
    )


def large_scale_gain(distance: float, config: NetworkConfig, shadow_draw: float) -> float:
    """Large-scale channel gain: antenna constant times shadowing over d^alpha.

    Distances below MIN_DISTANCE_M are clamped so the gain stays finite.
    """
    if distance <= 0:
        raise ValueError(f"distance must be > 0, got {distance}")
    if shadow_draw <= 0:
        raise ValueError(f"shadow draw must be > 0, got {shadow_draw}")
    d = max(distance, MIN_DISTANCE_M)
    return config.antenna_constant * shadow_draw / d ** config.path_loss_exponent


def draw_shadowing(config: NetworkConfig, rng: np.random.Generator, size=None):
    """Log-normal shadowing: 10*log10(value) is N(0, shadowing_std_db^2)."""
    return 10.0 ** (rng.normal(0.0, config.shadowing_std_db, size=size) / 10.0)


@dataclass
class LargeScaleFading:
    """Per-link large-scale gains, keyed by (receiver cell, tx cell, subcarrier).

    The sampled shadowing values are kept alongside the gains so a drop can
    be reproduced or re-derived exactly.
    """

    beta: dict
    shadow: dict

    def gain(self, receiver: int, cell: int, subcarrier: int) -> float:
        return self.beta[(receiver, cell, subcarrier)]


def sample_large_scale_fading(
    topology: Topology, config: NetworkConfig, rng: np.random.Generator
) -> LargeScaleFading:
    """Draw shadowing and compute the gain from every user to every BS.

    One independent shadowing draw per (receiver BS, user) link, fixed for
    the lifetime of the drop.  Iteration order is fixed (receivers ascending,
    users sorted by (subcarrier, cell)) so the draw is seed-reproducible.
    """
    beta = {}
    shadow = {}
    links = topology.links()
    for receiver in range(topology.n_cells):
        rx_pos = topology.bs_position(receiver)
        for cell, sc in links:
            user = topology.user(cell, sc)
            distance = float(np.linalg.norm(rx_pos - np.asarray(user.position)))
            varsigma = float(draw_shadowing(config, rng))
            shadow[(receiver, cell, sc)] = varsigma
            beta[(receiver, cell, sc)] = large_scale_gain(
                max(distance, MIN_DISTANCE_M), config, varsigma
            )
    return LargeScaleFading(beta=beta, shadow=shadow)


@dataclass
class ChannelRealization:
    """Complex channel vectors g = sqrt(beta) * h, h ~ CN(0, I).

    Keyed by (receiver cell, tx cell, subcarrier); an entry exists iff the
    tx cell has a user on that subcarrier.  Vector length is the receiver's
    antenna count.
    """

    g: dict

    def vector(self, receiver: int, cell: int, subcarrier: int) -> np.ndarray:
        return self.g[(receiver, cell, subcarrier)]


def _complex_gaussian(n: int, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)


def sample_channels(
    topology: Topology,
    fading: LargeScaleFading,
    config: NetworkConfig,
    rng: np.random.Generator,
) -> ChannelRealization:
    """Draw one Rayleigh realization for every (receiver, user) link."""
    g = {}
    links = topology.links()
    for receiver in range(topology.n_cells):
        n_rx = config.n_antennas_mbs if receiver == 0 else config.n_antennas_sbs
        for cell, sc in links:
            h = _complex_gaussian(n_rx, rng)
            g[(receiver, cell, sc)] = np.sqrt(fading.beta[(receiver, cell, sc)]) * h
    return ChannelRealization(g=g)
