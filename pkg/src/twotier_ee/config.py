"""Scenario parameters for the two-tier uplink simulator."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

__all__ = ["NetworkConfig", "ConfigError", "load_config", "parse_config", "format_config"]


class ConfigError(ValueError):
    """Invalid scenario parameters or malformed config file."""


# L=8 levels, log-spaced 1 mW .. 100 mW (typical UE uplink range)
DEFAULT_POWER_LEVELS = tuple(10.0 ** (-3.0 + 2.0 * k / 7.0) for k in range(8))


@dataclass(frozen=True)
class NetworkConfig:
    """All scenario parameters for one two-tier network drop.

    Cell index 0 is the macro cell; 1..n_small_cells are the small cells.
    Shadowing is parameterized by the dB standard deviation, so a dB
    variance of 10 corresponds to shadowing_std_db = sqrt(10).
    """

    n_small_cells: int                    # K
    n_subcarriers: int                    # N
    n_users_per_cell: int                 # N_u, identical in every cell
    macro_radius: float = 1000.0          # m
    small_radius: float = 100.0           # m
    n_antennas_mbs: int = 128
    n_antennas_sbs: int = 4
    path_loss_exponent: float = 3.8
    shadowing_std_db: float = math.sqrt(10.0)
    antenna_constant: float = 1.0
    noise_psd_dbm_per_hz: float = -194.0
    subcarrier_bandwidth_hz: float = 180e3
    power_levels: tuple = DEFAULT_POWER_LEVELS
    circuit_power: float = 0.01           # W, per-user static circuit power
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "power_levels", tuple(float(p) for p in self.power_levels))
        if not self.macro_radius > self.small_radius > 0:
            raise ConfigError("radii must satisfy macro_radius > small_radius > 0")
        if self.n_small_cells < 0:
            raise ConfigError("n_small_cells must be >= 0")
        if self.n_subcarriers < 1:
            raise ConfigError("n_subcarriers must be >= 1")
        if self.n_users_per_cell < 1:
            raise ConfigError("n_users_per_cell must be >= 1")
        if self.n_users_per_cell > self.n_subcarriers:
            raise ConfigError(
                "n_users_per_cell must be <= n_subcarriers (one user per subcarrier per cell)"
            )
        if self.n_antennas_sbs < 1 or self.n_antennas_mbs < self.n_antennas_sbs:
            raise ConfigError("antenna counts must satisfy n_antennas_mbs >= n_antennas_sbs >= 1")
        if self.antenna_constant <= 0:
            raise ConfigError("antenna_constant must be > 0")
        if self.path_loss_exponent <= 0:
            raise ConfigError("path_loss_exponent must be > 0")
        if self.shadowing_std_db < 0:
            raise ConfigError("shadowing_std_db must be >= 0")
        if self.subcarrier_bandwidth_hz <= 0:
            raise ConfigError("subcarrier_bandwidth_hz must be > 0")
        if len(self.power_levels) < 1:
            raise ConfigError("power_levels must contain at least one level")
        if any(p <= 0 for p in self.power_levels):
            raise ConfigError("power levels must all be > 0")
        if any(b <= a for a, b in zip(self.power_levels, self.power_levels[1:])):
            raise ConfigError("power levels must be strictly increasing")
        if self.circuit_power <= 0:
            raise ConfigError("circuit_power must be > 0")
        if self.rng_seed < 0:
            raise ConfigError("rng_seed must be a nonnegative integer")

    @property
    def n_cells(self) -> int:
        """Total number of cells, macro included (K+1)."""
        return self.n_small_cells + 1

    @property
    def n_power_levels(self) -> int:
        return len(self.power_levels)

    @property
    def noise_power(self) -> float:
        """Per-subcarrier noise power in watts (PSD in dBm/Hz times bandwidth)."""
        return 10.0 ** ((self.noise_psd_dbm_per_hz - 30.0) / 10.0) * self.subcarrier_bandwidth_hz


_INT_FIELDS = {
    "n_small_cells", "n_subcarriers", "n_users_per_cell",
    "n_antennas_mbs", "n_antennas_sbs", "rng_seed",
}
_LIST_FIELDS = {"power_levels"}
_FIELD_NAMES = {f.name for f in fields(NetworkConfig)}


def parse_config(text: str, source: str = "<string>") -> NetworkConfig:
    """Parse ``key = value`` lines into a NetworkConfig.

    Blank lines and ``#`` comments are ignored.  Keys must be exactly the
    NetworkConfig field names; anything else is rejected so typos do not
    silently fall back to defaults.  power_levels is a comma-separated list.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _FIELD_NAMES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            if key in _LIST_FIELDS:
                values[key] = tuple(float(tok) for tok in value.replace(",", " ").split())
            elif key in _INT_FIELDS:
                values[key] = int(value)
            else:
                values[key] = float(value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r}") from exc
    try:
        return NetworkConfig(**values)
    except TypeError as exc:
        # missing required fields
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path) -> NetworkConfig:
    """Load a NetworkConfig from a key-value text file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))


def format_config(config: NetworkConfig) -> str:
    """Render a config as key-value text that load_config reads back.

    Floats use repr, the shortest exact representation, so a format/parse
    round trip reproduces the config bit for bit.
    """
    lines = []
    for f in fields(NetworkConfig):
        value = getattr(config, f.name)
        if f.name in _LIST_FIELDS:
            lines.append(f"{f.name} = {', '.join(repr(float(v)) for v in value)}")
        elif f.name in _INT_FIELDS:
            lines.append(f"{f.name} = {value}")
        else:
            lines.append(f"{f.name} = {value!r}")
    return "\n".join(lines) + "\n"
