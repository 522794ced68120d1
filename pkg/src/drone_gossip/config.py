"""Network configuration shared by the simulator, analytics, and CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ctmc import MobilityKind, MobilitySpec


class ConfigError(ValueError):
    """Invalid configuration; ``constraint`` names the violated rule."""

    def __init__(self, constraint: str, detail: str):
        self.constraint = constraint
        super().__init__(f"constraint '{constraint}' violated: {detail}")


@dataclass(frozen=True)
class NetworkConfig:
    """All rates and sizes of one simulated network.

    ``lambda_gossip`` is the per-node total gossip rate, split equally over
    the node's cell neighbors.  ``mobility`` carries the move rate and the
    cell topology; its cell count must equal ``f``.
    """

    n: int
    f: int
    lambda_e: float
    lambda_s: float
    lambda_gossip: float
    lambda_d: float
    mobility: MobilitySpec
    horizon: float
    burn_in_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("positive_n", f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.f, int) or self.f < 1:
            raise ConfigError("positive_f", f"f must be a positive integer, got {self.f!r}")
        if self.n % self.f != 0:
            raise ConfigError("f_divides_n", f"f must divide n (n={self.n}, f={self.f})")
        for name, value, strict in (
            ("lambda_e", self.lambda_e, False),
            ("lambda_s", self.lambda_s, True),
            ("lambda_gossip", self.lambda_gossip, False),
            ("lambda_d", self.lambda_d, True),
        ):
            if not math.isfinite(value):
                raise ConfigError("finite_rates", f"{name} must be finite, got {value}")
            if strict and not value > 0.0:
                raise ConfigError(f"positive_{name}", f"{name} must be positive, got {value}")
            if not strict and value < 0.0:
                raise ConfigError(f"nonnegative_{name}", f"{name} must be nonnegative, got {value}")
        if self.mobility.num_cells != self.f:
            raise ConfigError(
                "mobility_cells_match_f",
                f"mobility.num_cells={self.mobility.num_cells} must equal f={self.f}",
            )
        if not (self.horizon > 0.0 and math.isfinite(self.horizon)):
            raise ConfigError("positive_horizon", f"horizon must be positive, got {self.horizon}")
        if not 0.0 <= self.burn_in_fraction < 1.0:
            raise ConfigError(
                "burn_in_fraction_range",
                f"burn_in_fraction must be in [0, 1), got {self.burn_in_fraction}",
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError("seed_u64", f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def nodes_per_cell(self) -> int:
        return self.n // self.f

    @property
    def lambda_m(self) -> float:
        return self.mobility.move_rate

    def with_seed(self, seed: int) -> "NetworkConfig":
        return NetworkConfig(
            n=self.n,
            f=self.f,
            lambda_e=self.lambda_e,
            lambda_s=self.lambda_s,
            lambda_gossip=self.lambda_gossip,
            lambda_d=self.lambda_d,
            mobility=self.mobility,
            horizon=self.horizon,
            burn_in_fraction=self.burn_in_fraction,
            seed=seed,
        )


def fully_connected_config(
    n: int,
    f: int,
    *,
    lambda_e: float = 1.0,
    lambda_s: float = 1.0,
    lambda_gossip: float = 1.0,
    lambda_d: float = 1.0,
    lambda_m: float = 1.0,
    horizon: float = 1000.0,
    burn_in_fraction: float = 0.2,
    seed: int = 0,
) -> NetworkConfig:
    """Convenience constructor for the common fully-connected-mobility case."""
    return NetworkConfig(
        n=n,
        f=f,
        lambda_e=lambda_e,
        lambda_s=lambda_s,
        lambda_gossip=lambda_gossip,
        lambda_d=lambda_d,
        mobility=MobilitySpec(MobilityKind.FULLY_CONNECTED, f, lambda_m),
        horizon=horizon,
        burn_in_fraction=burn_in_fraction,
        seed=seed,
    )
