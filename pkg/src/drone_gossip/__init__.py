"""Version-age analysis of a drone-serviced cellular gossip network.

A source versions itself and feeds a mobile drone; the drone rides a CTMC
over cells and delivers versions into its current cell, where nodes spread
them by push gossip.  The package pairs an exact-event-time simulator with
a phase-type analytics engine so the closed-form results (drone age law,
inter-renewal moments, dual-bottleneck regimes) can be computed and checked
against Monte Carlo.
"""

from .config import ConfigError, NetworkConfig, fully_connected_config
from .ctmc import (
    GeneratorMatrix,
    MobilityKind,
    MobilitySpec,
    ReducibleChainError,
    StationaryDistribution,
    build_generator,
    embedded_jump_distribution,
    stationary_distribution,
)
from .engine import (
    HAVE_COMPILED_KERNEL,
    RunReport,
    SimState,
    measure_dissemination_lag,
    measure_drone_age,
    measure_renewals,
    run,
)
from .phasetype import (
    PhaseTypeModel,
    Regime,
    RegimeReport,
    RenewalMoments,
    build_subgenerator,
    chebyshev_tail_bound,
    classify_regime,
    drone_age_pmf,
    fully_connected_moments,
    renewal_moments,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "GeneratorMatrix",
    "HAVE_COMPILED_KERNEL",
    "MobilityKind",
    "MobilitySpec",
    "NetworkConfig",
    "PhaseTypeModel",
    "ReducibleChainError",
    "Regime",
    "RegimeReport",
    "RenewalMoments",
    "RunReport",
    "SimState",
    "StationaryDistribution",
    "build_generator",
    "build_subgenerator",
    "chebyshev_tail_bound",
    "classify_regime",
    "drone_age_pmf",
    "embedded_jump_distribution",
    "fully_connected_config",
    "fully_connected_moments",
    "measure_dissemination_lag",
    "measure_drone_age",
    "measure_renewals",
    "renewal_moments",
    "run",
    "stationary_distribution",
]
