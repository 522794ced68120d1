"""Exact-event-time simulation of the source/drone/cellular-gossip network.

``run`` executes the event loop on the compiled kernel when the extension
built, falling back to the pure-Python twin otherwise; both produce
bit-identical reports for a given (config, seed).  Events are scheduled by
superposition sampling at the constant total rate; per-node time-averaged
ages come from lazy counter integrals, so a run is O(1) work per event.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..config import ConfigError, NetworkConfig
from ..ctmc import MobilityKind, build_generator
from ..rng import seed_state
from . import _kernel_py

try:
    from . import _kernel_cy
except ImportError:  # extension not built; pure-Python fallback
    _kernel_cy = None

HAVE_COMPILED_KERNEL = _kernel_cy is not None

EVENT_KINDS = (
    "source_update",
    "source_to_drone",
    "drone_move",
    "drone_disseminate",
    "gossip",
)

_MODE_FULLY_CONNECTED = 0
_MODE_GENERAL = 1
_MODE_SINGLE_CELL = 2


@dataclass(frozen=True)
class SimState:
    """Snapshot of the simulation counters at the end of a run."""

    now: float
    source_version: int
    drone_version: int
    drone_cell: int
    node_versions: np.ndarray
    node_age_integrals: np.ndarray  # per-node accumulated integral of N_i dt
    source_age_integral: float  # accumulated integral of N_0 dt
    rng_state: tuple[int, int, int, int]


@dataclass(frozen=True)
class RunReport:
    """Post-burn-in metrics of one simulation run."""

    per_node_avg_age: np.ndarray
    drone_age_histogram: dict[int, float]
    renewal_samples: list[np.ndarray]
    return_time_samples: list[np.ndarray]
    dissemination_lag_samples: list[np.ndarray]
    min_cell_age_avg: np.ndarray
    event_counts: dict[str, int]
    window: float
    num_events: int
    final_state: SimState
    trace: list | None = field(default=None, repr=False)


def _kernel_inputs(cfg: NetworkConfig):
    n, f = cfg.n, cfg.f
    lam_m = cfg.lambda_m
    lam_total = cfg.lambda_e + cfg.lambda_s + lam_m + cfg.lambda_d + n * cfg.lambda_gossip
    if not lam_total > 0.0:
        raise ValueError("total event rate is zero; nothing to simulate")
    c_e = cfg.lambda_e / lam_total
    c_s = c_e + cfg.lambda_s / lam_total
    c_m = c_s + lam_m / lam_total
    c_d = c_m + cfg.lambda_d / lam_total

    if f == 1:
        mode = _MODE_SINGLE_CELL
        jump_cum = np.zeros((1, 1))
    elif cfg.mobility.kind is MobilityKind.FULLY_CONNECTED:
        mode = _MODE_FULLY_CONNECTED
        jump_cum = np.zeros((1, 1))
    else:
        # General mobility runs as a uniformized chain at rate move_rate:
        # jump probabilities Q[i, j] / move_rate, any exit-rate deficit
        # becomes a self-loop.  For uniform-exit chains (ring) this is
        # exactly the embedded jump chain.
        mode = _MODE_GENERAL
        gen = build_generator(cfg.mobility)
        exit_rates = gen.exit_rates()
        if exit_rates.max() > lam_m * (1.0 + 1e-9):
            raise ConfigError(
                "move_rate_covers_exit_rates",
                f"move_rate={lam_m} must be >= the largest exit rate "
                f"{exit_rates.max()} of the custom generator",
            )
        probs = gen.entries / lam_m
        np.fill_diagonal(probs, 0.0)
        jump_cum = np.cumsum(probs, axis=1)
    return lam_total, c_e, c_s, c_m, c_d, mode, jump_cum


def run(cfg: NetworkConfig, *, kernel: str = "auto", collect_trace: bool = False) -> RunReport:
    """Simulate one network and return its metrics report.

    ``kernel`` is "auto", "compiled", or "python"; trace collection is only
    implemented by the pure kernel and forces it.  Deterministic given
    (cfg, cfg.seed) regardless of kernel choice.
    """
    if kernel not in ("auto", "compiled", "python"):
        raise ValueError(f"unknown kernel {kernel!r}")
    if kernel == "compiled" and not HAVE_COMPILED_KERNEL:
        raise RuntimeError("compiled kernel requested but the extension is not built")
    if kernel == "compiled" and collect_trace:
        raise ValueError("trace collection requires the python kernel")
    use_compiled = HAVE_COMPILED_KERNEL and not collect_trace and kernel != "python"

    lam_total, c_e, c_s, c_m, c_d, mode, jump_cum = _kernel_inputs(cfg)
    t_burn = cfg.burn_in_fraction * cfg.horizon
    s0, s1, s2, s3 = seed_state(cfg.seed)
    args = (
        cfg.n, cfg.f, cfg.nodes_per_cell,
        lam_total, c_e, c_s, c_m, c_d,
        cfg.horizon, t_burn, mode, jump_cum,
        s0, s1, s2, s3,
    )
    if use_compiled:
        raw = _kernel_cy.simulate(*args)
    else:
        raw = _kernel_py.simulate(*args, collect_trace=collect_trace)

    window = cfg.horizon - t_burn
    acc_src = raw["acc_source"]
    acc_node = np.asarray(raw["acc_node"], dtype=float)
    acc_cell = np.asarray(raw["acc_cell_max"], dtype=float)
    state = SimState(
        now=cfg.horizon,
        source_version=int(raw["source_version"]),
        drone_version=int(raw["drone_version"]),
        drone_cell=int(raw["drone_cell"]),
        node_versions=np.asarray(raw["node_versions"], dtype=np.int64),
        node_age_integrals=acc_node,
        source_age_integral=acc_src,
        rng_state=tuple(int(w) for w in raw["rng_state"]),
    )
    return RunReport(
        per_node_avg_age=(acc_src - acc_node) / window,
        drone_age_histogram={int(k): v / window for k, v in sorted(raw["hist"].items())},
        renewal_samples=[np.asarray(xs, dtype=float) for xs in raw["renewal"]],
        return_time_samples=[np.asarray(xs, dtype=float) for xs in raw["return_time"]],
        dissemination_lag_samples=[np.asarray(xs, dtype=float) for xs in raw["lag"]],
        min_cell_age_avg=(acc_src - acc_cell) / window,
        event_counts={kind: int(c) for kind, c in zip(EVENT_KINDS, raw["counts"])},
        window=window,
        num_events=int(raw["num_events"]),
        final_state=state,
        trace=raw["trace"],
    )


class InsufficientSamplesError(ValueError):
    pass


def measure_renewals(report: RunReport, cell: int) -> tuple[float, float, int]:
    """Sample mean, unbiased variance, and count of one cell's renewal gaps.

    Gaps are measured between consecutive drone deliveries into the cell
    after burn-in; the partial interval before the first delivery is
    discarded.  Variance is NaN when only a single gap was observed.
    """
    samples = report.renewal_samples[cell]
    if samples.size < 1:
        raise InsufficientSamplesError(
            f"cell {cell} has {samples.size} renewal gaps; need at least 1"
        )
    mean = float(samples.mean())
    variance = float(samples.var(ddof=1)) if samples.size >= 2 else float("nan")
    return mean, variance, int(samples.size)


def measure_drone_age(report: RunReport) -> dict[int, float]:
    """Time-weighted empirical pmf of the drone's version age."""
    if report.window <= 0.0:
        raise ValueError("empty measurement window")
    return dict(report.drone_age_histogram)


def measure_dissemination_lag(report: RunReport, cell: int) -> tuple[float, int]:
    """Mean lag from a drone delivery until the whole cell holds that version."""
    samples = report.dissemination_lag_samples[cell]
    if samples.size < 1:
        raise InsufficientSamplesError(f"cell {cell} has no completed lag trackers")
    return float(samples.mean()), int(samples.size)
