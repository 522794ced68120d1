"""Continuous-time Markov chains for the drone's cell-to-cell motion.

Builds generator matrices for the named mobility families (fully connected,
ring) or accepts a custom generator, computes the stationary distribution by
a dense linear solve, and exposes the embedded jump chain used by the
event-driven simulator.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

# ~100x double epsilon: tight enough to catch construction bugs, loose
# enough for honest rounding.
ROW_SUM_TOL = 1e-12
STATIONARY_SUM_TOL = 1e-10
STATIONARY_RESIDUAL_TOL = 1e-9


class MobilityKind(str, Enum):
    FULLY_CONNECTED = "fully_connected"
    RING = "ring"
    CUSTOM = "custom"


class ReducibleChainError(ValueError):
    """Raised when a chain is not a single communicating class."""

    def __init__(self, states: list[int]):
        self.states = states
        super().__init__(
            "chain is reducible; states not communicating with state 0: "
            f"{states}"
        )


def _check_generator_rows(entries: np.ndarray, what: str) -> None:
    dim = entries.shape[0]
    if entries.ndim != 2 or entries.shape[1] != dim:
        raise ValueError(f"{what} must be a square matrix, got shape {entries.shape}")
    offdiag = entries.copy()
    np.fill_diagonal(offdiag, 0.0)
    if np.any(offdiag < 0.0):
        raise ValueError(f"{what} has negative off-diagonal rates")
    row_sums = entries.sum(axis=1)
    scale = np.maximum(np.abs(entries).max(axis=1), 1.0)
    bad = np.abs(row_sums) > ROW_SUM_TOL * scale
    if np.any(bad):
        rows = np.nonzero(bad)[0].tolist()
        raise ValueError(f"{what} rows {rows} do not sum to zero")


@dataclass(frozen=True)
class MobilitySpec:
    """Topology and rate description of the drone's mobility CTMC."""

    kind: MobilityKind
    num_cells: int
    move_rate: float
    custom_generator: np.ndarray | None = None

    def __post_init__(self):
        if self.num_cells < 1:
            raise ValueError(f"num_cells must be >= 1, got {self.num_cells}")
        if not (self.move_rate > 0.0) or not np.isfinite(self.move_rate):
            raise ValueError(f"move_rate must be positive and finite, got {self.move_rate}")
        if self.kind is MobilityKind.CUSTOM:
            if self.custom_generator is None:
                raise ValueError("custom mobility requires custom_generator")
            mat = np.asarray(self.custom_generator, dtype=float)
            if mat.shape != (self.num_cells, self.num_cells):
                raise ValueError(
                    f"custom_generator shape {mat.shape} does not match "
                    f"num_cells={self.num_cells}"
                )
            _check_generator_rows(mat, "custom_generator")
            object.__setattr__(self, "custom_generator", mat)
        elif self.custom_generator is not None:
            raise ValueError("custom_generator is only valid with kind=custom")


@dataclass(frozen=True)
class GeneratorMatrix:
    """Validated CTMC generator: nonnegative off-diagonals, zero row sums."""

    entries: np.ndarray
    dim: int

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        _check_generator_rows(entries, "generator")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dim", entries.shape[0])

    def exit_rates(self) -> np.ndarray:
        return -np.diag(self.entries)


@dataclass(frozen=True)
class StationaryDistribution:
    """Probability vector pi with pi @ Q = 0."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if np.any(probs < 0.0):
            raise ValueError("stationary probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > STATIONARY_SUM_TOL:
            raise ValueError("stationary probabilities must sum to 1")
        object.__setattr__(self, "probs", probs)


def build_generator(spec: MobilitySpec) -> GeneratorMatrix:
    """Generator matrix for a mobility description.

    Fully connected splits the exit rate equally over all other cells, the
    ring over the two cyclic neighbors; a single cell has no transitions.
    """
    f = spec.num_cells
    rate = spec.move_rate
    if spec.kind is MobilityKind.CUSTOM:
        return GeneratorMatrix(spec.custom_generator.copy(), f)
    if f == 1:
        return GeneratorMatrix(np.zeros((1, 1)), 1)
    if spec.kind is MobilityKind.FULLY_CONNECTED:
        q = np.full((f, f), rate / (f - 1))
        np.fill_diagonal(q, -rate)
        return GeneratorMatrix(q, f)
    # ring: rate/2 to each cyclic neighbor; f == 2 degenerates to a single
    # edge carrying the full rate.
    q = np.zeros((f, f))
    if f == 2:
        q[0, 1] = q[1, 0] = rate
    else:
        for i in range(f):
            q[i, (i + 1) % f] += rate / 2.0
            q[i, (i - 1) % f] += rate / 2.0
    np.fill_diagonal(q, -q.sum(axis=1))
    return GeneratorMatrix(q, f)


def _communicating_with_zero(entries: np.ndarray) -> np.ndarray:
    """Boolean mask of states in the communicating class of state 0."""
    dim = entries.shape[0]
    adj = entries > 0.0
    np.fill_diagonal(adj, False)

    def reachable(a: np.ndarray) -> np.ndarray:
        seen = np.zeros(dim, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in np.nonzero(a[i])[0]:
                if not seen[j]:
                    seen[j] = True
                    frontier.append(int(j))
        return seen

    return reachable(adj) & reachable(adj.T)


def stationary_distribution(gen: GeneratorMatrix) -> StationaryDistribution:
    """Unique pi with pi @ Q = 0 and sum(pi) = 1.

    Checks irreducibility structurally first, then solves the transposed
    system with the last (redundant) equation replaced by the normalization
    constraint, using dense elimination with partial pivoting.
    """
    f = gen.dim
    if f == 1:
        return StationaryDistribution(np.ones(1))
    comm = _communicating_with_zero(gen.entries)
    if not comm.all():
        raise ReducibleChainError(np.nonzero(~comm)[0].tolist())
    a = gen.entries.T.copy()
    a[-1, :] = 1.0
    b = np.zeros(f)
    b[-1] = 1.0
    probs = np.linalg.solve(a, b)
    # Irreducible chains have strictly positive pi; anything below a tiny
    # negative slack signals a genuinely bad solve.
    if probs.min() < -1e-12:
        raise ValueError("stationary solve produced negative probabilities")
    probs = np.maximum(probs, 0.0)
    probs /= probs.sum()
    return StationaryDistribution(probs)


def embedded_jump_distribution(gen: GeneratorMatrix, state: int) -> np.ndarray:
    """Jump probabilities out of ``state`` in the embedded chain.

    A single-cell chain returns the all-zero vector: there is nowhere to
    jump and callers must treat moves as no-ops.
    """
    f = gen.dim
    if not 0 <= state < f:
        raise IndexError(f"state {state} out of range for dim {f}")
    if f == 1:
        return np.zeros(1)
    exit_rate = -gen.entries[state, state]
    if exit_rate <= 0.0:
        raise ValueError(f"state {state} has no positive exit rate")
    probs = gen.entries[state].copy() / exit_rate
    probs[state] = 0.0
    return probs
