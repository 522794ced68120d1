import numpy as np
import pytest
from numpy.testing import assert_allclose

from drone_gossip.ctmc import (
    GeneratorMatrix,
    MobilityKind,
    MobilitySpec,
    ReducibleChainError,
    build_generator,
    embedded_jump_distribution,
    stationary_distribution,
)

from _oracles import null_space_stationary, random_irreducible_generator


def fc(f, rate):
    return MobilitySpec(MobilityKind.FULLY_CONNECTED, f, rate)


def ring(f, rate):
    return MobilitySpec(MobilityKind.RING, f, rate)


def custom(mat):
    mat = np.asarray(mat, dtype=float)
    return MobilitySpec(MobilityKind.CUSTOM, mat.shape[0], 1.0, mat)


class TestBuildGenerator:
    def test_single_cell_has_no_transitions(self):
        assert_allclose(build_generator(fc(1, 5.0)).entries, [[0.0]])

    def test_fully_connected_f3(self):
        expected = [[-2, 1, 1], [1, -2, 1], [1, 1, -2]]
        assert_allclose(build_generator(fc(3, 2.0)).entries, expected)

    def test_ring_f4_is_circulant(self):
        gen = build_generator(ring(4, 2.0))
        expected = [[-2, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -2]]
        assert_allclose(gen.entries, expected)
        assert_allclose(gen.entries.sum(axis=1), 0.0, atol=1e-12)

    def test_ring_f2_degenerates_to_single_edge(self):
        assert_allclose(build_generator(ring(2, 3.0)).entries, [[-3, 3], [3, -3]])

    def test_custom_passes_through_verbatim(self):
        mat = np.array([[-2.0, 2.0, 0.0], [1.0, -3.0, 2.0], [0.0, 1.0, -1.0]])
        assert_allclose(build_generator(custom(mat)).entries, mat)

    def test_custom_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            MobilitySpec(MobilityKind.CUSTOM, 3, 1.0, np.zeros((2, 2)))

    def test_nonpositive_move_rate_rejected(self):
        with pytest.raises(ValueError, match="move_rate"):
            fc(3, 0.0)
        with pytest.raises(ValueError, match="move_rate"):
            fc(3, -1.0)

    def test_custom_bad_row_sum_rejected(self):
        with pytest.raises(ValueError, match="sum to zero"):
            custom([[-1.0, 0.5], [1.0, -1.0]])

    def test_custom_negative_offdiagonal_rejected(self):
        with pytest.raises(ValueError, match="negative off-diagonal"):
            custom([[1.0, -1.0], [1.0, -1.0]])

    @pytest.mark.parametrize("spec", [fc(2, 0.7), fc(17, 3.0), ring(3, 1.1), ring(8, 2.5)])
    def test_row_sums_and_offdiagonals(self, spec):
        gen = build_generator(spec)
        offdiag = gen.entries.copy()
        np.fill_diagonal(offdiag, 0.0)
        assert (offdiag >= 0.0).all()
        scale = np.abs(gen.entries).max()
        assert np.abs(gen.entries.sum(axis=1)).max() <= 1e-12 * max(scale, 1.0)


class TestStationaryDistribution:
    def test_fully_connected_f4_uniform(self):
        pi = stationary_distribution(build_generator(fc(4, 1.0)))
        assert_allclose(pi.probs, [0.25, 0.25, 0.25, 0.25], atol=1e-12)

    def test_two_state_detailed_balance(self):
        a, b = 1.0, 3.0
        pi = stationary_distribution(build_generator(custom([[-a, a], [b, -b]])))
        assert_allclose(pi.probs, [0.75, 0.25], atol=1e-12)

    def test_ring_f5_uniform_vs_direct_solve_oracle(self):
        gen = build_generator(ring(5, 1.0))
        pi = stationary_distribution(gen)
        assert_allclose(pi.probs, np.full(5, 0.2), atol=1e-10)
        assert_allclose(pi.probs, null_space_stationary(gen.entries), atol=1e-9)

    @pytest.mark.parametrize("spec", [fc(2, 1.0), fc(9, 4.0), ring(3, 0.5), ring(12, 7.0)])
    def test_symmetric_chains_are_uniform(self, spec):
        pi = stationary_distribution(build_generator(spec))
        assert_allclose(pi.probs, np.full(spec.num_cells, 1.0 / spec.num_cells), atol=1e-10)

    @pytest.mark.parametrize("dim", [2, 5, 17, 60, 200])
    def test_random_irreducible_chains(self, dim):
        rng = np.random.default_rng(700 + dim)
        q = random_irreducible_generator(dim, rng)
        gen = GeneratorMatrix(q, dim)
        pi = stationary_distribution(gen)
        assert abs(pi.probs.sum() - 1.0) <= 1e-10
        assert (pi.probs >= 0.0).all()
        residual = np.abs(pi.probs @ gen.entries).max()
        assert residual <= 1e-9 * np.abs(gen.entries).max()

    def test_reducible_chain_names_unreachable_states(self):
        gen = build_generator(custom([[0.0, 0.0], [1.0, -1.0]]))
        with pytest.raises(ReducibleChainError) as excinfo:
            stationary_distribution(gen)
        assert excinfo.value.states == [1]
        assert "1" in str(excinfo.value)

    def test_two_component_chain_rejected(self):
        q = np.zeros((4, 4))
        q[0, 1] = q[1, 0] = 1.0
        q[2, 3] = q[3, 2] = 1.0
        np.fill_diagonal(q, -q.sum(axis=1))
        with pytest.raises(ReducibleChainError) as excinfo:
            stationary_distribution(GeneratorMatrix(q, 4))
        assert excinfo.value.states == [2, 3]


class TestEmbeddedJumpDistribution:
    def test_fully_connected_f3_from_state0(self):
        gen = build_generator(fc(3, 2.0))
        assert_allclose(embedded_jump_distribution(gen, 0), [0.0, 0.5, 0.5])

    def test_custom_row_divided_by_exit_rate(self):
        gen = build_generator(custom([[-2.0, 2.0, 0.0], [1.0, -3.0, 2.0], [0.0, 1.0, -1.0]]))
        assert_allclose(embedded_jump_distribution(gen, 1), [1 / 3, 0.0, 2 / 3])

    def test_ring_f4_from_state2(self):
        gen = build_generator(ring(4, 1.0))
        assert_allclose(embedded_jump_distribution(gen, 2), [0.0, 0.5, 0.0, 0.5])

    def test_single_cell_returns_empty_distribution(self):
        gen = build_generator(fc(1, 1.0))
        assert_allclose(embedded_jump_distribution(gen, 0), [0.0])

    @pytest.mark.parametrize("spec", [fc(5, 2.0), ring(7, 1.5)])
    def test_rows_sum_to_one_with_no_self_mass(self, spec):
        gen = build_generator(spec)
        for state in range(spec.num_cells):
            probs = embedded_jump_distribution(gen, state)
            assert abs(probs.sum() - 1.0) <= 1e-12
            assert probs[state] == 0.0

    def test_zero_exit_rate_rejected(self):
        gen = build_generator(custom([[0.0, 0.0], [1.0, -1.0]]))
        with pytest.raises(ValueError, match="exit rate"):
            embedded_jump_distribution(gen, 0)

    def test_state_out_of_range(self):
        gen = build_generator(fc(3, 1.0))
        with pytest.raises(IndexError):
            embedded_jump_distribution(gen, 3)
