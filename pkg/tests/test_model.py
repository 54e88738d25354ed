import numpy as np
import pytest

from vibox import (BoxSet, ConfigurationError, EvaluationError, Mapping, VIProblem,
                   affine_mapping, builtin_mapping, game_to_vi, get_problem, jacobian,
                   make_game)


def example_game():
    return make_game(
        block_sizes=(1, 1),
        q={(0, 0): [[1.0]], (0, 1): [[2.0]], (1, 0): [[3.0]], (1, 1): [[1.0]]},
        c=([0.0], [0.0]),
        box=BoxSet(np.full(2, -np.inf), np.full(2, np.inf), blocks=(1, 1)),
    )


class TestGameToVI:
    def test_example_game_mapping_and_jacobian(self):
        p = game_to_vi(example_game())
        x = np.array([1.0, 1.0])
        assert np.array_equal(p.F(x), [3.0, 4.0])
        np.testing.assert_array_equal(p.F(np.array([2.0, -1.0])), [0.0, 5.0])
        np.testing.assert_array_equal(jacobian(p, x), [[1.0, 2.0], [3.0, 1.0]])

    def test_single_player_identity(self):
        g = make_game((2,), {(0, 0): np.eye(2)}, (np.zeros(2),),
                      BoxSet(np.full(2, -np.inf), np.full(2, np.inf), blocks=(2,)))
        p = game_to_vi(g)
        x = np.array([0.3, -0.7])
        np.testing.assert_array_equal(p.F(x), x)
        np.testing.assert_array_equal(jacobian(p, x), np.eye(2))

    def test_decoupled_constant_costs(self):
        g = make_game((1, 1), {(0, 0): [[0.0]], (1, 1): [[0.0]]},
                      ([2.0], [-3.0]),
                      BoxSet(np.full(2, -np.inf), np.full(2, np.inf), blocks=(1, 1)))
        p = game_to_vi(g)
        for x in (np.zeros(2), np.array([5.0, -5.0])):
            np.testing.assert_array_equal(p.F(x), [2.0, -3.0])
        np.testing.assert_array_equal(jacobian(p, np.ones(2)), np.zeros((2, 2)))

    def test_block_mismatch_rejected(self):
        with pytest.raises(ConfigurationError):
            make_game((1, 1), {(0, 0): [[1.0]], (1, 1): [[1.0]]}, ([0.0], [0.0]),
                      BoxSet(np.full(3, -np.inf), np.full(3, np.inf), blocks=(1, 2)))

    def test_asymmetric_own_block_rejected(self):
        with pytest.raises(ConfigurationError):
            make_game((2,), {(0, 0): [[1.0, 2.0], [0.0, 1.0]]}, (np.zeros(2),),
                      BoxSet(np.full(2, -np.inf), np.full(2, np.inf), blocks=(2,)))


class TestJacobian:
    def test_affine_is_exact_and_constant(self):
        p = get_problem("example-vi")
        a = np.array([[1.0, 2.0], [3.0, 1.0]])
        rng = np.random.default_rng(0)
        mats = [jacobian(p, rng.uniform(-5, 5, 2)) for _ in range(10)]
        for m in mats:
            assert np.array_equal(m, a)

    def test_identity_mapping(self):
        p = VIProblem(affine_mapping(np.eye(3)), BoxSet.full_space(3))
        np.testing.assert_array_equal(jacobian(p, np.array([1.0, -2.0, 0.5])), np.eye(3))

    def test_cubic_finite_difference_close_to_analytic(self):
        cubic = builtin_mapping("cubic", 1)
        p_fd = VIProblem(Mapping(fn=cubic.fn, dim=1), BoxSet.full_space(1))
        j = jacobian(p_fd, np.array([1.0]))
        assert abs(j[0, 0] - 3.0) < 1e-6

    def test_fd_matches_analytic_for_builtins(self):
        rng = np.random.default_rng(42)
        for mid in ("cubic", "cubic-plus-linear"):
            mapping = builtin_mapping(mid, 3)
            p_an = VIProblem(mapping, BoxSet.full_space(3))
            p_fd = VIProblem(Mapping(fn=mapping.fn, dim=3), BoxSet.full_space(3))
            for _ in range(10):
                x = rng.uniform(-2, 2, 3)
                err = np.max(np.abs(jacobian(p_an, x) - jacobian(p_fd, x)))
                assert err < 1e-5

    def test_game_jacobian_equals_block_assembly(self):
        g = example_game()
        p = game_to_vi(g)
        expected = np.array([[1.0, 2.0], [3.0, 1.0]])
        for x in (np.zeros(2), np.array([4.0, -1.0])):
            assert np.array_equal(jacobian(p, x), expected)
            assert np.array_equal(g.full_matrix(), expected)

    def test_nonfinite_evaluation_reports_coordinate(self):
        bad = Mapping(fn=lambda x: np.array([x[0], np.sqrt(x[1])]), dim=2)
        p = VIProblem(bad, BoxSet.full_space(2))
        with pytest.raises(EvaluationError) as exc, np.errstate(invalid="ignore"):
            p.F(np.array([1.0, -1.0]))
        assert exc.value.coordinate == 1

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ConfigurationError):
            VIProblem(affine_mapping(np.eye(2)), BoxSet.full_space(3))


class TestBoxSet:
    def test_invalid_bounds_rejected(self):
        with pytest.raises(ConfigurationError):
            BoxSet(np.array([1.0]), np.array([0.0]))

    def test_full_space_flag(self):
        assert BoxSet.full_space(4).is_full_space
        assert not BoxSet.bounds([0.0], [1.0]).is_full_space

    def test_contains(self):
        k = BoxSet.bounds([0.0, -np.inf], [1.0, np.inf])
        assert k.contains([0.5, 100.0])
        assert not k.contains([-0.1, 0.0])
