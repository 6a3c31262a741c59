import math

import numpy as np
import pytest

from spin_epsilon import (
    EpsilonMachine,
    IsingParams,
    TransitionMatrix,
    classical_fidelity,
    extrapolated_conditional,
    future_distribution,
    sample_trajectory,
    statistical_complexity,
    symbols_to_line,
    transition_matrix,
)
from spin_epsilon.verify import draw_params


def tm_literal(t, p):
    return TransitionMatrix(t=np.array(t, dtype=float), p=np.array(p, dtype=float))


def test_balanced_two_state_machine_needs_one_bit():
    tm = transition_matrix(IsingParams(1.0, 0.0, 1.0))
    assert statistical_complexity(tm) == 1.0


def test_deterministic_state_needs_no_memory():
    tm = tm_literal([[0.9, 0.1], [0.2, 0.8]], [1.0, 0.0])
    assert statistical_complexity(tm) == 0.0


def test_identical_rows_merge_to_zero_bits():
    tm = transition_matrix(IsingParams(1.0, 0.0, math.inf))
    assert tm.p[0] == 0.5
    assert statistical_complexity(tm) == 0.0
    # Merge also applies to handcrafted matrices with coinciding rows.
    assert statistical_complexity(tm_literal([[0.7, 0.3], [0.7, 0.3]], [0.5, 0.5])) == 0.0


def test_future_distribution_single_step_is_matrix_row():
    tm = transition_matrix(IsingParams(0.8, -0.2, 1.5))
    for start in (0, 1):
        table = future_distribution(tm, start, 1)
        np.testing.assert_allclose(table.probs, tm.t[start], atol=1e-15)


def test_future_distribution_uniform_rows():
    tm = transition_matrix(IsingParams(1.0, 0.0, math.inf))
    table = future_distribution(tm, 0, 3)
    np.testing.assert_allclose(table.probs, 0.125, atol=1e-15)


def test_future_distribution_matches_ring_oracle():
    params = IsingParams(1.0, 0.3, 2.0)
    table = future_distribution(transition_matrix(params), 1, 4)
    oracle = extrapolated_conditional(params, -1, 4)
    np.testing.assert_allclose(table.probs, oracle.probs, atol=1e-9)


def test_future_distribution_guards():
    tm = transition_matrix(IsingParams(1.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        future_distribution(tm, 0, 0)
    with pytest.raises(ValueError):
        future_distribution(tm, 0, 21)
    with pytest.raises(ValueError):
        future_distribution(tm, 2, 3)


def test_tables_normalize_and_marginalize_consistently():
    rng = np.random.default_rng(31)
    for _ in range(100):
        tm = transition_matrix(draw_params(rng))
        start = int(rng.integers(2))
        table = future_distribution(tm, start, 6)
        assert abs(table.probs.sum() - 1.0) < 1e-12 * len(table.probs)
        assert np.all(table.probs >= 0.0)
        # Marginalizing the last symbol reproduces the shorter table.
        np.testing.assert_allclose(
            table.marginalize_last().probs,
            future_distribution(tm, start, 5).probs,
            atol=1e-12,
        )


def test_stationary_mixture_reproduces_symbol_marginal():
    rng = np.random.default_rng(17)
    for _ in range(100):
        tm = transition_matrix(draw_params(rng))
        mix = tm.p[0] * future_distribution(tm, 0, 4).probs + tm.p[1] * future_distribution(
            tm, 1, 4
        ).probs
        first_up = mix.reshape(2, -1).sum(axis=1)
        np.testing.assert_allclose(first_up, tm.p, atol=1e-12)


def test_fidelity_equals_one_for_identical_futures():
    tm = transition_matrix(IsingParams(1.0, 0.0, math.inf))
    for length in (1, 4, 9):
        assert abs(classical_fidelity(tm, length) - 1.0) < 1e-12


def test_fidelity_vanishes_for_disjoint_futures():
    tm = tm_literal([[1.0, 0.0], [0.0, 1.0]], [0.5, 0.5])
    assert classical_fidelity(tm, 5) == 0.0


def test_fidelity_constant_in_length_and_matches_closed_form():
    rng = np.random.default_rng(23)
    for _ in range(200):
        tm = transition_matrix(draw_params(rng))
        closed = math.sqrt(tm.t[0, 0] * tm.t[1, 0]) + math.sqrt(tm.t[0, 1] * tm.t[1, 1])
        values = [classical_fidelity(tm, length) for length in range(1, 13)]
        assert max(values) - min(values) < 1e-10
        assert all(abs(v - closed) < 1e-10 for v in values)


def test_complexity_monotone_in_temperature():
    values = [
        statistical_complexity(transition_matrix(IsingParams(1.0, 0.3, t / 10.0)))
        for t in range(1, 101)
    ]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_trajectory_zero_steps_keeps_state():
    machine = EpsilonMachine(transition_matrix(IsingParams(1.0, 0.3, 2.0)))
    symbols, final = sample_trajectory(machine, 1, 0, seed=5)
    assert symbols.size == 0
    assert final == 1


def test_trajectory_uniform_frequency():
    machine = EpsilonMachine(transition_matrix(IsingParams(1.0, 0.0, math.inf)))
    symbols, _ = sample_trajectory(machine, 0, 10**6, seed=12)
    stderr = 0.5 / math.sqrt(10**6)
    assert abs(np.mean(symbols == 1) - 0.5) < 3 * stderr


def test_trajectory_conditional_frequencies_match_matrix():
    tm = transition_matrix(IsingParams(1.0, 0.3, 2.0))
    machine = EpsilonMachine(tm)
    symbols, _ = sample_trajectory(machine, 0, 10**6, seed=40)
    states = (1 - symbols.astype(np.int64)) // 2
    prev, nxt = states[:-1], states[1:]
    for i in (0, 1):
        mask = prev == i
        count = int(mask.sum())
        freq = np.mean(nxt[mask] == 0)
        stderr = math.sqrt(tm.t[i, 0] * (1 - tm.t[i, 0]) / count)
        assert abs(freq - tm.t[i, 0]) < 3 * stderr


def test_trajectory_first_symbol_follows_start_row():
    tm = transition_matrix(IsingParams(1.0, 0.3, 2.0))
    machine = EpsilonMachine(tm)
    runs = 500
    ups = sum(
        sample_trajectory(machine, 1, 1, seed=s)[0][0] == 1 for s in range(runs)
    )
    stderr = math.sqrt(tm.t[1, 0] * (1 - tm.t[1, 0]) / runs)
    assert abs(ups / runs - tm.t[1, 0]) < 3 * stderr


def test_trajectory_reproducible_for_seed():
    machine = EpsilonMachine(transition_matrix(IsingParams(1.0, 0.3, 2.0)))
    first, state1 = sample_trajectory(machine, 0, 1000, seed=9)
    second, state2 = sample_trajectory(machine, 0, 1000, seed=9)
    np.testing.assert_array_equal(first, second)
    assert state1 == state2


def test_trajectory_line_export():
    assert symbols_to_line(np.array([1, -1, 1])) == "+1 -1 +1"
    assert symbols_to_line(np.array([], dtype=np.int8)) == ""


def test_distribution_string_round_trip_and_csv():
    tm = transition_matrix(IsingParams(1.0, 0.3, 2.0))
    table = future_distribution(tm, 0, 3)
    assert table.string(0) == "+++"
    assert table.string(5) == "-+-"
    assert table.index("-+-") == 5
    lines = table.to_csv().strip().splitlines()
    assert lines[0] == "string,probability"
    assert len(lines) == 9
    total = sum(float(line.split(",")[1]) for line in lines[1:])
    assert abs(total - 1.0) < 1e-12


def test_machine_rejects_bad_state():
    tm = transition_matrix(IsingParams(1.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        EpsilonMachine(tm, state=2)
    machine = EpsilonMachine(tm)
    with pytest.raises(ValueError):
        machine.run(-1)
