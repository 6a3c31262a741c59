import math

import numpy as np
import pytest

from spin_epsilon import IsingParams, conditional_from_ring, transition_matrix
from spin_epsilon.verify import draw_params

# Analytic value of t00 at (J=1, B=0, T=1): 1 / (1 + exp(-2)).
CLOSED_T00_SYMMETRIC = 0.8807970779778823

# Ring-enumeration values, Aitken-extrapolated over n_half = 8, 9, 10.
RING_T00_SYMMETRIC = 0.8807882476025745
RING_T_FIELD = np.array(
    [
        [0.8247159587829384, 0.1752840412170616],
        [0.3890353908480001, 0.6109646091519997],
    ]
)
RING_P0_FIELD = 0.6893886135078398


def test_high_temperature_approaches_uniform():
    tm = transition_matrix(IsingParams(1.0, 0.0, 1e6))
    np.testing.assert_allclose(tm.t, 0.25 + 0.25 * np.ones((2, 2)), atol=1e-5)
    np.testing.assert_allclose(tm.p, [0.5, 0.5], atol=1e-5)


def test_symmetric_point_closed_form():
    tm = transition_matrix(IsingParams(1.0, 0.0, 1.0))
    assert tm.t[0, 0] == tm.t[1, 1]
    assert tm.t[0, 1] == tm.t[1, 0]
    assert tm.p[0] == 0.5 and tm.p[1] == 0.5
    assert abs(tm.t[0, 0] - CLOSED_T00_SYMMETRIC) < 1e-12
    # The enumeration oracle pins the same number to its extrapolation floor.
    assert abs(tm.t[0, 0] - RING_T00_SYMMETRIC) < 2e-5


def test_field_point_matches_ring_goldens():
    tm = transition_matrix(IsingParams(1.0, 0.3, 2.0))
    np.testing.assert_allclose(tm.t, RING_T_FIELD, atol=1e-9)
    assert abs(tm.p[0] - RING_P0_FIELD) < 1e-9
    assert abs(tm.p[1] - (1.0 - RING_P0_FIELD)) < 1e-9


def test_row_stochastic_and_stationary_over_random_draws():
    rng = np.random.default_rng(101)
    for _ in range(1000):
        tm = transition_matrix(draw_params(rng))
        np.testing.assert_allclose(tm.t.sum(axis=1), [1.0, 1.0], atol=1e-10)
        np.testing.assert_allclose(tm.p @ tm.t, tm.p, atol=1e-10)
        assert abs(tm.p.sum() - 1.0) < 1e-12


def test_entries_strictly_inside_unit_interval():
    rng = np.random.default_rng(55)
    for _ in range(1000):
        tm = transition_matrix(draw_params(rng))
        assert np.all(tm.t > 0.0)
        # An entry may round to exactly 1.0 only when its complement sits
        # below the resolution of double precision.
        for i in range(2):
            for j in range(2):
                if tm.t[i, 1 - j] > 1e-15:
                    assert tm.t[i, j] < 1.0


def test_spin_flip_symmetry():
    rng = np.random.default_rng(7)
    swap = np.ix_([1, 0], [1, 0])
    for _ in range(300):
        params = draw_params(rng)
        tm = transition_matrix(params)
        flipped = transition_matrix(IsingParams(params.J, -params.B, params.T))
        np.testing.assert_allclose(tm.t, flipped.t[swap], atol=1e-12)
        np.testing.assert_allclose(tm.p, flipped.p[::-1], atol=1e-12)


def test_zero_field_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(200):
        J = rng.uniform(-3, 3)
        T = float(np.exp(rng.uniform(np.log(0.05), np.log(100.0))))
        tm = transition_matrix(IsingParams(J, 0.0, T))
        np.testing.assert_allclose(tm.p, [0.5, 0.5], atol=1e-12)
        assert abs(tm.t[0, 1] - tm.t[1, 0]) < 1e-12
        assert abs(tm.t[0, 0] - tm.t[1, 1]) < 1e-12


def test_infinite_temperature_flag_gives_uniform_rows():
    params = IsingParams(1.0, 0.5, math.inf)
    assert params.infinite_temperature
    assert params.beta == 0.0
    tm = transition_matrix(params)
    np.testing.assert_array_equal(tm.t, 0.5 * np.ones((2, 2)))
    np.testing.assert_array_equal(tm.p, [0.5, 0.5])


def test_beta_inverts_temperature():
    params = IsingParams(0.7, -0.2, 3.5)
    assert params.beta * params.T == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(J=math.nan, B=0.0, T=1.0),
        dict(J=math.inf, B=0.0, T=1.0),
        dict(J=1.0, B=math.nan, T=1.0),
        dict(J=1.0, B=0.0, T=0.0),
        dict(J=1.0, B=0.0, T=-2.0),
        dict(J=1.0, B=0.0, T=math.nan),
    ],
)
def test_invalid_parameters_rejected(kwargs):
    with pytest.raises(ValueError):
        IsingParams(**kwargs)


def test_underflow_guard():
    with pytest.raises(ValueError):
        transition_matrix(IsingParams(3000.0, 0.0, 0.01))


def test_single_step_agrees_with_ring_enumeration(ring_cache):
    # Short correlation length: quantitative agreement at the largest ring.
    tm = transition_matrix(IsingParams(1.0, 0.3, 2.0))
    errors = []
    for n_half in (6, 8, 10):
        ens = ring_cache(1.0, 0.3, 2.0, n_half)
        ring_t = np.vstack(
            [
                conditional_from_ring(ens, 1, 1).probs,
                conditional_from_ring(ens, -1, 1).probs,
            ]
        )
        errors.append(float(np.max(np.abs(ring_t - tm.t))))
    assert errors[2] < errors[1] < errors[0]
    assert errors[2] < 1e-6

    # Long correlation length: the ring still converges, just more slowly.
    tm_sym = transition_matrix(IsingParams(1.0, 0.0, 1.0))
    slow = []
    for n_half in (6, 8, 10):
        ens = ring_cache(1.0, 0.0, 1.0, n_half)
        ring_t = np.vstack(
            [
                conditional_from_ring(ens, 1, 1).probs,
                conditional_from_ring(ens, -1, 1).probs,
            ]
        )
        slow.append(float(np.max(np.abs(ring_t - tm_sym.t))))
    assert slow[2] < slow[1] < slow[0]
