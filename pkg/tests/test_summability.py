import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walshlab.dyadic import DyadicInterval, GridFunction
from walshlab.summability import (
    abel_kernel_identity,
    abel_q_identity,
    apply_mean,
    dirichlet_kernel,
    dyadic_convolution,
    fejer_kernel,
    fejer_majorant,
    maximal_operator,
    mean_stack,
    norlund_kernel,
    norlund_mean,
    partial_sum,
    t_kernel,
    t_mean,
)
from walshlab.weights import BUILTIN_FAMILIES, MeanFamily, Orientation, k_plus_1, make_weights

import oracles

SYSTEMS = ["walsh", "kaczmarz"]
N_BITS = 5


def literal_t(f, n, q, system):
    S = oracles.partial_sums(f, system, n)
    return sum(q[k] * S[k] for k in range(n)) / sum(q[:n])


def literal_norlund(f, n, q, system):
    S = oracles.partial_sums(f, system, n)
    return sum(q[n - k] * S[k] for k in range(1, n + 1)) / sum(q[:n])


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize("n", [0, 1, 2, 3, 7, 16, 21, 32])
def test_dirichlet_matches_literal_sum(system, n):
    got = dirichlet_kernel(n, system, N_BITS).values
    assert np.array_equal(got, oracles.dirichlet(n, N_BITS, system))


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize("level", range(N_BITS + 1))
def test_dirichlet_closed_form(system, level):
    expected = 2**level * DyadicInterval(level, 0).indicator(N_BITS).values
    assert np.array_equal(dirichlet_kernel(1 << level, system, N_BITS).values, expected)


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize("n", [1, 2, 5, 13, 32])
def test_fejer_kernel_is_average(system, n):
    avg = sum(oracles.dirichlet(k, N_BITS, system) for k in range(1, n + 1)) / n
    assert np.allclose(fejer_kernel(n, system, N_BITS).values, avg, rtol=0, atol=1e-12)


def test_walsh_fejer_kernel_nonnegative_at_powers():
    for level in range(N_BITS + 1):
        assert np.all(fejer_kernel(1 << level, "walsh", N_BITS).values >= -1e-12)


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize("M", [0, 1, 6, 17, 32])
def test_partial_sum_literal_and_convolution(system, M):
    rng = np.random.default_rng(M)
    f = rng.standard_normal(1 << N_BITS)
    got = partial_sum(GridFunction(f), M, system).values
    assert np.allclose(got, oracles.partial_sums(f, system, M)[M], rtol=0, atol=1e-12)
    conv = oracles.convolve(f, oracles.dirichlet(M, N_BITS, system))
    assert np.allclose(got, conv, rtol=0, atol=1e-12)


def test_dyadic_convolution_matches_direct():
    rng = np.random.default_rng(5)
    f, g = rng.standard_normal((2, 32))
    got = dyadic_convolution(GridFunction(f), GridFunction(g)).values
    assert np.allclose(got, oracles.convolve(f, g), rtol=0, atol=1e-12)


@pytest.mark.parametrize("family", BUILTIN_FAMILIES, ids=lambda f: f.name)
@pytest.mark.parametrize("system", SYSTEMS)
def test_means_match_literal(family, system):
    rng = np.random.default_rng(7)
    f = rng.standard_normal(1 << N_BITS)
    w = make_weights(family)
    q = w.q(40)
    Q = w.Q(40)
    for n in (3, 4, 9, 32):
        if Q[n] == 0:
            continue
        if family.orientation is Orientation.T:
            got = t_mean(GridFunction(f), n, w, system).values
            ref = literal_t(f, n, q, system)
        else:
            got = norlund_mean(GridFunction(f), n, w, system).values
            ref = literal_norlund(f, n, q, system)
        assert np.allclose(got, ref, rtol=1e-12, atol=1e-12)
        assert np.array_equal(got, apply_mean(GridFunction(f), n, family, system).values)


@pytest.mark.parametrize("system", SYSTEMS)
def test_kernels_reproduce_means(system):
    rng = np.random.default_rng(9)
    f = rng.standard_normal(1 << N_BITS)
    w = k_plus_1()
    for n in (2, 11, 30):
        via_kernel = oracles.convolve(f, t_kernel(n, w, system, N_BITS).values)
        assert np.allclose(via_kernel, t_mean(GridFunction(f), n, w, system).values, atol=1e-12)
        via_kernel = oracles.convolve(f, norlund_kernel(n, w, system, N_BITS).values)
        assert np.allclose(via_kernel, norlund_mean(GridFunction(f), n, w, system).values, atol=1e-12)


def test_unit_weights_give_shifted_fejer_kernel():
    # sum_{k<n} D_k = (n - 1) K_{n-1}
    w = make_weights(MeanFamily.fejer())
    for system in SYSTEMS:
        assert np.array_equal(t_kernel(1, w, system, N_BITS).values, np.zeros(32))
        for n in (2, 6, 32):
            expected = (n - 1) / n * fejer_kernel(n - 1, system, N_BITS).values
            assert np.allclose(t_kernel(n, w, system, N_BITS).values, expected, atol=1e-12)


def test_mean_of_constant_and_first_order():
    one = GridFunction.constant(N_BITS, 2.5)
    w = make_weights(MeanFamily.power_v(0.7))
    # S_0 = 0 so T_1 is identically zero; later orders see the constant term
    assert np.array_equal(t_mean(one, 1, w, "walsh").values, np.zeros(32))
    n = 10
    Q = w.Q(n)
    assert np.allclose(t_mean(one, n, w, "walsh").values, 2.5 * (Q[n] - Q[1]) / Q[n], atol=1e-14)


def test_zero_normaliser_rejected():
    w = make_weights(MeanFamily.riesz())
    with pytest.raises(ValueError):
        t_mean(GridFunction.constant(3, 1.0), 1, w, "walsh")
    with pytest.raises(ValueError):
        t_mean(GridFunction.constant(3, 1.0), 9, w, "walsh")


@pytest.mark.parametrize("family", [MeanFamily.fejer(), MeanFamily.log_b(1.0, 1), MeanFamily.cesaro(0.5)], ids=lambda f: f.name)
@pytest.mark.parametrize("system", SYSTEMS)
def test_maximal_operator_is_pointwise_max(family, system):
    rng = np.random.default_rng(13)
    f = GridFunction(rng.standard_normal(64))
    w = make_weights(family)
    Q = w.Q(64)
    ns = [n for n in range(1, 65) if Q[n] > 0]
    stack = mean_stack(f, ns, w, system, family.orientation)
    expected = np.max(np.abs(stack), axis=0)
    got = maximal_operator(f, family, 64, system).values
    assert np.array_equal(got, expected)
    assert np.array_equal(maximal_operator(f, family, 64, system, threads=4).values, got)


def test_majorant_is_norlund_fejer():
    rng = np.random.default_rng(17)
    f = GridFunction(rng.standard_normal(32))
    ones = np.ones(40)
    brute = np.max([np.abs(literal_norlund(f.values, n, ones, "kaczmarz")) for n in range(1, 33)], axis=0)
    assert np.allclose(fejer_majorant(f, 32, "kaczmarz").values, brute, atol=1e-12)


@pytest.mark.parametrize("family", [MeanFamily.riesz(), MeanFamily.log_b(1.0, 1), MeanFamily.norlund_log()], ids=lambda f: f.name)
@pytest.mark.parametrize("n", [1, 2, 3, 10, 128])
def test_q_identity_literal_when_first_weight_vanishes(family, n):
    lhs, rhs = abel_q_identity(make_weights(family), n)
    assert rhs == pytest.approx(lhs, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize(
    "family",
    [MeanFamily.fejer(), MeanFamily.cesaro(0.5), MeanFamily.power_v(0.7), MeanFamily.custom(k_plus_1())],
    ids=lambda f: f.name,
)
def test_q_identity_recovers_q_minus_first_weight(family):
    w = make_weights(family)
    for n in range(1, 129):
        lhs, rhs = abel_q_identity(w, n)
        assert rhs == pytest.approx(lhs - w[0], rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("system", SYSTEMS)
@pytest.mark.parametrize(
    "family",
    [MeanFamily.fejer(), MeanFamily.riesz(), MeanFamily.cesaro(0.5), MeanFamily.log_b(1.0, 1), MeanFamily.custom(k_plus_1())],
    ids=lambda f: f.name,
)
def test_kernel_identity(system, family):
    w = make_weights(family)
    for n in (1, 2, 3, 17, 64):
        if w.prefix(n) == 0:
            continue
        lhs, rhs = abel_kernel_identity(n, w, system, 6)
        assert np.max(np.abs(lhs.values - rhs.values)) <= 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(SYSTEMS), st.integers(2, 64))
def test_nonincreasing_t_means_dominated(seed, system, n_max):
    # summation by parts gives T_n <= Norlund-Fejer majorant for non-increasing q
    f = GridFunction(np.random.default_rng(seed).standard_normal(64))
    major = fejer_majorant(f, n_max, system).values
    for fam in (MeanFamily.riesz(), MeanFamily.power_v(0.5)):
        assert np.all(maximal_operator(f, fam, n_max, system).values <= major + 1e-10)
