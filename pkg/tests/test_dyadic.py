import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from walshlab.dyadic import (
    DyadicInterval,
    DyadicPoint,
    GridFunction,
    integrate,
    lp_norm,
    weak_lp_quasinorm,
    xor_add,
)
from walshlab.summability import dirichlet_kernel
from walshlab.systems import walsh_function

import oracles

finite = st.floats(-1e6, 1e6, allow_nan=False)


def grids(n_bits=st.integers(1, 7)):
    return n_bits.flatmap(lambda n: arrays(float, 1 << n, elements=finite))


def test_xor_examples():
    x = DyadicPoint(4, 0b0110)
    assert xor_add(x, DyadicPoint(4, 0)) == x
    assert xor_add(x, x) == DyadicPoint(4, 0)
    assert xor_add(x, DyadicPoint(4, 0b0101)) == DyadicPoint(4, 0b0011)


def test_xor_resolution_mismatch():
    with pytest.raises(ValueError):
        xor_add(DyadicPoint(3, 1), DyadicPoint(4, 1))


@pytest.mark.parametrize("n_bits", [1, 2, 3, 4])
def test_xor_group_laws_exhaustive(n_bits):
    pts = [DyadicPoint(n_bits, i) for i in range(1 << n_bits)]
    zero = DyadicPoint(n_bits, 0)
    for x, y in itertools.product(pts, pts):
        assert xor_add(x, y) == xor_add(y, x)
        assert xor_add(xor_add(x, y), y) == x
    for x, y, z in itertools.product(pts, repeat=3):
        assert xor_add(xor_add(x, y), z) == xor_add(x, xor_add(y, z))
    assert all(xor_add(x, zero) == x and xor_add(x, x) == zero for x in pts)


@pytest.mark.parametrize("n_bits", [5, 8])
def test_xor_coordinatewise(n_bits):
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, 1 << n_bits, size=(50, 2)):
        x, y = DyadicPoint(n_bits, int(a)), DyadicPoint(n_bits, int(b))
        z = xor_add(x, y)
        assert z.coords == tuple((u + v) % 2 for u, v in zip(x.coords, y.coords))


def test_point_layout():
    x = DyadicPoint.from_coords([1, 0, 1, 1])
    assert x.index == 0b1011
    assert x.coord(0) == 1 and x.coord(1) == 0
    assert DyadicInterval.containing(x, 2) == DyadicInterval(2, 0b10)
    with pytest.raises(ValueError):
        DyadicPoint(3, 8)


def test_interval_cells_contiguous():
    I = DyadicInterval(2, 3)
    assert I.cells(5) == slice(24, 32)
    assert I.measure == 0.25
    left, right = I.children()
    assert left.cells(5) == slice(24, 28) and right.cells(5) == slice(28, 32)
    with pytest.raises(ValueError):
        DyadicInterval(2, 4)


def test_grid_function_validation():
    with pytest.raises(ValueError):
        GridFunction([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        GridFunction([1.0, np.inf])
    f = GridFunction([1.0, 2.0])
    with pytest.raises(ValueError):
        f.values[0] = 5.0


def test_integrate_examples():
    assert integrate(GridFunction.constant(5, 3.5)) == 3.5
    for n in range(6):
        D = dirichlet_kernel(1 << n, "walsh", 6)
        assert integrate(D) == 1.0
        assert oracles.dirichlet(1 << n, 6, "walsh").mean() == 1.0
    assert integrate(walsh_function(5, 4)) == 0.0
    assert oracles.walsh_matrix(4)[5].mean() == 0.0


def test_lp_norm_examples():
    assert lp_norm(GridFunction.constant(4, -2.0), 0.7) == pytest.approx(2.0, rel=1e-12)
    assert lp_norm(DyadicInterval(1, 0).indicator(4), 2) == pytest.approx(2**-0.5, rel=1e-12)
    D8 = dirichlet_kernel(8, "walsh", 6)
    direct = np.mean(np.abs(oracles.dirichlet(8, 6, "walsh")) ** 0.5) ** 2
    assert direct == pytest.approx(2**-3, rel=1e-12)
    assert lp_norm(D8, 0.5) == pytest.approx(2**-3, rel=1e-12)


def test_exponent_must_be_positive():
    f = GridFunction.constant(3, 1.0)
    for p in (0, -1):
        with pytest.raises(ValueError):
            lp_norm(f, p)
        with pytest.raises(ValueError):
            weak_lp_quasinorm(f, p)


def test_weak_examples():
    assert weak_lp_quasinorm(GridFunction.constant(3, -1.5), 0.5) == pytest.approx(1.5, rel=1e-12)
    f = 4 * DyadicInterval(2, 0).indicator(5)
    assert oracles.weak_quasinorm_sweep(f.values, 0.5) == pytest.approx(0.25, rel=1e-12)
    assert weak_lp_quasinorm(f, 0.5) == pytest.approx(0.25, rel=1e-12)
    assert weak_lp_quasinorm(GridFunction.constant(3, 0.0), 1) == 0.0


@settings(max_examples=60, deadline=None)
@given(grids(), st.sampled_from([0.25, 0.5, 1.0, 2.0]))
def test_weak_matches_sweep_and_chebyshev(values, p):
    f = GridFunction(values)
    weak = weak_lp_quasinorm(f, p)
    assert weak == pytest.approx(oracles.weak_quasinorm_sweep(values, p), rel=1e-12, abs=1e-300)
    assert weak <= lp_norm(f, p) * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(grids(), st.floats(-50, 50, allow_nan=False), st.sampled_from([0.25, 0.5, 1.0, 2.0]))
def test_homogeneity(values, c, p):
    f = GridFunction(values)
    assert lp_norm(c * f, p) == pytest.approx(abs(c) * lp_norm(f, p), rel=1e-12, abs=1e-300)
    assert weak_lp_quasinorm(c * f, p) == pytest.approx(abs(c) * weak_lp_quasinorm(f, p), rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(grids())
def test_interval_additivity(values):
    f = GridFunction(values)
    N = f.n_bits
    total = integrate(f)
    for n in range(N + 1):
        acc = 0.0
        for prefix in range(1 << n):
            acc += np.mean(values[DyadicInterval(n, prefix).cells(N)]) * 2.0**-n
        assert acc == pytest.approx(total, rel=1e-12, abs=1e-9)
