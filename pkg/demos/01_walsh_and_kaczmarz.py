# coding: utf-8

# # Walsh and Walsh-Kaczmarz functions on a finite dyadic grid
#
# A resolution-N grid has 2**N cells; cell j stands for the dyadic point whose
# first coordinate is the top bit of j.  Dyadic intervals are contiguous runs.

import numpy as np

from walshlab import (
    DyadicPoint,
    fourier_coeffs,
    fwht,
    kaczmarz_function,
    kaczmarz_index_map,
    synthesize,
    walsh_function,
    xor_add,
)

N = 4

# Group addition is coordinatewise mod 2, i.e. XOR of cell indices.

x = DyadicPoint.from_coords([1, 0, 1, 1])
y = DyadicPoint.from_coords([0, 1, 1, 0])
print("x + y =", xor_add(x, y).coords)

# Walsh functions in Paley order, one row per index.

W = np.array([walsh_function(n, N).values for n in range(1 << N)])
print(W.astype(int))

# The Kaczmarz system reorders each block [2**s, 2**(s+1)) by reversing the
# low bits of the index.

rho = [kaczmarz_index_map(n) for n in range(1 << N)]
print("rho:", rho)
K = np.array([kaczmarz_function(n, N).values for n in range(1 << N)])
print("kappa_n == w_rho(n):", np.array_equal(K, W[rho]))

# The fast transform gives the coefficients in O(N 2**N).

rng = np.random.default_rng(0)
f = rng.standard_normal(1 << N)
print("matches W f / 2**N:", np.allclose(fwht(f), W @ f / f.size))

c = fourier_coeffs(f, "kaczmarz")
print("Parseval:", c.energy(), np.mean(f**2))
print("round trip error:", np.max(np.abs(synthesize(c).values - f)))
