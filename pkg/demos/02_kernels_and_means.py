# coding: utf-8

# # Dirichlet and Fejer kernels, T means and Norlund means
#
# Every mean is a spectral multiplier on the first n coefficients, so one
# inverse transform per order is enough.

import numpy as np

from walshlab import MeanFamily, dirichlet_kernel, fejer_kernel, make_weights, t_mean, norlund_mean
from walshlab.signals import make_signal

N = 6

# D_{2**n} is 2**n times the indicator of the first level-n interval.

for n in range(4):
    D = dirichlet_kernel(1 << n, "kaczmarz", N).values
    print(f"D_{1 << n}:", np.unique(D), "support", np.count_nonzero(D))

# Walsh Fejer kernels at powers of two are nonnegative.

print("min K_32:", fejer_kernel(32, "walsh", N).values.min())

# A step signal and a few summability methods at order 40.

f = make_signal("step:0=1,16=-1,40=0.5", N)
for fam in (MeanFamily.fejer(), MeanFamily.riesz(), MeanFamily.log_b(1.0, 1)):
    g = t_mean(f, 40, make_weights(fam), "kaczmarz")
    print(f"{fam.name:>8}: sup|T_40 f - f| = {np.max(np.abs(g.values - f.values)):.4f}")

g = norlund_mean(f, 40, make_weights(MeanFamily.cesaro(0.5)), "walsh")
print("cesaro:0.5 (Norlund):", np.max(np.abs(g.values - f.values)))
