# coding: utf-8

# # Maximal operators and the Fejer majorant
#
# For non-increasing weights summation by parts bounds the T maximal operator
# by the maximal Norlund mean with unit weights.  For non-decreasing weights
# the bound picks up the factor 2C - 1, with C = sup q_{n-1} n / Q_n.

import numpy as np

from walshlab import MeanFamily, fejer_majorant, k_plus_1, make_weights, maximal_operator
from walshlab.summability import weight_diagnostics
from walshlab.signals import random_signal

N, NMAX = 8, 256
f = random_signal(7, N)
major = fejer_majorant(f, NMAX, "kaczmarz").values

for fam in (MeanFamily.riesz(), MeanFamily.power_v(0.7), MeanFamily.fejer()):
    T = maximal_operator(f, fam, NMAX, "kaczmarz", threads=2).values
    print(f"{fam.name:>8}: max(T* - majorant) = {np.max(T - major):.3g}")

for fam in (MeanFamily.log_b(1.0, 1), MeanFamily.custom(k_plus_1())):
    C = weight_diagnostics(make_weights(fam), NMAX).node_constant
    T = maximal_operator(f, fam, NMAX, "kaczmarz").values
    print(f"{fam.name:>18}: C = {C:.4f}, max(T* - (2C-1) majorant) = {np.max(T - (2 * C - 1) * major):.3g}")
