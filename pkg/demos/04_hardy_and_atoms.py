# coding: utf-8

# # Martingale Hardy norms, atoms and weak-L_p
#
# f* is the largest absolute dyadic average containing each cell.  For p < 1
# the H_p quasi-norm of f* is much more sensitive than the L_p norm of f.

import numpy as np

from walshlab import DyadicInterval, hardy_norm, is_p_atom, lp_norm, maximal_function, walsh_function, weak_lp_quasinorm
from walshlab.counterexample import atom

N = 8

for j in (1, 5, 37):
    print(f"||w_{j}||_H(1/4) =", hardy_norm(walsh_function(j, N), 0.25))

# The blocks D_{2**(a+1)} - D_{2**a}, rescaled, are extremal p-atoms.

for p in (0.25, 0.5):
    for a in (1, 3, 5):
        at = atom(p, a, N)
        rep = is_p_atom(at, p, DyadicInterval(a, 0))
        print(f"p={p} alpha={a}: atom={bool(rep)} sup/bound={rep.measured_sup / rep.bound:.3f} H_p={hardy_norm(at, p):.6f}")

at = atom(0.5, 3, N)
print("f* on the first cells:", maximal_function(at).values[:40:8])
print("L_p, weak L_p at p=1/2:", lp_norm(at, 0.5), weak_lp_quasinorm(at, 0.5))
