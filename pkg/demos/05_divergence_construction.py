# coding: utf-8

# # Lacunary atom blocks whose T means blow up in weak-L_p
#
# f = sum_k a_k / alpha_k with a_k the extremal p-atom on I_{alpha_k}.  Along
# n_k = 2**alpha_k + 2 the Kaczmarz T means with q_k = k + 1 stay large on the
# whole group, and the ratio of the weak quasi-norm to ||f||_{H_p} grows.

from walshlab import CounterexampleSpec, divergence_experiment, k_plus_1, validate_alphas

spec = CounterexampleSpec(0.25, (1, 3, 5, 7))
rep = validate_alphas(spec)
print("alphas valid:", rep.ok, "gap margins:", rep.margins_gap, "ratio margins:", rep.margins_ratio)

report = divergence_experiment(spec, k_plus_1(), 8)
print("hypothesis:", report.hypothesis)
print(f"{'k':>2} {'n_k':>4} {'min|T|':>10} {'bound':>10} {'weak':>10} {'ratio':>8}")
for r in report.rows:
    print(f"{r.k:>2} {r.n_k:>4} {r.min_abs_T:>10.3f} {r.paper_bound:>10.3f} {r.weak_quasinorm:>10.2f} {r.ratio:>8.3f}")
