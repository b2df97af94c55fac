"""Self-check suite: exact identities and desk-scale reproductions.

Each check returns a :class:`CheckResult`; :func:`run_all` runs them in a
fixed order.  Random inputs are drawn from fixed seeds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .counterexample import (
    CounterexampleSpec,
    atom,
    atom_reports,
    build_counterexample,
    divergence_experiment,
    expected_coefficients,
    validate_alphas,
)
from .dyadic import DyadicInterval, DyadicPoint, GridFunction
from .hardy import hardy_norm, is_p_atom
from .summability import (
    abel_kernel_identity,
    abel_q_identity,
    dirichlet_kernel,
    fejer_majorant,
    maximal_operator,
    mean_stack,
    partial_sum,
    weight_diagnostics,
)
from .systems import (
    fourier_coeffs,
    fwht,
    kaczmarz,
    kaczmarz_index_map,
    walsh,
    walsh_function,
)
from .weights import BUILTIN_FAMILIES, MeanFamily, k_plus_1, make_weights

SEED = 20240601
SYSTEMS = ("walsh", "kaczmarz")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def check_dirichlet_closed_form(n_bits: int = 10) -> tuple[bool, str]:
    for system in SYSTEMS:
        for n in range(n_bits + 1):
            expected = DyadicInterval(n, 0).indicator(n_bits).values * 2**n
            got = dirichlet_kernel(1 << n, system, n_bits).values
            if not np.array_equal(got, expected):
                return False, f"{system}: D_(2^{n}) differs from 2^{n} 1_(I_{n})"
    return True, f"D_(2^n) = 2^n 1_(I_n) exactly for n <= {n_bits}, both systems"


def check_kaczmarz_walsh(n_bits: int = 8, rho_range: int = 1 << 16) -> tuple[bool, str]:
    points = [DyadicPoint(n_bits, j) for j in range(1 << n_bits)]
    for n in range(1 << n_bits):
        r = kaczmarz_index_map(n)
        for x in points:
            if kaczmarz(n, x) != walsh(r, x):
                return False, f"kappa_{n} != w_{r} at cell {x.index}"
    for n in range(rho_range):
        if kaczmarz_index_map(kaczmarz_index_map(n)) != n:
            return False, f"rho(rho({n})) != {n}"
    return True, f"kappa_n = w_rho(n) for n < 2^{n_bits}; rho involutive below {rho_range}"


def check_orthonormality(n_bits: int = 6) -> tuple[bool, str]:
    size = 1 << n_bits
    for system in SYSTEMS:
        mat = np.empty((size, size))
        for n in range(size):
            mat[n] = (
                walsh_function(n, n_bits).values
                if system == "walsh"
                else walsh_function(kaczmarz_index_map(n), n_bits).values
            )
        gram = mat @ mat.T / size
        if not np.array_equal(gram, np.eye(size)):
            return False, f"{system}: Gram matrix is not the identity"
    return True, f"orthonormal at N={n_bits}, both systems"


def check_transform(n_bits: int = 6, parseval_bits: int = 10, trials: int = 100) -> tuple[bool, str]:
    size = 1 << n_bits
    rng = np.random.default_rng(SEED)
    f = rng.standard_normal(size)
    basis = np.array([walsh_function(i, n_bits).values for i in range(size)])
    direct = basis @ f / size
    err = np.max(np.abs(fwht(f) - direct))
    if err > 1e-12:
        return False, f"forward transform off by {err:.3g}"
    err_inv = np.max(np.abs(fwht(direct, "inverse") - f))
    if err_inv > 1e-12:
        return False, f"inverse transform off by {err_inv:.3g}"
    worst = 0.0
    for _ in range(trials):
        g = GridFunction(rng.standard_normal(1 << parseval_bits))
        energy = float(np.mean(g.values**2))
        for system in SYSTEMS:
            worst = max(worst, abs(fourier_coeffs(g, system).energy() - energy))
    if worst > 1e-10:
        return False, f"Parseval defect {worst:.3g}"
    return True, f"oracle error {max(err, err_inv):.2g}, Parseval defect {worst:.2g}"


def abel_families():
    return [
        MeanFamily.fejer(),
        MeanFamily.riesz(),
        MeanFamily.cesaro(0.5),
        MeanFamily.power_v(0.7),
        MeanFamily.log_b(1.0, 1),
        MeanFamily.custom(k_plus_1()),
    ]


def check_abel(n_bits: int = 7, n_max: int = 128) -> tuple[bool, str]:
    failures = []
    for fam in abel_families():
        w = make_weights(fam)
        for n in range(1, n_max + 1):
            lhs, rhs = abel_q_identity(w, n)
            if abs(lhs - rhs) > 1e-12 * max(1.0, abs(lhs)):
                failures.append(f"{fam.name}: Q_{n}={lhs:.6g} but Abel sum={rhs:.6g}")
                break
        for system in SYSTEMS:
            for n in range(1, n_max + 1):
                if w.prefix(n) == 0:
                    continue
                a, b = abel_kernel_identity(n, w, system, n_bits)
                if np.max(np.abs(a.values - b.values)) > 1e-10:
                    failures.append(f"{fam.name}/{system}: kernel identity fails at n={n}")
                    break
    if failures:
        return False, "; ".join(failures)
    return True, f"Q_n and kernel identities hold for n <= {n_max}"


def _random_inputs(count: int, n_bits: int, seed: int = SEED):
    rng = np.random.default_rng(seed)
    return [GridFunction(rng.standard_normal(1 << n_bits)) for _ in range(count)]


def check_nonincreasing_chain(count: int = 50, n_bits: int = 8, n_max: int = 256) -> tuple[bool, str]:
    fams = [MeanFamily.riesz(), MeanFamily.power_v(0.7), MeanFamily.fejer()]
    worst = -np.inf
    for f in _random_inputs(count, n_bits):
        major = fejer_majorant(f, n_max, "kaczmarz").values
        for fam in fams:
            T = maximal_operator(f, fam, n_max, "kaczmarz").values
            worst = max(worst, float(np.max(T - major)))
    if worst > 1e-10:
        return False, f"T* exceeds the Fejer majorant by {worst:.3g}"
    return True, f"max(T* - majorant) = {worst:.3g}"


def check_nondecreasing_chain(count: int = 50, n_bits: int = 8, n_max: int = 256) -> tuple[bool, str]:
    fams = [MeanFamily.log_b(1.0, 1), MeanFamily.custom(k_plus_1())]
    consts = {fam.name: weight_diagnostics(make_weights(fam), n_max).node_constant for fam in fams}
    worst = -np.inf
    for f in _random_inputs(count, n_bits):
        major = fejer_majorant(f, n_max, "kaczmarz").values
        for fam in fams:
            T = maximal_operator(f, fam, n_max, "kaczmarz").values
            worst = max(worst, float(np.max(T - (2 * consts[fam.name] - 1) * major)))
    if worst > 1e-10:
        return False, f"T* exceeds (2C-1) x majorant by {worst:.3g}"
    desc = ", ".join(f"C[{k}]={v:.4g}" for k, v in consts.items())
    return True, f"{desc}; max excess {worst:.3g}"


def check_counterexample() -> tuple[bool, str]:
    spec = CounterexampleSpec(0.25, (1, 3, 5, 7))
    n_bits = 8
    if not validate_alphas(spec).ok:
        return False, "alphas fail validation"
    f = build_counterexample(spec, n_bits)
    coeff_err = np.max(np.abs(fourier_coeffs(f, "walsh").coeffs - expected_coefficients(spec, n_bits)))
    scale = np.max(np.abs(expected_coefficients(spec, n_bits)))
    if coeff_err > 1e-10 * scale:
        return False, f"coefficients off by {coeff_err:.3g}"
    for a, rep in zip(spec.alphas, atom_reports(spec, n_bits)):
        if not rep or abs(rep.measured_sup - rep.bound) > 1e-12 * rep.bound:
            return False, f"a_k for alpha={a} is not an extremal p-atom"
    report = divergence_experiment(spec, k_plus_1(), n_bits)
    for r in report.rows:
        if r.min_abs_T < r.paper_bound:
            return False, f"k={r.k}: min|T f| = {r.min_abs_T:.6g} < {r.paper_bound:.6g}"
    ratios = [r.ratio for r in report.rows]
    if any(b <= a for a, b in zip(ratios, ratios[1:])) or ratios[-1] / ratios[0] < 10:
        return False, f"ratios {ratios} not increasing by a factor >= 10"
    return True, f"ratios {', '.join(f'{r:.4g}' for r in ratios)}"


def check_convergence(n_bits: int = 10, level: int = 4) -> tuple[bool, str]:
    rng = np.random.default_rng(SEED)
    f = GridFunction(np.repeat(rng.uniform(-1, 1, 1 << level), 1 << (n_bits - level)))
    m = 1 << level
    ns = np.arange(m, (1 << n_bits) + 1)
    fejer_err = None
    for fam in BUILTIN_FAMILIES:
        w = make_weights(fam)
        Q = w.Q(1 << n_bits)
        for system in SYSTEMS:
            s_err = max(np.max(np.abs(partial_sum(f, k, system).values - f.values)) for k in range(m))
            means = mean_stack(f, ns, w, system, fam.orientation)
            lhs = np.max(np.abs(means - f.values[None, :]), axis=1)
            rhs = Q[m] / Q[ns] * s_err
            if np.any(lhs > rhs * (1 + 1e-10) + 1e-12):
                n_bad = int(ns[np.argmax(lhs - rhs)])
                return False, f"{fam.name}/{system}: bound fails at n={n_bad}"
            if fam.kind.value == "fejer":
                ratio = lhs[-1] / f.sup_norm()
                fejer_err = max(fejer_err or 0.0, ratio)
    if fejer_err is None or fejer_err >= 0.02:
        return False, f"Fejer error at n=2^{n_bits} is {fejer_err:.3%} of sup|f|"
    return True, f"bounds hold; Fejer relative error {fejer_err:.3%}"


def check_hardy() -> tuple[bool, str]:
    n_bits = 8
    for j in (1, 5, 37):
        for p in (0.25, 0.5, 1.0):
            h = hardy_norm(walsh_function(j, n_bits), p)
            if abs(h - 1) > 1e-12:
                return False, f"||w_{j}||_H_{p} = {h!r}"
    spec = CounterexampleSpec(0.25, (1, 3, 5, 7))
    worst = 0.0
    for p in (0.25, 0.4):
        for a in spec.alphas:
            at = atom(p, a, n_bits)
            if not is_p_atom(at, p, DyadicInterval(a, 0)):
                return False, f"alpha={a} atom not certified"
            worst = max(worst, hardy_norm(at, p))
    if worst > 1 + 1e-10:
        return False, f"atom Hardy norm {worst!r} > 1"
    return True, f"Walsh functions have unit Hardy norm; max atom norm {worst:.12g}"


CHECKS = (
    ("dirichlet-closed-form", check_dirichlet_closed_form),
    ("kaczmarz-walsh-equivalence", check_kaczmarz_walsh),
    ("orthonormality", check_orthonormality),
    ("transform", check_transform),
    ("abel-identities", check_abel),
    ("nonincreasing-majorant", check_nonincreasing_chain),
    ("nondecreasing-majorant", check_nondecreasing_chain),
    ("counterexample", check_counterexample),
    ("convergence", check_convergence),
    ("hardy", check_hardy),
)


def run_all(names=None) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        if names and name not in names:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an aborted run
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail, time.perf_counter() - t0))
    return results
