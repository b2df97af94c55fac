"""Lacunary atom-block martingale whose T means blow up in weak-L_p, p < 1/2.

For an increasing integer sequence ``alpha_0 < alpha_1 < ...`` the function is

    f = sum_k alpha_k**-1 * a_k,
    a_k = 2**(alpha_k (1/p - 1)) * (D_{2**(alpha_k + 1)} - D_{2**alpha_k}),

so every Fourier coefficient in the block ``[2**alpha_k, 2**(alpha_k+1))``
equals ``2**(alpha_k (1/p - 1)) / alpha_k``.  Along the orders
``n_k = 2**alpha_k + 2`` the Walsh-Kaczmarz T means stay above
``2**(alpha_k (1/p - 2)) / (16 alpha_k)`` everywhere on the group.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dyadic import DyadicInterval, GridFunction, check_resolution, weak_lp_quasinorm
from .hardy import AtomReport, hardy_norm, is_p_atom
from .summability import _resolve_threads, dirichlet_kernel, mean_stack, weight_diagnostics
from .systems import SystemKind
from .weights import Monotonicity, Orientation, WeightSequence

__all__ = [
    "CounterexampleSpec",
    "ValidationReport",
    "validate_alphas",
    "atom",
    "build_counterexample",
    "expected_coefficients",
    "partial_sum_ceiling",
    "paper_bound",
    "ExperimentRow",
    "ExperimentReport",
    "divergence_experiment",
]


@dataclass(frozen=True)
class CounterexampleSpec:
    p: float
    alphas: tuple[int, ...]

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not 0 < self.p < 0.5:
            raise ValueError(f"p must lie in (0, 1/2), got {self.p}")
        if any(a < 1 for a in alphas):
            raise ValueError("alphas must be positive integers")

    @property
    def K(self) -> int:
        return len(self.alphas)

    @property
    def strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.alphas, self.alphas[1:]))

    def log2_coefficient(self, k: int) -> float:
        """``log2`` of the block coefficient ``2**(alpha_k (1/p - 1)) / alpha_k``."""
        a = self.alphas[k]
        return a * (1 / self.p - 1) - math.log2(a)


@dataclass
class ValidationReport:
    """Margins (log2 of right side minus log2 of left side) of the gap and
    ratio conditions for ``k = 1 .. K-1``; positive margin means the strict
    inequality holds."""

    increasing: bool
    margins_gap: list[float] = field(default_factory=list)
    margins_ratio: list[float] = field(default_factory=list)
    series_partial: float = 0.0

    @property
    def ok(self) -> bool:
        return (
            self.increasing
            and all(m > 0 for m in self.margins_gap)
            and all(m > 0 for m in self.margins_ratio)
        )

    def first_failure(self) -> str | None:
        if not self.increasing:
            return "alphas are not strictly increasing"
        for k, m in enumerate(self.margins_gap, start=1):
            if m <= 0:
                return f"gap condition fails at k={k} (margin {m:.4g} in log2)"
        for k, m in enumerate(self.margins_ratio, start=1):
            if m <= 0:
                return f"ratio condition fails at k={k} (margin {m:.4g} in log2)"
        return None


def _log2_sum(terms) -> float:
    terms = list(terms)
    if not terms:
        return -math.inf
    top = max(terms)
    return top + math.log2(sum(2.0 ** (t - top) for t in terms))


def validate_alphas(spec: CounterexampleSpec) -> ValidationReport:
    """Evaluate, for every ``k >= 1``,

    * ``sum_{eta<k} 2**(alpha_eta/p) / alpha_eta < 2**(alpha_k/p - 1) / (2 alpha_k)``
    * ``2**(alpha_{k-1}(1/p-1)) / alpha_{k-1} < 2**(alpha_k(1/p-1) - 4) / alpha_k``

    on the log2 scale, plus the finite partial sum of ``alpha_k**-p``.
    """
    if spec.K < 2:
        raise ValueError("need at least two alphas")
    p, al = spec.p, spec.alphas
    report = ValidationReport(increasing=spec.strictly_increasing)
    report.series_partial = sum(a ** (-p) for a in al)
    for k in range(1, spec.K):
        lhs = _log2_sum(a / p - math.log2(a) for a in al[:k])
        rhs = al[k] / p - 1 - 1 - math.log2(al[k])
        report.margins_gap.append(rhs - lhs)
        lhs4 = al[k - 1] * (1 / p - 1) - math.log2(al[k - 1])
        rhs4 = al[k] * (1 / p - 1) - 4 - math.log2(al[k])
        report.margins_ratio.append(rhs4 - lhs4)
    return report


def atom(p: float, alpha: int, n_bits: int) -> GridFunction:
    """``2**(alpha (1/p - 1)) (D_{2**(alpha+1)} - D_{2**alpha})``, a p-atom on ``I_alpha``."""
    n_bits = check_resolution(n_bits)
    if alpha + 1 > n_bits:
        raise ValueError(f"alpha={alpha} needs resolution >= {alpha + 1}")
    block = dirichlet_kernel(1 << (alpha + 1), "walsh", n_bits).values
    block = block - dirichlet_kernel(1 << alpha, "walsh", n_bits).values
    return GridFunction(2.0 ** (alpha * (1 / p - 1)) * block)


def build_counterexample(spec: CounterexampleSpec, n_bits: int, validate: bool = True) -> GridFunction:
    """``sum_k a_k / alpha_k`` on a resolution-``n_bits`` grid."""
    n_bits = check_resolution(n_bits)
    if spec.K and spec.alphas[-1] + 1 > n_bits:
        raise ValueError(f"resolution {n_bits} too small: largest alpha needs {spec.alphas[-1] + 1}")
    if validate and spec.K >= 2:
        report = validate_alphas(spec)
        if not report.ok:
            raise ValueError(f"invalid counterexample spec: {report.first_failure()}")
    elif validate and spec.K == 1 and not spec.strictly_increasing:
        raise ValueError("alphas must be strictly increasing")
    total = np.zeros(1 << n_bits)
    for a in spec.alphas:
        total += atom(spec.p, a, n_bits).values / a
    return GridFunction(total)


def atom_reports(spec: CounterexampleSpec, n_bits: int) -> list[AtomReport]:
    return [is_p_atom(atom(spec.p, a, n_bits), spec.p, DyadicInterval(a, 0)) for a in spec.alphas]


def expected_coefficients(spec: CounterexampleSpec, n_bits: int) -> np.ndarray:
    """Walsh coefficients of the construction, block by block."""
    out = np.zeros(1 << n_bits)
    for a in spec.alphas:
        out[1 << a : 2 << a] = 2.0 ** (a * (1 / spec.p - 1)) / a
    return out


def partial_sum_ceiling(spec: CounterexampleSpec, s: int) -> float:
    """Bound on ``max|S_j f|`` for ``2**alpha_s <= j <= 2**(alpha_s+1)``:
    ``2**(alpha_{s-1}/p + 1)/alpha_{s-1} + 2**(alpha_s/p)/alpha_s``
    (first term absent for ``s = 0``)."""
    p, al = spec.p, spec.alphas
    bound = 2.0 ** (al[s] / p) / al[s]
    if s > 0:
        bound += 2.0 ** (al[s - 1] / p + 1) / al[s - 1]
    return bound


def paper_bound(p: float, alpha: int) -> float:
    """``2**(alpha (1/p - 2)) / (16 alpha)``."""
    return 2.0 ** (alpha * (1 / p - 2)) / (16 * alpha)


@dataclass(frozen=True)
class ExperimentRow:
    k: int
    alpha_k: int
    n_k: int
    min_abs_T: float
    paper_bound: float
    weak_quasinorm: float
    hardy_norm: float
    ratio: float

    columns = ("k", "alpha_k", "n_k", "min_abs_T", "paper_bound", "weak_quasinorm", "hardy_norm", "ratio")


@dataclass
class ExperimentReport:
    rows: list[ExperimentRow]
    monotonicity: Monotonicity
    cond1_constant: float
    hypothesis: str
    validation: ValidationReport

    def as_dicts(self) -> list[dict]:
        return [{c: getattr(r, c) for c in ExperimentRow.columns} for r in self.rows]


def divergence_experiment(
    spec: CounterexampleSpec,
    w: WeightSequence,
    n_bits: int,
    threads: int | None = None,
) -> ExperimentReport:
    """Evaluate ``T^kappa_{n_k} f`` at ``n_k = 2**alpha_k + 2`` for every block.

    The weights must be monotone on the orders used.  The report records
    which hypothesis set they satisfy: non-decreasing, or non-increasing
    with the empirical ``cond1`` constant.
    """
    n_bits = check_resolution(n_bits)
    validation = validate_alphas(spec)
    if not validation.ok:
        raise ValueError(f"invalid counterexample spec: {validation.first_failure()}")
    f = build_counterexample(spec, n_bits, validate=False)
    ns = [(1 << a) + 2 for a in spec.alphas]
    for k, n in enumerate(ns):
        if n > 1 << n_bits:
            raise ValueError(f"k={k}: order n_k={n} exceeds 2**{n_bits}")
    n_top = max(ns)
    shape = w.classify(n_top + 2)
    if shape is Monotonicity.NONE:
        raise ValueError(f"{w.label}: weights are not monotone on k <= {n_top + 1}")
    diag = weight_diagnostics(w, max(n_top, 3))
    if shape is Monotonicity.NON_DECREASING:
        hypothesis = "non-decreasing"
    else:
        hypothesis = f"non-increasing with cond1 constant c={diag.cond1_constant:.6g}"

    h_norm = hardy_norm(f, spec.p)

    def one(k):
        a, n = spec.alphas[k], ns[k]
        T = mean_stack(f, [n], w, SystemKind.KACZMARZ, Orientation.T)[0]
        weak = weak_lp_quasinorm(T, spec.p)
        return ExperimentRow(
            k=k,
            alpha_k=a,
            n_k=n,
            min_abs_T=float(np.min(np.abs(T))),
            paper_bound=paper_bound(spec.p, a),
            weak_quasinorm=weak,
            hardy_norm=h_norm,
            ratio=weak / h_norm,
        )

    workers = min(_resolve_threads(threads), spec.K)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(one, range(spec.K)))
    else:
        rows = [one(k) for k in range(spec.K)]
    return ExperimentReport(rows, shape, diag.cond1_constant, hypothesis, validation)
