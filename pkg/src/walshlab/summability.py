"""Kernels, partial sums, T and Norlund means, and their maximal operators.

Every mean acts diagonally on the coefficients of ``f``.  With ``c_i`` the
coefficients in the chosen system:

* ``S_M f``  multiplies ``c_i`` by ``[i < M]``;
* ``T_n f = Q_n**-1 sum_{k<n} q_k S_k f`` by ``(Q_n - Q_{i+1}) / Q_n``;
* ``t_n f = Q_n**-1 sum_{k=1..n} q_{n-k} S_k f`` by ``Q_{n-i} / Q_n``;

for ``i < n`` and by 0 otherwise.  Kernels are the same multipliers
synthesised without ``f``.  A whole range of ``n`` is evaluated as one
batched inverse transform.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dyadic import GridFunction, as_grid, check_resolution
from .systems import SystemKind, fourier_coeffs, fwht, kaczmarz_permutation
from .weights import MeanFamily, Orientation, WeightSequence, make_weights

__all__ = [
    "dirichlet_kernel",
    "fejer_kernel",
    "t_kernel",
    "norlund_kernel",
    "partial_sum",
    "t_mean",
    "norlund_mean",
    "fejer_mean",
    "apply_mean",
    "mean_stack",
    "dyadic_convolution",
    "maximal_operator",
    "fejer_majorant",
    "WeightDiagnostics",
    "weight_diagnostics",
    "abel_q_identity",
    "abel_kernel_identity",
]

# rows * 2**N elements per batched transform
_CHUNK_ELEMS = 1 << 22


def _synthesize(mult: np.ndarray, coeffs: np.ndarray | None, system: SystemKind) -> np.ndarray:
    """Inverse transform of ``mult * coeffs`` (system order) along the last axis."""
    spec = mult if coeffs is None else mult * coeffs
    if system is SystemKind.KACZMARZ:
        n_bits = spec.shape[-1].bit_length() - 1
        spec = spec[..., kaczmarz_permutation(n_bits)]
    return fwht(spec, "inverse")


def _check_order(n: int, n_bits: int, lower: int = 0) -> int:
    if int(n) != n or not lower <= n <= (1 << n_bits):
        raise ValueError(f"order {n} outside [{lower}, 2**{n_bits}]")
    return int(n)


def _weights_of(w) -> WeightSequence:
    return make_weights(w) if isinstance(w, MeanFamily) else w


def _mean_multipliers(ns: np.ndarray, w: WeightSequence, size: int, orientation: Orientation) -> np.ndarray:
    """Multiplier rows for the means of orders ``ns``."""
    ns = np.asarray(ns, dtype=np.int64)
    Q = w.Q(int(ns.max()))
    Qn = Q[ns]
    if np.any(Qn <= 0):
        bad = int(ns[np.flatnonzero(Qn <= 0)[0]])
        raise ValueError(f"{w.label}: Q_{bad} = 0, the mean of order {bad} is undefined")
    i = np.arange(size)
    active = i[None, :] < ns[:, None]
    if orientation is Orientation.T:
        idx = np.minimum(i + 1, Q.size - 1)
        num = Qn[:, None] - Q[idx][None, :]
    else:
        idx = np.clip(ns[:, None] - i[None, :], 0, Q.size - 1)
        num = Q[idx]
    return np.where(active, num / Qn[:, None], 0.0)


def dirichlet_kernel(n: int, system, n_bits: int) -> GridFunction:
    """``D_n = sum_{i<n} psi_i`` (``D_0 = 0``)."""
    n_bits = check_resolution(n_bits)
    n = _check_order(n, n_bits)
    mult = (np.arange(1 << n_bits) < n).astype(float)
    return GridFunction(_synthesize(mult, None, SystemKind.parse(system)))


def fejer_kernel(n: int, system, n_bits: int) -> GridFunction:
    """``K_n = n**-1 sum_{k=1..n} D_k``."""
    n_bits = check_resolution(n_bits)
    n = _check_order(n, n_bits, lower=1)
    i = np.arange(1 << n_bits)
    mult = np.where(i < n, (n - i) / n, 0.0)
    return GridFunction(_synthesize(mult, None, SystemKind.parse(system)))


def t_kernel(n: int, w, system, n_bits: int) -> GridFunction:
    """``F_n = Q_n**-1 sum_{k<n} q_k D_k``; ``T_n f = f * F_n``."""
    n_bits = check_resolution(n_bits)
    n = _check_order(n, n_bits, lower=1)
    mult = _mean_multipliers(np.array([n]), _weights_of(w), 1 << n_bits, Orientation.T)[0]
    return GridFunction(_synthesize(mult, None, SystemKind.parse(system)))


def norlund_kernel(n: int, w, system, n_bits: int) -> GridFunction:
    """``Q_n**-1 sum_{k=1..n} q_{n-k} D_k``."""
    n_bits = check_resolution(n_bits)
    n = _check_order(n, n_bits, lower=1)
    mult = _mean_multipliers(np.array([n]), _weights_of(w), 1 << n_bits, Orientation.NORLUND)[0]
    return GridFunction(_synthesize(mult, None, SystemKind.parse(system)))


def partial_sum(f, M: int, system) -> GridFunction:
    """``S_M f = sum_{i<M} f^(i) psi_i``."""
    f = as_grid(f)
    M = _check_order(M, f.n_bits)
    sys_ = SystemKind.parse(system)
    c = fourier_coeffs(f, sys_).coeffs
    mult = (np.arange(c.size) < M).astype(float)
    return GridFunction(_synthesize(mult, c, sys_))


def mean_stack(f, ns, w, system, orientation=Orientation.T) -> np.ndarray:
    """Means of ``f`` for every order in ``ns``; row ``r`` holds the mean of order ``ns[r]``."""
    f = as_grid(f)
    ns = np.atleast_1d(np.asarray(ns, dtype=np.int64))
    for n in (ns.min(), ns.max()):
        _check_order(int(n), f.n_bits, lower=1)
    sys_ = SystemKind.parse(system)
    w = _weights_of(w)
    c = fourier_coeffs(f, sys_).coeffs
    mult = _mean_multipliers(ns, w, c.size, Orientation.parse(orientation))
    return _synthesize(mult, c[None, :], sys_)


def t_mean(f, n: int, w, system) -> GridFunction:
    """``T_n f = Q_n**-1 sum_{k=0}^{n-1} q_k S_k f``."""
    return GridFunction(mean_stack(f, [n], w, system, Orientation.T)[0])


def norlund_mean(f, n: int, w, system) -> GridFunction:
    """``t_n f = Q_n**-1 sum_{k=1}^{n} q_{n-k} S_k f``."""
    return GridFunction(mean_stack(f, [n], w, system, Orientation.NORLUND)[0])


def fejer_mean(f, n: int, system) -> GridFunction:
    """``sigma_n f = n**-1 sum_{k=0}^{n-1} S_k f`` (starts at the empty sum ``S_0``)."""
    return t_mean(f, n, make_weights(MeanFamily.fejer()), system)


def apply_mean(f, n: int, family: MeanFamily, system) -> GridFunction:
    """Mean of order ``n`` of ``family`` in its own orientation."""
    return GridFunction(mean_stack(f, [n], make_weights(family), system, family.orientation)[0])


def dyadic_convolution(f, g) -> GridFunction:
    """``(f * g)(x) = integral f(t) g(x + t) dmu(t)``, via the Walsh transform."""
    f, g = as_grid(f), as_grid(g)
    if f.n_bits != g.n_bits:
        raise ValueError("resolution mismatch")
    cf = fwht(f.values, "forward")
    cg = fwht(g.values, "forward")
    return GridFunction(fwht(cf * cg, "inverse"))


def _resolve_threads(threads: int | None) -> int:
    return 1 if threads is None else max(1, int(threads))


def maximal_operator(
    f,
    family,
    n_max: int | None = None,
    system="walsh",
    orientation=None,
    threads: int | None = None,
) -> GridFunction:
    """Pointwise ``max_{1 <= n <= n_max} |mean_n f|``.

    ``family`` is a :class:`MeanFamily` (its orientation is used unless
    ``orientation`` is given) or a bare :class:`WeightSequence` (T
    orientation by default).  Orders with ``Q_n = 0`` have no mean and are
    skipped.  The sweep is split into chunks that may run on ``threads``
    workers; the max-reduction makes the result independent of the split.
    """
    f = as_grid(f)
    size = 1 << f.n_bits
    n_max = size if n_max is None else _check_order(n_max, f.n_bits, lower=1)
    if isinstance(family, MeanFamily):
        w = make_weights(family)
        orient = family.orientation if orientation is None else Orientation.parse(orientation)
    else:
        w = family
        orient = Orientation.T if orientation is None else Orientation.parse(orientation)
    Q = w.Q(n_max)
    ns = np.arange(1, n_max + 1)
    ns = ns[Q[ns] > 0]
    if ns.size == 0:
        raise ValueError(f"{w.label}: Q_n = 0 for every n <= {n_max}")
    sys_ = SystemKind.parse(system)
    c = fourier_coeffs(f, sys_).coeffs
    step = max(1, _CHUNK_ELEMS // size)
    chunks = [ns[i : i + step] for i in range(0, ns.size, step)]

    def chunk_max(chunk):
        mult = _mean_multipliers(chunk, w, size, orient)
        return np.abs(_synthesize(mult, c[None, :], sys_)).max(axis=0)

    workers = min(_resolve_threads(threads), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(chunk_max, chunks))
    else:
        parts = [chunk_max(ch) for ch in chunks]
    return GridFunction(np.max(parts, axis=0))


def fejer_majorant(f, n_max: int | None = None, system="walsh", threads: int | None = None) -> GridFunction:
    """``sup_{j <= n_max} |j**-1 sum_{k=1}^{j} S_k f|``.

    This is the maximal Fejer operator with the partial sums indexed from
    ``S_1``, i.e. the Norlund mean of the constant weights, and it is the
    majorant produced by summation by parts in the T-mean estimates.
    """
    fam = MeanFamily.custom(make_weights(MeanFamily.fejer()), orientation="norlund")
    return maximal_operator(f, fam, n_max, system, threads=threads)


@dataclass(frozen=True)
class WeightDiagnostics:
    """Rows ``(n, q_{n-1}, Q_n, q_{n-1} n / Q_n, q_{n+1} n / Q_{n+2})``.

    ``node_constant`` is the sup of the fourth column (the constant in
    ``q_{n-1}/Q_n <= C/n``) and ``cond1_constant`` the inf of the fifth
    (the constant in ``q_{n+1}/Q_{n+2} >= c/n``), both over the rows where
    the ratio is defined.
    """

    n: np.ndarray
    q_prev: np.ndarray
    Q_n: np.ndarray
    ratio_node: np.ndarray
    ratio_cond1: np.ndarray
    node_constant: float
    cond1_constant: float
    label: str = ""

    columns = ("n", "q_prev", "Q_n", "ratio_node", "ratio_cond1")

    def rows(self) -> list[dict]:
        out = []
        for r in range(self.n.size):
            out.append(
                {
                    "n": int(self.n[r]),
                    "q_prev": float(self.q_prev[r]),
                    "Q_n": float(self.Q_n[r]),
                    "ratio_node": float(self.ratio_node[r]),
                    "ratio_cond1": float(self.ratio_cond1[r]),
                }
            )
        return out


def weight_diagnostics(w, n_max: int, n_min: int = 1) -> WeightDiagnostics:
    """Tabulate the growth ratios of a weight sequence for ``n_min <= n <= n_max``.

    Ratios whose denominator vanishes are reported as ``nan``.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    w = _weights_of(w)
    q = w.q(n_max + 2)
    Q = w.Q(n_max + 2)
    n = np.arange(n_min, n_max + 1)
    q_prev = q[n - 1]
    Qn = Q[n]
    with np.errstate(divide="ignore", invalid="ignore"):
        node = np.where(Qn > 0, q_prev * n / Qn, np.nan)
        cond1 = np.where(Q[n + 2] > 0, q[n + 1] * n / Q[n + 2], np.nan)
    C = float(np.nanmax(node)) if np.any(np.isfinite(node)) else float("nan")
    c = float(np.nanmin(cond1)) if np.any(np.isfinite(cond1)) else float("nan")
    return WeightDiagnostics(n, q_prev, Qn, node, cond1, C, c, w.label)


def abel_q_identity(w, n: int) -> tuple[float, float]:
    """Both sides of ``Q_n = sum_{j=0}^{n-2} (q_j - q_{j+1}) j + q_{n-1} (n-1)``
    as printed; returns ``(Q_n, right-hand side)``."""
    w = _weights_of(w)
    q = w.q(n)
    j = np.arange(n - 1)
    rhs = float(np.sum((q[:-1] - q[1:]) * j) + q[n - 1] * (n - 1))
    return w.prefix(n), rhs


def abel_kernel_identity(n: int, w, system, n_bits: int) -> tuple[GridFunction, GridFunction]:
    """Both sides of
    ``F_n = Q_n**-1 (sum_{j=0}^{n-2} (q_j - q_{j+1}) j K_j + q_{n-1} (n-1) K_{n-1})``.

    The right side is assembled from Fejer kernels, with ``j K_j`` taken as
    ``sum_{k=1}^{j} D_k`` so the ``j = 0`` term vanishes.
    """
    w = _weights_of(w)
    n_bits = check_resolution(n_bits)
    n = _check_order(n, n_bits, lower=1)
    sys_ = SystemKind.parse(system)
    lhs = t_kernel(n, w, sys_, n_bits)
    q = w.q(n)
    i = np.arange(1 << n_bits)
    # spectral multiplier of j K_j is (j - i)_+
    js = np.arange(n)
    cum = np.clip(js[:, None] - i[None, :], 0, None).astype(float)
    coef = np.zeros(n)
    coef[: n - 1] = q[:-1] - q[1:]
    coef[n - 1] += q[n - 1]
    rhs = _synthesize(coef @ cum, None, sys_) / w.prefix(n)
    return lhs, GridFunction(rhs)
