"""Dyadic martingales at finite resolution: conditional expectations,
the martingale maximal function, Hardy quasi-norms and p-atoms.

A martingale is represented by its terminal stage ``f = f^(N)``; the stage
``f^(n)`` is ``condexp(f, n)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .dyadic import DyadicInterval, GridFunction, as_grid, lp_norm

__all__ = [
    "condexp",
    "martingale_stages",
    "maximal_function",
    "hardy_norm",
    "noise_floor",
    "AtomReport",
    "is_p_atom",
]

ATOL = 1e-12


def _level_means(values: np.ndarray) -> list[np.ndarray]:
    """Interval averages at every level, coarsest (level 0) first.

    Built by halving (average of the two children), so a block whose halves
    cancel exactly averages to exactly 0.
    """
    out = [values]
    while out[-1].size > 1:
        v = out[-1]
        out.append(0.5 * (v[0::2] + v[1::2]))
    return out[::-1]


def _block_means(values: np.ndarray, level: int) -> np.ndarray:
    v = values
    for _ in range(v.size.bit_length() - 1 - level):
        v = 0.5 * (v[0::2] + v[1::2])
    return v


def condexp(f, n: int) -> GridFunction:
    """Average of ``f`` over each level-``n`` dyadic interval."""
    f = as_grid(f)
    if not 0 <= n <= f.n_bits:
        raise ValueError(f"level {n} outside [0, {f.n_bits}]")
    means = _block_means(f.values, n)
    return GridFunction(np.repeat(means, 1 << (f.n_bits - n)))


def martingale_stages(f) -> np.ndarray:
    """Array whose row ``n`` is ``condexp(f, n)``, ``n = 0 .. N``."""
    f = as_grid(f)
    N = f.n_bits
    rows = np.empty((N + 1, 1 << N))
    for n, means in enumerate(_level_means(f.values)):
        rows[n] = np.repeat(means, 1 << (N - n))
    return rows


def maximal_function(f) -> GridFunction:
    """``f* = max_n |E_n f|``."""
    return GridFunction(np.abs(martingale_stages(f)).max(axis=0))


def noise_floor(f) -> float:
    """Level below which a value of ``f*`` is indistinguishable from roundoff:
    ``(N + 2) * eps * max|f|``."""
    f = as_grid(f)
    return (f.n_bits + 2) * np.finfo(float).eps * f.sup_norm()


def hardy_norm(f, p: float) -> float:
    """``||f||_{H_p} = ||f*||_p`` (a quasi-norm for ``p < 1``).

    Values of ``f*`` at or below :func:`noise_floor` are taken as 0.  For
    ``p < 1`` the power ``t**p`` turns roundoff of size ``1e-11`` into
    contributions of order ``1e-3``, so cells where every average cancels
    exactly must not inherit that residue.
    """
    fstar = maximal_function(f).values
    fstar = np.where(fstar <= noise_floor(f), 0.0, fstar)
    return lp_norm(GridFunction(fstar), p)


@dataclass(frozen=True)
class AtomReport:
    mean_ok: bool
    size_ok: bool
    support_ok: bool
    measured_sup: float
    bound: float
    mean: float = 0.0

    def __bool__(self) -> bool:
        return self.mean_ok and self.size_ok and self.support_ok

    @property
    def is_atom(self) -> bool:
        return bool(self)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("mean")
        return json.dumps(d)


def is_p_atom(a, p: float, interval: DyadicInterval, tol: float = ATOL) -> AtomReport:
    """Check the three p-atom conditions for ``a`` on ``interval``.

    Tolerances are relative to the size bound ``mu(I)**(-1/p)``.
    """
    if not p > 0:
        raise ValueError("p must be positive")
    a = as_grid(a)
    bound = interval.measure ** (-1.0 / p)
    cells = interval.cells(a.n_bits)
    inside = a.values[cells]
    outside = np.concatenate((a.values[: cells.start], a.values[cells.stop :]))
    sup = float(np.max(np.abs(a.values)))
    integral = float(np.sum(inside)) / a.values.size
    scale = tol * max(bound, 1.0)
    return AtomReport(
        mean_ok=abs(integral) <= scale * interval.measure,
        size_ok=sup <= bound + scale,
        support_ok=bool(np.all(outside == 0.0)),
        measured_sup=sup,
        bound=bound,
        mean=integral,
    )
