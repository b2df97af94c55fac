"""Finite-resolution model of the dyadic group.

A point of the group is truncated to its first ``N`` coordinates
``(x_0, ..., x_{N-1})`` and stored as a cell index in ``[0, 2**N)``.
Coordinate ``x_k`` lives at bit ``N - 1 - k`` of the index, so the set of
points sharing their first ``n`` coordinates (a dyadic interval of level
``n``) is a contiguous block of ``2**(N - n)`` cells.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_BITS = 30

__all__ = [
    "MAX_BITS",
    "DyadicPoint",
    "DyadicInterval",
    "GridFunction",
    "check_resolution",
    "as_grid",
    "xor_add",
    "integrate",
    "lp_norm",
    "weak_lp_quasinorm",
]


def check_resolution(n_bits: int) -> int:
    """Validate a resolution (number of retained coordinates)."""
    if isinstance(n_bits, bool) or int(n_bits) != n_bits:
        raise TypeError(f"resolution must be an integer, got {n_bits!r}")
    n_bits = int(n_bits)
    if not 1 <= n_bits <= MAX_BITS:
        raise ValueError(f"resolution must lie in [1, {MAX_BITS}], got {n_bits}")
    return n_bits


@dataclass(frozen=True)
class DyadicPoint:
    n_bits: int
    index: int

    def __post_init__(self):
        check_resolution(self.n_bits)
        if not 0 <= self.index < (1 << self.n_bits):
            raise ValueError(f"cell index {self.index} outside [0, 2**{self.n_bits})")

    @classmethod
    def from_coords(cls, coords) -> "DyadicPoint":
        coords = [int(c) for c in coords]
        if any(c not in (0, 1) for c in coords):
            raise ValueError("coordinates must be 0 or 1")
        n_bits = len(coords)
        index = 0
        for k, c in enumerate(coords):
            index |= c << (n_bits - 1 - k)
        return cls(n_bits, index)

    def coord(self, k: int) -> int:
        """Return ``x_k``."""
        if not 0 <= k < self.n_bits:
            raise IndexError(f"coordinate {k} not represented at resolution {self.n_bits}")
        return (self.index >> (self.n_bits - 1 - k)) & 1

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.coord(k) for k in range(self.n_bits))


@dataclass(frozen=True)
class DyadicInterval:
    """The set ``I_level(x)`` of points whose first ``level`` coordinates
    are the bits of ``prefix`` (``x_0`` is the most significant)."""

    level: int
    prefix: int = 0

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if not 0 <= self.prefix < (1 << self.level):
            raise ValueError(f"prefix {self.prefix} outside [0, 2**{self.level})")

    @classmethod
    def containing(cls, point: DyadicPoint, level: int) -> "DyadicInterval":
        if not 0 <= level <= point.n_bits:
            raise ValueError("level outside [0, N]")
        return cls(level, point.index >> (point.n_bits - level))

    @property
    def measure(self) -> float:
        return 2.0 ** -self.level

    def cells(self, n_bits: int) -> slice:
        if self.level > n_bits:
            raise ValueError(f"level-{self.level} interval is finer than resolution {n_bits}")
        width = 1 << (n_bits - self.level)
        return slice(self.prefix * width, (self.prefix + 1) * width)

    def indicator(self, n_bits: int) -> "GridFunction":
        values = np.zeros(1 << n_bits)
        values[self.cells(n_bits)] = 1.0
        return GridFunction(values)

    def children(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        return (
            DyadicInterval(self.level + 1, 2 * self.prefix),
            DyadicInterval(self.level + 1, 2 * self.prefix + 1),
        )


class GridFunction:
    """Real function on the level-``N`` cells of the dyadic group.

    The value array is copied on construction and frozen, so instances can
    be shared freely.
    """

    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=float, copy=True).reshape(-1)
        size = arr.size
        if size < 2 or size & (size - 1):
            raise ValueError(f"grid length must be a power of two >= 2, got {size}")
        check_resolution(size.bit_length() - 1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("grid values must be finite")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n_bits(self) -> int:
        return self._values.size.bit_length() - 1

    def __len__(self) -> int:
        return self._values.size

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._values
        return self._values.astype(dtype)

    def __repr__(self) -> str:
        return f"GridFunction(n_bits={self.n_bits}, values={self._values!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.n_bits == other.n_bits and bool(np.array_equal(self._values, other._values))

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.n_bits != self.n_bits:
                raise ValueError("resolution mismatch")
            return other._values
        return other

    def __add__(self, other):
        return GridFunction(self._values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self._values - self._coerce(other))

    def __rsub__(self, other):
        return GridFunction(self._coerce(other) - self._values)

    def __mul__(self, other):
        return GridFunction(self._values * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self._values / self._coerce(other))

    def __neg__(self):
        return GridFunction(-self._values)

    def __abs__(self):
        return GridFunction(np.abs(self._values))

    @classmethod
    def constant(cls, n_bits: int, c: float) -> "GridFunction":
        return cls(np.full(1 << check_resolution(n_bits), float(c)))

    def at(self, point: DyadicPoint) -> float:
        if point.n_bits != self.n_bits:
            raise ValueError("resolution mismatch")
        return float(self._values[point.index])

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self._values)))


def as_grid(f) -> GridFunction:
    return f if isinstance(f, GridFunction) else GridFunction(f)


def xor_add(x: DyadicPoint, y: DyadicPoint) -> DyadicPoint:
    """Group operation: coordinate-wise addition modulo 2."""
    if x.n_bits != y.n_bits:
        raise ValueError(f"resolution mismatch: {x.n_bits} != {y.n_bits}")
    return DyadicPoint(x.n_bits, x.index ^ y.index)


def integrate(f) -> float:
    """Haar integral of a grid function (mean of the cell values)."""
    return float(np.mean(as_grid(f).values))


def _check_exponent(p: float) -> float:
    p = float(p)
    if not p > 0:
        raise ValueError(f"exponent must be positive, got {p}")
    return p


def lp_norm(f, p: float) -> float:
    p = _check_exponent(p)
    a = np.abs(as_grid(f).values)
    top = float(a.max())
    if np.isinf(p) or top == 0.0:
        return top
    # factor out max|f| so a**p neither underflows nor overflows
    return top * float(np.mean((a / top) ** p) ** (1.0 / p))


def weak_lp_quasinorm(f, p: float) -> float:
    """Exact ``sup_{lam > 0} lam * mu(|f| > lam) ** (1/p)``.

    ``|f|`` is a simple function, so the supremum is approached as ``lam``
    increases to one of the values ``v`` taken by ``|f|``, where the
    distribution function equals ``mu(|f| >= v)``.
    """
    p = _check_exponent(p)
    a = np.sort(np.abs(as_grid(f).values))[::-1]
    if a[0] == 0.0:
        return 0.0
    # mu(|f| >= a[i]) for the last occurrence of each distinct value
    last = np.r_[a[1:] != a[:-1], True]
    values = a[last]
    measure = (np.flatnonzero(last) + 1) / a.size
    keep = values > 0
    return float(np.max(values[keep] * measure[keep] ** (1.0 / p)))
