"""Rademacher, Walsh (Paley) and Walsh-Kaczmarz functions and transforms."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dyadic import DyadicPoint, GridFunction, as_grid, check_resolution

__all__ = [
    "SystemKind",
    "SpectralCoeffs",
    "rademacher",
    "walsh",
    "kaczmarz",
    "msb",
    "reverse_bits",
    "kaczmarz_index_map",
    "kaczmarz_permutation",
    "bit_reversal_permutation",
    "walsh_function",
    "kaczmarz_function",
    "system_function",
    "fwht",
    "fourier_coeffs",
    "synthesize",
]


class SystemKind(str, enum.Enum):
    WALSH = "walsh"
    KACZMARZ = "kaczmarz"

    @classmethod
    def parse(cls, value) -> "SystemKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown system {value!r}; expected 'walsh' or 'kaczmarz'") from None


def rademacher(k: int, x: DyadicPoint) -> int:
    """``r_k(x) = (-1) ** x_k``."""
    if k < 0 or k >= x.n_bits:
        raise ValueError(f"coordinate {k} not represented at resolution {x.n_bits}")
    return -1 if x.coord(k) else 1


def walsh(n: int, x: DyadicPoint) -> int:
    """Paley-ordered Walsh function ``w_n(x) = prod_k r_k(x) ** n_k``."""
    if not 0 <= n < (1 << x.n_bits):
        raise ValueError(f"index {n} outside [0, 2**{x.n_bits})")
    sign = 1
    k = 0
    while n >> k:
        if (n >> k) & 1:
            sign *= rademacher(k, x)
        k += 1
    return sign


def msb(n: int) -> int:
    """``|n|``: position of the highest set bit, so ``2**|n| <= n < 2**(|n|+1)``."""
    if n < 1:
        raise ValueError("|n| is only defined for n >= 1")
    return int(n).bit_length() - 1


def kaczmarz(n: int, x: DyadicPoint) -> int:
    """Walsh-Kaczmarz function, evaluated from its product definition
    ``r_|n|(x) * prod_{k<|n|} r_{|n|-1-k}(x) ** n_k``."""
    if not 0 <= n < (1 << x.n_bits):
        raise ValueError(f"index {n} outside [0, 2**{x.n_bits})")
    if n == 0:
        return 1
    top = msb(n)
    sign = rademacher(top, x)
    for k in range(top):
        if (n >> k) & 1:
            sign *= rademacher(top - 1 - k, x)
    return sign


def reverse_bits(value: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def kaczmarz_index_map(n: int) -> int:
    """Index ``rho(n)`` with ``kappa_n = w_rho(n)``.

    Within each block ``[2**s, 2**(s+1))`` the low ``s`` bits are reversed;
    ``rho(0) = 0``.  The map is an involution.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n == 0:
        return 0
    s = msb(n)
    return (1 << s) + reverse_bits(n - (1 << s), s)


@lru_cache(maxsize=None)
def _bitrev(n_bits: int) -> np.ndarray:
    idx = np.arange(1 << n_bits, dtype=np.int64)
    out = np.zeros_like(idx)
    for b in range(n_bits):
        out |= ((idx >> b) & 1) << (n_bits - 1 - b)
    out.flags.writeable = False
    return out


def bit_reversal_permutation(n_bits: int) -> np.ndarray:
    """Array ``perm`` with ``perm[j]`` = ``j`` with its ``n_bits`` bits reversed."""
    return _bitrev(check_resolution(n_bits))


@lru_cache(maxsize=None)
def _rho(n_bits: int) -> np.ndarray:
    out = np.zeros(1 << n_bits, dtype=np.int64)
    for s in range(n_bits):
        # block [2**s, 2**(s+1)) is 2**s + bitrev_s(low bits)
        out[1 << s : 2 << s] = (1 << s) + (_bitrev(s) if s else np.zeros(1, dtype=np.int64))
    out.flags.writeable = False
    return out


def kaczmarz_permutation(n_bits: int) -> np.ndarray:
    """Vectorised ``rho`` on ``[0, 2**n_bits)``."""
    return _rho(check_resolution(n_bits))


def fwht(values, direction: str = "forward") -> np.ndarray:
    """Walsh-Paley transform on the interval-contiguous cell layout.

    ``forward`` returns ``c[i] = 2**-N * sum_j f[j] * w_i(cell j)``;
    ``inverse`` returns ``f[j] = sum_i c[i] * w_i(cell j)``.  Works along the
    last axis, so a stack of signals is transformed in one call.

    The Sylvester butterfly pairs index bit ``b`` with cell bit ``b`` while
    ``w_i`` pairs index bit ``k`` with coordinate ``x_k`` (cell bit
    ``N-1-k``); a bit-reversal of the cell axis reconciles the two.
    """
    x = np.array(values, dtype=float, copy=True)
    size = x.shape[-1]
    if size < 1 or size & (size - 1):
        raise ValueError(f"transform length must be a power of two, got {size}")
    n_bits = size.bit_length() - 1
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    lead = x.shape[:-1]
    perm = _bitrev(n_bits) if n_bits else np.zeros(1, dtype=np.int64)
    if direction == "forward":
        x = x[..., perm]
    h = 1
    while h < size:
        y = x.reshape(*lead, size // (2 * h), 2, h)
        a = y[..., 0, :]
        b = y[..., 1, :]
        x = np.stack((a + b, a - b), axis=-2).reshape(*lead, size)
        h *= 2
    if direction == "forward":
        return x / size
    return x[..., perm]


@dataclass(frozen=True)
class SpectralCoeffs:
    n_bits: int
    system: SystemKind
    coeffs: np.ndarray

    def __post_init__(self):
        check_resolution(self.n_bits)
        arr = np.array(self.coeffs, dtype=float).reshape(-1)
        if arr.size != 1 << self.n_bits:
            raise ValueError("coefficient count must be 2**n_bits")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "system", SystemKind.parse(self.system))

    def __len__(self) -> int:
        return self.coeffs.size

    def energy(self) -> float:
        return float(np.sum(self.coeffs**2))


def fourier_coeffs(f, system="walsh") -> SpectralCoeffs:
    """Fourier coefficients ``f^(i) = integral f * psi_i dmu``."""
    f = as_grid(f)
    system = SystemKind.parse(system)
    c = fwht(f.values, "forward")
    if system is SystemKind.KACZMARZ:
        c = c[_rho(f.n_bits)]
    return SpectralCoeffs(f.n_bits, system, c)


def synthesize(coeffs: SpectralCoeffs) -> GridFunction:
    """Sum the full expansion ``sum_i c_i psi_i``."""
    c = coeffs.coeffs
    if coeffs.system is SystemKind.KACZMARZ:
        c = c[_rho(coeffs.n_bits)]
    return GridFunction(fwht(c, "inverse"))


def _basis_function(index: int, n_bits: int) -> np.ndarray:
    n_bits = check_resolution(n_bits)
    if not 0 <= index < (1 << n_bits):
        raise ValueError(f"index {index} outside [0, 2**{n_bits})")
    cells = _bitrev(n_bits)  # coordinate x_k sits at bit N-1-k
    parity = np.bitwise_count(cells & index) & 1
    return 1.0 - 2.0 * parity


def walsh_function(n: int, n_bits: int) -> GridFunction:
    """``w_n`` sampled on every cell."""
    return GridFunction(_basis_function(n, n_bits))


def kaczmarz_function(n: int, n_bits: int) -> GridFunction:
    """``kappa_n`` sampled on every cell."""
    if not 0 <= n < (1 << check_resolution(n_bits)):
        raise ValueError(f"index {n} outside [0, 2**{n_bits})")
    return GridFunction(_basis_function(kaczmarz_index_map(n), n_bits))


def system_function(n: int, n_bits: int, system) -> GridFunction:
    if SystemKind.parse(system) is SystemKind.WALSH:
        return walsh_function(n, n_bits)
    return kaczmarz_function(n, n_bits)
