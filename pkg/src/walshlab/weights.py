"""Weight sequences ``q_k`` and the named summability families built on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Monotonicity",
    "Orientation",
    "FamilyKind",
    "WeightSequence",
    "MeanFamily",
    "make_weights",
    "cesaro_numbers",
    "BUILTIN_FAMILIES",
    "k_plus_1",
]


class Monotonicity(str, enum.Enum):
    NON_INCREASING = "non-increasing"
    NON_DECREASING = "non-decreasing"
    NONE = "none"


class Orientation(str, enum.Enum):
    T = "t"
    NORLUND = "norlund"

    @classmethod
    def parse(cls, value) -> "Orientation":
        if isinstance(value, cls):
            return value
        text = str(value).lower().replace("ö", "o")
        if text in ("t", "t-mean", "tmean"):
            return cls.T
        if text in ("norlund", "n", "norlund-mean"):
            return cls.NORLUND
        raise ValueError(f"unknown orientation {value!r}")


class WeightSequence:
    """Nonnegative weights ``q_k`` with cached prefix sums ``Q_n = sum_{k<n} q_k``.

    ``func`` maps an integer array ``k`` to ``q_k``.  A finite sequence (e.g.
    one read from a file) is given by passing an array instead, in which case
    requests past its end raise ``IndexError``.

    Declared monotonicity is checked on ``k >= 1`` only: ``q_0`` multiplies
    ``S_0 f = 0`` (and ``D_0 = 0``), so it affects the means solely through
    the normalisation ``Q_n``.
    """

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray] | np.ndarray,
        monotonicity: Monotonicity | str = Monotonicity.NONE,
        label: str = "custom",
    ):
        if callable(func):
            self._func = func
            self._limit = None
        else:
            table = np.asarray(func, dtype=float).reshape(-1)
            self._func = lambda k: table[k]
            self._limit = table.size
        self.monotonicity = Monotonicity(monotonicity)
        self.label = label
        self._q = np.zeros(0)
        self._Q = np.zeros(1)

    def __repr__(self) -> str:
        return f"WeightSequence({self.label!r}, {self.monotonicity.value})"

    @property
    def length(self) -> int | None:
        return self._limit

    def _extend(self, n: int) -> None:
        if n <= self._q.size:
            return
        if self._limit is not None and n > self._limit:
            raise IndexError(f"{self.label}: weights defined only for k < {self._limit}")
        size = max(n, 2 * self._q.size, 64)
        if self._limit is not None:
            size = min(size, self._limit)
        q = np.asarray(self._func(np.arange(size)), dtype=float)
        if q.shape != (size,):
            raise ValueError(f"{self.label}: weight function returned shape {q.shape}")
        if not np.all(np.isfinite(q)) or np.any(q < 0):
            bad = int(np.flatnonzero(~(np.isfinite(q) & (q >= 0)))[0])
            raise ValueError(f"{self.label}: q_{bad} = {q[bad]} is not a finite nonnegative number")
        Q = np.concatenate(([0.0], np.cumsum(q)))
        q.flags.writeable = False
        Q.flags.writeable = False
        self._q, self._Q = q, Q

    def q(self, n: int) -> np.ndarray:
        """First ``n`` weights ``q_0 .. q_{n-1}``."""
        self._extend(n)
        return self._q[:n]

    def Q(self, n: int) -> np.ndarray:
        """Prefix sums ``Q_0 .. Q_n``."""
        self._extend(n)
        return self._Q[: n + 1]

    def prefix(self, n: int) -> float:
        return float(self.Q(n)[n])

    def __getitem__(self, k: int) -> float:
        return float(self.q(k + 1)[k])

    def verify_monotone(self, n: int) -> bool:
        """Check the declared monotonicity on ``1 <= k < n``."""
        if self.monotonicity is Monotonicity.NONE or n <= 2:
            return True
        d = np.diff(self.q(n)[1:])
        if self.monotonicity is Monotonicity.NON_INCREASING:
            return bool(np.all(d <= 0))
        return bool(np.all(d >= 0))

    def classify(self, n: int) -> Monotonicity:
        """Observed monotonicity on ``1 <= k < n``."""
        d = np.diff(self.q(n)[1:])
        if np.all(d <= 0):
            return Monotonicity.NON_INCREASING
        if np.all(d >= 0):
            return Monotonicity.NON_DECREASING
        return Monotonicity.NONE


def cesaro_numbers(alpha: float, n: int) -> np.ndarray:
    """``A_k^alpha`` for ``k = 0 .. n-1`` with ``A_0^alpha = 1``."""
    k = np.arange(1, n, dtype=float)
    return np.concatenate(([1.0], np.cumprod((k + alpha) / k)))


def _fejer(k):
    return np.ones(k.shape)


def _riesz(k):
    out = np.zeros(k.shape)
    out[1:] = 1.0 / k[1:]
    return out


def _iterated_log(x: np.ndarray, beta: int) -> np.ndarray:
    # log applied beta times; undefined or negative values clamp to 0
    out = np.asarray(x, dtype=float)
    valid = np.ones(out.shape, dtype=bool)
    for _ in range(beta):
        valid &= out > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(valid, np.log(np.where(valid, out, 1.0)), 0.0)
    return np.where(valid, np.maximum(out, 0.0), 0.0)


class FamilyKind(str, enum.Enum):
    FEJER = "fejer"
    RIESZ = "riesz"
    CESARO = "cesaro"
    INVERSE_CESARO = "u"
    POWER_V = "v"
    LOG_B = "b"
    NORLUND_LOG = "nlog"
    CUSTOM = "custom"


_NATURAL_ORIENTATION = {
    FamilyKind.FEJER: Orientation.T,
    FamilyKind.RIESZ: Orientation.T,
    FamilyKind.CESARO: Orientation.NORLUND,
    FamilyKind.INVERSE_CESARO: Orientation.T,
    FamilyKind.POWER_V: Orientation.T,
    FamilyKind.LOG_B: Orientation.T,
    FamilyKind.NORLUND_LOG: Orientation.NORLUND,
}


@dataclass(frozen=True)
class MeanFamily:
    """A named summability method together with its orientation.

    Use the class-method constructors (``MeanFamily.cesaro(0.5)``) or
    :meth:`parse` with the command-line syntax ``fejer``, ``riesz``,
    ``cesaro:a``, ``u:a``, ``v:a``, ``b:a:beta``, ``nlog``.
    """

    kind: FamilyKind
    alpha: float | None = None
    beta: int | None = None
    weights: WeightSequence | None = field(default=None, compare=False)
    orientation: Orientation | None = None

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        a, b = self.alpha, self.beta
        if kind in (FamilyKind.CESARO, FamilyKind.INVERSE_CESARO):
            if a is None or not 0 < a < 1:
                raise ValueError(f"{kind.value}: alpha must lie in (0, 1), got {a}")
        elif kind is FamilyKind.POWER_V:
            if a is None or not 0 < a <= 1:
                raise ValueError(f"v: alpha must lie in (0, 1], got {a}")
        elif kind is FamilyKind.LOG_B:
            if a is None or not a > 0:
                raise ValueError(f"b: alpha must be positive, got {a}")
            if b not in (1, 2):
                raise ValueError(f"b: beta must be 1 or 2, got {b}")
        elif kind is FamilyKind.CUSTOM:
            if not isinstance(self.weights, WeightSequence):
                raise ValueError("custom family requires a WeightSequence")
        natural = _NATURAL_ORIENTATION.get(kind, Orientation.T)
        if self.orientation is None:
            object.__setattr__(self, "orientation", natural)
        else:
            orientation = Orientation.parse(self.orientation)
            if kind is not FamilyKind.CUSTOM and orientation is not natural:
                raise ValueError(f"{kind.value} is a {natural.value}-oriented family")
            object.__setattr__(self, "orientation", orientation)

    @classmethod
    def fejer(cls) -> "MeanFamily":
        return cls(FamilyKind.FEJER)

    @classmethod
    def riesz(cls) -> "MeanFamily":
        return cls(FamilyKind.RIESZ)

    @classmethod
    def cesaro(cls, alpha: float) -> "MeanFamily":
        return cls(FamilyKind.CESARO, alpha=alpha)

    @classmethod
    def inverse_cesaro(cls, alpha: float) -> "MeanFamily":
        return cls(FamilyKind.INVERSE_CESARO, alpha=alpha)

    @classmethod
    def power_v(cls, alpha: float) -> "MeanFamily":
        return cls(FamilyKind.POWER_V, alpha=alpha)

    @classmethod
    def log_b(cls, alpha: float, beta: int) -> "MeanFamily":
        return cls(FamilyKind.LOG_B, alpha=alpha, beta=beta)

    @classmethod
    def norlund_log(cls) -> "MeanFamily":
        return cls(FamilyKind.NORLUND_LOG)

    @classmethod
    def custom(cls, weights: WeightSequence, orientation="t") -> "MeanFamily":
        return cls(FamilyKind.CUSTOM, weights=weights, orientation=Orientation.parse(orientation))

    @classmethod
    def parse(cls, text: str, custom_loader=None) -> "MeanFamily":
        """Parse ``name[:params]``.  ``custom:<ref>`` is resolved by
        ``custom_loader(ref) -> WeightSequence``."""
        name, _, rest = text.strip().partition(":")
        name = name.lower()
        parts = rest.split(":") if rest else []
        try:
            if name == "fejer" and not parts:
                return cls.fejer()
            if name == "riesz" and not parts:
                return cls.riesz()
            if name == "nlog" and not parts:
                return cls.norlund_log()
            if name == "cesaro" and len(parts) == 1:
                return cls.cesaro(float(parts[0]))
            if name == "u" and len(parts) == 1:
                return cls.inverse_cesaro(float(parts[0]))
            if name == "v" and len(parts) == 1:
                return cls.power_v(float(parts[0]))
            if name == "b" and len(parts) == 2:
                return cls.log_b(float(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise ValueError(f"bad family {text!r}: {exc}") from None
        if name == "custom" and rest:
            if custom_loader is None:
                raise ValueError("custom families need a weight loader")
            return cls.custom(custom_loader(rest))
        raise ValueError(f"unknown family {text!r}")

    @property
    def name(self) -> str:
        k = self.kind
        if k in (FamilyKind.CESARO, FamilyKind.INVERSE_CESARO, FamilyKind.POWER_V):
            return f"{k.value}:{self.alpha:g}"
        if k is FamilyKind.LOG_B:
            return f"b:{self.alpha:g}:{self.beta}"
        if k is FamilyKind.CUSTOM:
            return f"custom:{self.weights.label}"
        return k.value


def make_weights(family: MeanFamily) -> WeightSequence:
    """Weight sequence generating a family's means."""
    k, a, b = family.kind, family.alpha, family.beta
    if k is FamilyKind.FEJER:
        return WeightSequence(_fejer, Monotonicity.NON_INCREASING, "fejer")
    if k is FamilyKind.RIESZ:
        return WeightSequence(_riesz, Monotonicity.NON_INCREASING, "riesz")
    if k is FamilyKind.NORLUND_LOG:
        return WeightSequence(_riesz, Monotonicity.NON_INCREASING, "nlog")
    if k in (FamilyKind.CESARO, FamilyKind.INVERSE_CESARO):
        return WeightSequence(
            lambda idx: cesaro_numbers(a - 1.0, idx.size),
            Monotonicity.NON_INCREASING,
            family.name,
        )
    if k is FamilyKind.POWER_V:

        def power(idx):
            out = np.ones(idx.shape)
            out[1:] = idx[1:].astype(float) ** (a - 1.0)
            return out

        return WeightSequence(power, Monotonicity.NON_INCREASING, family.name)
    if k is FamilyKind.LOG_B:

        def logb(idx):
            out = np.zeros(idx.shape)
            # log(k**a) = a*log(k) keeps large k in range
            first = a * np.log(idx[1:].astype(float))
            out[1:] = first if b == 1 else _iterated_log(first, b - 1)
            return np.maximum(out, 0.0)

        return WeightSequence(logb, Monotonicity.NON_DECREASING, family.name)
    return family.weights


def _k_plus_1(k):
    return k + 1.0


BUILTIN_FAMILIES = (
    MeanFamily.fejer(),
    MeanFamily.riesz(),
    MeanFamily.cesaro(0.5),
    MeanFamily.inverse_cesaro(0.5),
    MeanFamily.power_v(0.7),
    MeanFamily.log_b(1.0, 1),
    MeanFamily.log_b(1.0, 2),
    MeanFamily.norlund_log(),
)
"""One representative of every named family, each in its natural orientation."""


def k_plus_1() -> WeightSequence:
    """``q_k = k + 1``: the non-decreasing sequence used in the sharpness experiment."""
    return WeightSequence(_k_plus_1, Monotonicity.NON_DECREASING, "k_plus_1")


NAMED_CUSTOM = {"k_plus_1": k_plus_1}
