"""Test-signal generators addressed by short text specs.

==========================  ==============================================
``constant:c``              ``f = c``
``indicator:level:prefix``  indicator of a dyadic interval
``walsh:n``                 ``w_n``
``kaczmarz:n``              ``kappa_n``
``dirichlet:n[:system]``    ``D_n`` (Walsh by default)
``step:b0=v0,b1=v1,...``    piecewise constant, value ``v_i`` from cell ``b_i``
``random:seed[:level]``     seeded standard normals, optionally constant
                            on the level-``level`` dyadic intervals
==========================  ==============================================
"""

from __future__ import annotations

import numpy as np

from .dyadic import DyadicInterval, GridFunction, check_resolution
from .summability import dirichlet_kernel
from .systems import kaczmarz_function, walsh_function

__all__ = ["make_signal", "random_signal"]


def random_signal(seed: int, n_bits: int, level: int | None = None) -> GridFunction:
    n_bits = check_resolution(n_bits)
    rng = np.random.default_rng(seed)
    if level is None:
        return GridFunction(rng.standard_normal(1 << n_bits))
    if not 0 <= level <= n_bits:
        raise ValueError(f"level {level} outside [0, {n_bits}]")
    return GridFunction(np.repeat(rng.standard_normal(1 << level), 1 << (n_bits - level)))


def _step(body: str, n_bits: int) -> GridFunction:
    size = 1 << n_bits
    points = []
    for item in body.split(","):
        b, sep, v = item.partition("=")
        if not sep:
            raise ValueError(f"step segment {item!r} must be breakpoint=value")
        points.append((int(b), float(v)))
    points.sort()
    values = np.zeros(size)
    for i, (b, v) in enumerate(points):
        if not 0 <= b < size:
            raise ValueError(f"breakpoint {b} outside [0, {size})")
        end = points[i + 1][0] if i + 1 < len(points) else size
        values[b:end] = v
    return GridFunction(values)


def make_signal(spec: str, n_bits: int) -> GridFunction:
    """Build a signal at resolution ``n_bits`` from its text spec."""
    n_bits = check_resolution(n_bits)
    kind, _, rest = spec.strip().partition(":")
    args = rest.split(":") if rest else []
    kind = kind.lower()
    try:
        if kind == "constant" and len(args) == 1:
            return GridFunction.constant(n_bits, float(args[0]))
        if kind == "indicator" and len(args) == 2:
            return DyadicInterval(int(args[0]), int(args[1])).indicator(n_bits)
        if kind == "walsh" and len(args) == 1:
            return walsh_function(int(args[0]), n_bits)
        if kind == "kaczmarz" and len(args) == 1:
            return kaczmarz_function(int(args[0]), n_bits)
        if kind == "dirichlet" and len(args) in (1, 2):
            system = args[1] if len(args) == 2 else "walsh"
            return dirichlet_kernel(int(args[0]), system, n_bits)
        if kind == "step" and rest:
            return _step(rest, n_bits)
        if kind == "random" and len(args) in (1, 2):
            level = int(args[1]) if len(args) == 2 else None
            return random_signal(int(args[0]), n_bits, level)
    except ValueError as exc:
        raise ValueError(f"bad signal {spec!r}: {exc}") from None
    raise ValueError(f"unknown signal {spec!r}")
