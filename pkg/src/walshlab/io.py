"""Text formats: grid functions, spectral coefficients, weight tables and reports.

Floats are written with 17 significant digits so values survive a round trip.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .dyadic import GridFunction
from .systems import SpectralCoeffs, SystemKind
from .weights import Monotonicity, WeightSequence

__all__ = [
    "fmt",
    "format_grid",
    "parse_grid",
    "read_grid",
    "format_coeffs",
    "parse_coeffs",
    "read_coeffs",
    "format_table",
    "read_weights",
]


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    # + 0.0 folds negative zero
    return format(float(x) + 0.0, ".17g")


def _meta_line(meta: dict) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in meta.items())


def _parse_meta(line: str) -> dict:
    out = {}
    for item in line.lstrip("#").split():
        key, sep, value = item.partition("=")
        if sep:
            out[key] = value
    return out


def format_grid(f: GridFunction, **meta) -> str:
    lines = [f"# resolution={f.n_bits}"]
    if meta:
        lines.append(_meta_line(meta))
    lines.extend(fmt(v) for v in f.values)
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> tuple[GridFunction, dict]:
    meta: dict = {}
    values = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta.update(_parse_meta(line))
            continue
        values.append(float(line.split(",")[-1]))
    f = GridFunction(values)
    if "resolution" in meta and int(meta["resolution"]) != f.n_bits:
        raise ValueError(f"header says resolution={meta['resolution']} but found {len(values)} values")
    return f, meta


def read_grid(path) -> GridFunction:
    return parse_grid(Path(path).read_text())[0]


def format_coeffs(c: SpectralCoeffs) -> str:
    lines = [f"# system={c.system.value} resolution={c.n_bits}", "index,coefficient"]
    lines.extend(f"{i},{fmt(v)}" for i, v in enumerate(c.coeffs))
    return "\n".join(lines) + "\n"


def parse_coeffs(text: str) -> SpectralCoeffs:
    meta: dict = {}
    rows = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta.update(_parse_meta(line))
            continue
        idx, _, value = line.partition(",")
        if idx.strip() == "index":
            continue
        rows[int(idx)] = float(value)
    n = len(rows)
    if sorted(rows) != list(range(n)):
        raise ValueError("coefficient indices must be 0 .. 2**N - 1")
    n_bits = n.bit_length() - 1
    if "resolution" in meta and int(meta["resolution"]) != n_bits:
        raise ValueError("coefficient count does not match the resolution header")
    system = SystemKind.parse(meta.get("system", "walsh"))
    return SpectralCoeffs(n_bits, system, [rows[i] for i in range(n)])


def read_coeffs(path) -> SpectralCoeffs:
    return parse_coeffs(Path(path).read_text())


def format_table(rows: list[dict], columns, as_json: bool = False) -> str:
    if as_json:
        clean = [{c: _jsonable(r[c]) for c in columns} for r in rows]
        return json.dumps(clean, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([fmt(r[c]) for c in columns])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    return x if np.isfinite(x) else None


def read_weights(path) -> WeightSequence:
    """Two-column ``k,q_k`` file; ``k`` must run 0, 1, 2, ...

    An optional ``# monotonicity=non-increasing|non-decreasing`` header
    declares the class, which is then verified; without it the class is
    inferred from the data.
    """
    path = Path(path)
    meta: dict = {}
    pairs = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            meta.update(_parse_meta(line))
            continue
        k, _, q = line.partition(",")
        if k.strip() == "k":
            continue
        pairs.append((int(k), float(q)))
    if not pairs:
        raise ValueError(f"{path}: no weights")
    ks = [k for k, _ in pairs]
    if ks != list(range(len(ks))):
        raise ValueError(f"{path}: k column must be 0, 1, 2, ...")
    q = np.array([v for _, v in pairs])
    if np.any(~np.isfinite(q)) or np.any(q < 0):
        raise ValueError(f"{path}: weights must be finite and nonnegative")
    w = WeightSequence(q, Monotonicity.NONE, path.stem)
    declared = meta.get("monotonicity")
    if declared is None:
        w.monotonicity = w.classify(q.size)
    else:
        w.monotonicity = Monotonicity(declared)
        if not w.verify_monotone(q.size):
            raise ValueError(f"{path}: weights are not {declared}")
    return w
