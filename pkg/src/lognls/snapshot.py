"""Field snapshot file format.

One JSON header line, then ``N^d`` little-endian float64 (re, im) pairs in
row-major order:

    {"format_version": 1, "d": ..., "N": [...], "L": [...], "time": ...,
     "lambda": ..., "mu": ..., "alpha": ..., "epsilon": ...}\\n
    <raw payload>
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import FieldState, Geometry
from .nonlinearity import NonlinearitySpec

__all__ = ["write_snapshot", "read_snapshot"]

FORMAT_VERSION = 1


def write_snapshot(path, state: FieldState, spec: NonlinearitySpec) -> None:
    geometry = state.geometry
    header = {
        "format_version": FORMAT_VERSION,
        "d": geometry.d,
        "N": [geometry.N] * geometry.d,
        "L": [geometry.L] * geometry.d,
        "time": state.time,
        "lambda": spec.lam,
        "mu": spec.mu,
        "alpha": spec.alpha,
        "epsilon": spec.epsilon,
    }
    pairs = np.empty((geometry.size, 2))
    flat = state.values.ravel()
    pairs[:, 0] = flat.real
    pairs[:, 1] = flat.imag
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("ascii") + b"\n")
        fh.write(pairs.astype("<f8").tobytes())


def read_snapshot(path) -> tuple[FieldState, dict]:
    """Returns the field and the raw header dict."""
    raw = Path(path).read_bytes()
    newline = raw.index(b"\n")
    header = json.loads(raw[:newline].decode("ascii"))
    if header.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported snapshot format version {header.get('format_version')}")
    d = header["d"]
    n_axis = header["N"]
    l_axis = header["L"]
    if len(set(n_axis)) != 1 or len(set(l_axis)) != 1:
        raise ValueError("anisotropic snapshot grids are not supported")
    geometry = Geometry(d=d, L=float(l_axis[0]), N=int(n_axis[0]))
    payload = np.frombuffer(raw[newline + 1:], dtype="<f8")
    if payload.size != 2 * geometry.size:
        raise ValueError(
            f"snapshot payload has {payload.size} floats, expected {2 * geometry.size}")
    pairs = payload.reshape(geometry.size, 2)
    values = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(geometry.shape)
    return FieldState(geometry, values, float(header["time"])), header
