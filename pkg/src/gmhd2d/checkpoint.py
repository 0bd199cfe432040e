"""Binary checkpoints of (w, j).

Layout (all little-endian)::

    b"GMHD2\\0"              6-byte magic
    version                  1 byte
    n                        int64
    time, nu, eta, alpha, beta   float64 x 5
    w coefficients           n*n complex128, row-major, (re, im) interleaved
    j coefficients           same
"""

from __future__ import annotations

import os
import struct
import tempfile
from pathlib import Path

import numpy as np

from .errors import CorruptHeader, VersionMismatch
from .mhd import MhdState, SimParams
from .spectral import ScalarField, get_grid

MAGIC = b"GMHD2\0"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<q5d")
_DTYPE = np.dtype("<c16")


def save_checkpoint(state: MhdState, params: SimParams, path) -> None:
    """Write atomically: a temporary file in the target directory is renamed into place."""
    path = Path(path)
    n = state.grid.n
    if n != params.n:
        raise ValueError(f"state grid n={n} does not match params.n={params.n}")
    payload = b"".join(
        [
            MAGIC,
            bytes([FORMAT_VERSION]),
            _HEADER.pack(n, state.time, params.nu, params.eta, params.alpha, params.beta),
            np.ascontiguousarray(state.w.coeffs, dtype=_DTYPE).tobytes(),
            np.ascontiguousarray(state.j.coeffs, dtype=_DTYPE).tobytes(),
        ]
    )
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def load_checkpoint(path) -> tuple[MhdState, SimParams]:
    data = Path(path).read_bytes()
    head = len(MAGIC) + 1 + _HEADER.size
    if len(data) < head or data[: len(MAGIC)] != MAGIC:
        raise CorruptHeader(f"{path}: missing GMHD2 magic or truncated header")
    version = data[len(MAGIC)]
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"{path}: checkpoint version {version}, expected {FORMAT_VERSION}")
    n, time, nu, eta, alpha, beta = _HEADER.unpack_from(data, len(MAGIC) + 1)
    if n < 8 or n & (n - 1):
        raise CorruptHeader(f"{path}: invalid grid size {n}")
    count = n * n
    expected = head + 2 * count * _DTYPE.itemsize
    if len(data) != expected:
        raise CorruptHeader(f"{path}: expected {expected} bytes, found {len(data)}")
    arr = np.frombuffer(data, dtype=_DTYPE, count=2 * count, offset=head)
    grid = get_grid(n)
    w = ScalarField(grid, arr[:count].reshape(n, n).astype(complex))
    j = ScalarField(grid, arr[count:].reshape(n, n).astype(complex))
    return MhdState(w, j, time), SimParams(nu=nu, eta=eta, alpha=alpha, beta=beta, n=n)
