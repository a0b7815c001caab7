"""Small file helpers: atomic writes, delimited matrices, value columns."""

from __future__ import annotations

import hashlib
import os
import tempfile

import numpy as np

__all__ = [
    "atomic_write_text",
    "save_matrix",
    "load_matrix",
    "save_values",
    "load_values",
    "sha256_of_file",
]


def atomic_write_text(path, text: str):
    """Write text to path via a temp file + rename in the same directory."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def matrix_text(m: np.ndarray) -> str:
    rows = (",".join(_fmt(v) for v in row) for row in np.atleast_2d(m))
    return "\n".join(rows) + "\n"


def save_matrix(path, m: np.ndarray):
    atomic_write_text(path, matrix_text(m))


def load_matrix(path) -> np.ndarray:
    try:
        return np.loadtxt(path, delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ValueError(f"{path}: malformed matrix CSV ({exc})") from None


def save_values(path, values):
    text = "\n".join(_fmt(v) for v in np.atleast_1d(values)) + "\n"
    atomic_write_text(path, text)


def load_values(path) -> np.ndarray:
    out = []
    with open(path) as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                out.append(float(line))
            except ValueError:
                raise ValueError(f"{path}:{i}: malformed float {line!r}") from None
    if not out:
        raise ValueError(f"{path}: no values")
    return np.asarray(out)


def sha256_of_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()
