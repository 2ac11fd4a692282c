"""Hot loops over small fields: brute-force secrecy counting and grid evaluation.

Each kernel has a numba ``@njit`` version and a pure-numpy version. The numpy
path is used when numba is missing or ``COLLABSHARE_NO_NUMBA`` is set to a
non-empty value other than ``0``. Both paths use int64, so they are only valid
for p < 2**31 (every product of two residues fits).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

INT64_SAFE_MODULUS = 2**31
_CHUNK = 1 << 18


def numba_disabled() -> bool:
    return os.environ.get("COLLABSHARE_NO_NUMBA", "") not in ("", "0")


def default_backend() -> str:
    return "numba" if HAVE_NUMBA and not numba_disabled() else "numpy"


def _resolve(backend: str | None) -> str:
    backend = backend or default_backend()
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown kernel backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


# -- secrecy counting ---------------------------------------------------------


def _secrecy_counts_py(xs, ys, p, t):
    counts = np.zeros(p, np.int64)
    coeffs = np.zeros(t, np.int64)
    n_pts = xs.shape[0]
    total = p**t
    for _ in range(total):
        ok = True
        for m in range(n_pts):
            acc = 0
            for k in range(t - 1, -1, -1):
                acc = (acc * xs[m] + coeffs[k]) % p
            if acc != ys[m]:
                ok = False
                break
        if ok:
            counts[coeffs[0]] += 1
        # odometer step over the coefficient vector
        k = 0
        while k < t:
            coeffs[k] += 1
            if coeffs[k] < p:
                break
            coeffs[k] = 0
            k += 1
    return counts


if HAVE_NUMBA:
    _secrecy_counts_jit = njit(cache=True)(_secrecy_counts_py)


def _secrecy_counts_numpy(xs, ys, p, t):
    counts = np.zeros(p, np.int64)
    total = p**t
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = np.empty((t, idx.size), np.int64)
        rem = idx
        for k in range(t):
            digits[k] = rem % p
            rem = rem // p
        mask = np.ones(idx.size, bool)
        for x, y in zip(xs, ys):
            acc = np.zeros(idx.size, np.int64)
            for k in range(t - 1, -1, -1):
                acc = (acc * x + digits[k]) % p
            mask &= acc == y
        counts += np.bincount(digits[0][mask], minlength=p)
    return counts


def secrecy_counts(xs, ys, p: int, t: int, backend: str | None = None) -> np.ndarray:
    """For every candidate constant term s, count coefficient vectors of length
    ``t`` over Z_p whose polynomial passes through all ``(xs, ys)`` and has
    constant term s. Enumerates all p**t vectors."""
    if p >= INT64_SAFE_MODULUS:
        raise ValueError(f"p = {p} is too large for the int64 kernels")
    xs = np.asarray(xs, dtype=np.int64) % p
    ys = np.asarray(ys, dtype=np.int64) % p
    if _resolve(backend) == "numba":
        return _secrecy_counts_jit(xs, ys, p, t)
    return _secrecy_counts_numpy(xs, ys, p, t)


# -- grid evaluation ----------------------------------------------------------


def _eval_grid_py(coeffs, xs, p):
    out = np.zeros((coeffs.shape[0], xs.shape[0]), np.int64)
    for r in range(coeffs.shape[0]):
        for i in range(xs.shape[0]):
            acc = 0
            for k in range(coeffs.shape[1] - 1, -1, -1):
                acc = (acc * xs[i] + coeffs[r, k]) % p
            out[r, i] = acc
    return out


if HAVE_NUMBA:
    _eval_grid_jit = njit(cache=True)(_eval_grid_py)


def _eval_grid_numpy(coeffs, xs, p):
    acc = np.zeros((coeffs.shape[0], xs.shape[0]), np.int64)
    for k in range(coeffs.shape[1] - 1, -1, -1):
        acc = (acc * xs[None, :] + coeffs[:, k : k + 1]) % p
    return acc


def eval_grid(coeff_rows, xs, p: int, backend: str | None = None) -> np.ndarray:
    """Evaluate several polynomials (rows, constant term first, zero-padded to a
    common width) at every x in ``xs``."""
    if p >= INT64_SAFE_MODULUS:
        raise ValueError(f"p = {p} is too large for the int64 kernels")
    width = max(len(r) for r in coeff_rows)
    coeffs = np.zeros((len(coeff_rows), width), np.int64)
    for i, row in enumerate(coeff_rows):
        coeffs[i, : len(row)] = row
    xs = np.asarray(xs, dtype=np.int64) % p
    if _resolve(backend) == "numba":
        return _eval_grid_jit(coeffs, xs, p)
    return _eval_grid_numpy(coeffs, xs, p)
