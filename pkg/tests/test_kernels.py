import itertools

import numpy as np
import pytest

from collabshare import _kernels


def brute_counts(xs, ys, p, t):
    counts = [0] * p
    for coeffs in itertools.product(range(p), repeat=t):
        if all(sum(c * x**k for k, c in enumerate(coeffs)) % p == y for x, y in zip(xs, ys)):
            counts[coeffs[0]] += 1
    return counts


CASES = [
    ([1, 2], [6, 1], 7, 3),
    ([], [], 7, 3),
    ([1, 2, 3], [6, 1, 0], 7, 3),
    ([3], [4], 11, 2),
    ([1, 4, 6], [6, 6, 5], 7, 4),
    ([2, 5], [0, 0], 5, 1),
]


@pytest.mark.parametrize("backend", ["numba", "numpy"])
@pytest.mark.parametrize("xs, ys, p, t", CASES)
def test_secrecy_counts_match_brute_force(backend, xs, ys, p, t):
    got = _kernels.secrecy_counts(xs, ys, p, t, backend=backend)
    assert list(got) == brute_counts(xs, ys, p, t)


def test_uncompiled_kernel_matches():
    xs, ys = np.array([1, 2]), np.array([6, 1])
    assert list(_kernels._secrecy_counts_py(xs, ys, 7, 3)) == brute_counts([1, 2], [6, 1], 7, 3)


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_eval_grid(backend):
    rows = [[1, 3, 2], [3, 5, 6, 6]]
    got = _kernels.eval_grid(rows, range(7), 7, backend=backend)
    expected = [[sum(c * x**k for k, c in enumerate(r)) % 7 for x in range(7)] for r in rows]
    assert got.tolist() == expected


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("COLLABSHARE_NO_NUMBA", "1")
    assert _kernels.default_backend() == "numpy"
    monkeypatch.setenv("COLLABSHARE_NO_NUMBA", "0")
    assert _kernels.default_backend() == ("numba" if _kernels.HAVE_NUMBA else "numpy")
    monkeypatch.delenv("COLLABSHARE_NO_NUMBA")
    assert _kernels.default_backend() == ("numba" if _kernels.HAVE_NUMBA else "numpy")


def test_rejects_unknown_backend_and_huge_modulus():
    with pytest.raises(ValueError):
        _kernels.secrecy_counts([], [], 7, 2, backend="cuda")
    with pytest.raises(ValueError):
        _kernels.eval_grid([[1]], [0], 2**61 - 1)
