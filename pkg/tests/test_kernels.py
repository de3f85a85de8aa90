import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from drgalg import _fallback, kernels

BACKENDS = [("python", _fallback)]
try:
    from drgalg import _kernels
except ImportError:  # extension not built
    pass
else:
    BACKENDS.append(("cython", _kernels))

backend_ids = [name for name, _ in BACKENDS]
P = 4194301

sym = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.floats(-10, 10, allow_nan=False, width=64), min_size=n * n, max_size=n * n)
    .map(lambda xs: np.array(xs).reshape(n, n)).map(lambda a: (a + a.T) / 2))


@pytest.mark.parametrize("name,mod", BACKENDS, ids=backend_ids)
@settings(max_examples=40, deadline=None)
@given(a=sym)
def test_jacobi_matches_lapack(name, mod, a):
    w, v, _ = mod.jacobi_eigh(a)
    scale = max(1.0, float(np.max(np.abs(a))))
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(a), atol=1e-10 * scale)
    assert np.allclose(v.T @ v, np.eye(len(a)), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.T, a, atol=1e-9 * scale)


@pytest.mark.parametrize("name,mod", BACKENDS, ids=backend_ids)
def test_jacobi_zero_and_diagonal(name, mod):
    w, v, sweeps = mod.jacobi_eigh(np.zeros((3, 3)))
    assert np.array_equal(w, np.zeros(3)) and sweeps == 0
    w, _, sweeps = mod.jacobi_eigh(np.diag([3.0, 1.0, 2.0]))
    assert list(w) == [3.0, 1.0, 2.0] and sweeps == 0


def _rank_mod(m, p):
    """Oracle: elimination with Python integers."""
    rows = [[int(x) % p for x in r] for r in m.tolist()]
    rank = 0
    for col in range(m.shape[1]):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


ints = st.tuples(st.integers(1, 8), st.integers(1, 8)).flatmap(
    lambda s: st.lists(st.integers(-P, P), min_size=s[0] * s[1], max_size=s[0] * s[1])
    .map(lambda xs: np.array(xs, dtype=np.int64).reshape(s)))


@pytest.mark.parametrize("name,mod", BACKENDS, ids=backend_ids)
@settings(max_examples=60, deadline=None)
@given(m=ints)
def test_rref_mod_p(name, mod, m):
    red, piv = mod.rref_mod_p(m, P)
    assert len(piv) == _rank_mod(m, P)
    red = np.asarray(red)
    for r, c in enumerate(piv):
        assert red[r, c] == 1
        assert np.count_nonzero(red[:, c]) == 1
    assert not np.any(red[len(piv):])


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernels not built")
def test_backends_agree_exactly_on_rref():
    rng = np.random.default_rng(3)
    m = rng.integers(0, P, size=(20, 30))
    m[10:] = (m[:10] * 3) % P
    a, pa = _fallback.rref_mod_p(m, P)
    b, pb = _kernels.rref_mod_p(m, P)
    assert pa == list(pb) and np.array_equal(np.asarray(a), np.asarray(b))


def test_env_var_forces_fallback():
    code = "import drgalg.kernels as k; print(k.BACKEND)"
    env = {**os.environ, "DRGALG_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("python", "cython")
