import numpy as np
import pytest
from hypothesis import given, strategies as st

from fsignature import kernels

IMPLS = sorted(kernels.IMPLEMENTATIONS)
P_CHOICES = [2, 3, 5, 7, 29, 65521, 2147483647]


def rank_reference(rows: list[list[int]], p: int) -> int:
    """Row reduction on Python ints."""
    M = [[v % p for v in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] * inv % p
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


matrices = st.tuples(st.sampled_from(P_CHOICES), st.integers(1, 9), st.integers(1, 9)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.lists(
        st.lists(st.integers(0, t[0] - 1) | st.just(0), min_size=t[2], max_size=t[2]),
        min_size=t[1], max_size=t[1])))


@pytest.mark.parametrize("impl", IMPLS)
@given(matrices)
def test_rank_matches_reference(impl, case):
    p, rows = case
    rank = kernels.IMPLEMENTATIONS[impl][0]
    assert rank(np.array(rows, dtype=np.int64), p) == rank_reference(rows, p)


def test_rank_of_low_rank_product():
    rng = np.random.default_rng(7)
    p = 101
    A = rng.integers(0, p, (40, 6))
    B = rng.integers(0, p, (6, 35))
    M = (A @ B) % p
    for impl in IMPLS:
        assert kernels.IMPLEMENTATIONS[impl][0](M, p) == rank_reference(M.tolist(), p) <= 6


@pytest.mark.parametrize("impl", IMPLS)
@given(st.sampled_from(P_CHOICES), st.lists(st.integers(0, 2**31), max_size=30),
       st.lists(st.integers(0, 2**31), max_size=30), st.integers(1, 40))
def test_mul_trunc_matches_python(impl, p, a, b, n):
    a = [x % p for x in a] or [0]
    b = [x % p for x in b] or [0]
    expected = [0] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < n:
                expected[i + j] = (expected[i + j] + x * y) % p
    mul = kernels.IMPLEMENTATIONS[impl][2]
    out = mul(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64), n, p)
    assert out.tolist() == expected


@given(st.sampled_from([2, 3, 5, 7, 11, 13, 65521, 2147483647]), st.integers(1, 30), st.integers(1, 30),
       st.integers(0, 40), st.data())
def test_euclid_implementations_agree(p, alpha, beta, n, data):
    P = data.draw(st.lists(st.integers(0, p - 1), min_size=alpha, max_size=alpha))
    vals = {impl: kernels.IMPLEMENTATIONS[impl][1](np.array(P, dtype=np.int64), alpha, beta, n, p)
            for impl in IMPLS}
    assert len(set(vals.values())) == 1
    m2 = next(iter(vals.values()))
    # the minimal syzygy never exceeds the Koszul pair (X^alpha, Y^beta)
    assert m2 <= alpha + beta


def test_euclid_rejects_empty_box():
    with pytest.raises(ValueError):
        kernels.min_syzygy_degree(np.zeros(1, dtype=np.int64), 0, 3, 2, 5)


def test_active_backend_is_registered():
    assert kernels.ACTIVE in kernels.IMPLEMENTATIONS
    assert ("numba" in kernels.IMPLEMENTATIONS) == kernels.JIT_ENABLED


def test_env_flag_selects_numpy():
    import os
    import subprocess
    import sys
    env = dict(os.environ, FSIGNATURE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from fsignature import kernels; print(kernels.ACTIVE)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
