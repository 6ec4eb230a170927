import random

import pytest

from sacs import _dsearch_py, kernels


def random_instance(rng, r, n, g, big=1):
    def v(lo=-3, hi=3):
        return rng.randint(lo, hi) * big

    base = [v() for _ in range(n)]
    P = [[v() for _ in range(n)] for _ in range(r)]
    Q = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            Q[i][j] = Q[j][i] = [v() for _ in range(n)]
    R = [v() for _ in range(n)]
    G = []
    for _ in range(g):
        M = [[0] * n for _ in range(n)]
        for k in range(n):
            for l in range(k, n):
                # even entries keep N even most of the time so the scan runs long
                M[k][l] = M[l][k] = 2 * rng.randint(-2, 2) + (rng.random() < 0.1)
        G.append(M)
    rhs = [rng.randint(0, 1) for _ in range(g)]
    return r, n, base, P, Q, R, G, rhs


needs_compiled = pytest.mark.skipif("cython" not in kernels.available_backends(),
                                    reason="compiled kernel not built")


@needs_compiled
def test_backends_agree():
    rng = random.Random(99)
    for _ in range(400):
        inst = random_instance(rng, rng.randint(0, 5), rng.randint(0, 4), rng.randint(0, 4))
        assert kernels.scan(*inst, backend="cython") == _dsearch_py.scan(*inst)


@needs_compiled
def test_overflow_falls_back():
    rng = random.Random(5)
    inst = random_instance(rng, 3, 2, 2, big=10 ** 12)
    assert not kernels.fits_int64(*inst[:7])
    assert kernels.scan(*inst, backend="cython") == _dsearch_py.scan(*inst)


def test_python_backend_always_available():
    assert "python" in kernels.available_backends()
    assert kernels.BACKEND in kernels.available_backends()


def test_empty_search():
    # r = 0: only d = d0 is tried
    assert _dsearch_py.scan(0, 0, [], [], [], [], [], []) == (0, [], None)
    assert _dsearch_py.scan(0, 1, [1], [], [], [0], [[[2]]], [0]) == (-1, [(0, 0, 1)], None)
    assert _dsearch_py.scan(0, 1, [1], [], [], [0], [[[1]]], [0]) == (-1, [], (0, 0, 1))


def test_lexicographic_order():
    # one generator, N = 2 q^2 with q = 1 - 2 a0 - 2 a1: every candidate has bit q^2 mod 2 = 1
    r, n = 2, 1
    args = (r, n, [1], [[0], [0]], [[[0], [0]], [[0], [0]]], [0], [[[2]]], [1])
    found, witnesses, violation = _dsearch_py.scan(*args)
    assert found == 0 and not witnesses and violation is None
    # demand bit 0 instead: no candidate works, witnesses cover every mask in order
    found, witnesses, _ = _dsearch_py.scan(*args[:-1], [0])
    assert found == -1
    assert [w[0] for w in witnesses] == [0, 1, 2, 3]
