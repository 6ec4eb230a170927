# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Spin^c class search; same contract as ``sacs._dsearch_py.scan``.

Arithmetic is in 64-bit integers.  Callers must check that every
intermediate fits (``sacs.kernels`` does so before dispatching here).
"""

from cpython.array cimport array
from libc.stdlib cimport malloc, free


def _flatten(obj, list out):
    if isinstance(obj, (list, tuple)):
        for item in obj:
            _flatten(item, out)
    else:
        out.append(obj)


cdef array _flat(object nested, Py_ssize_t size):
    cdef list vals = []
    _flatten(nested, vals)
    if len(vals) != size:
        raise ValueError(f"expected {size} entries, got {len(vals)}")
    return array("q", vals + [0])


def scan(int r, int n, base, P, Q, R, G, rhs):
    cdef int g = len(G)
    cdef array abase = _flat(base, n)
    cdef array aP = _flat(P, r * n)
    cdef array aQ = _flat(Q, r * r * n)
    cdef array aR = _flat(R, n)
    cdef array aG = _flat(G, g * n * n)
    cdef array arhs = _flat(rhs, g)
    cdef long long *pbase = abase.data.as_longlongs
    cdef long long *pP = aP.data.as_longlongs
    cdef long long *pQ = aQ.data.as_longlongs
    cdef long long *pR = aR.data.as_longlongs
    cdef long long *pG = aG.data.as_longlongs
    cdef long long *prhs = arhs.data.as_longlongs

    cdef long long *q = <long long *> malloc((2 * n + 1) * sizeof(long long))
    cdef long long *qr = q + n
    cdef int *a = <int *> malloc((r + 1) * sizeof(int))
    if q == NULL or a == NULL:
        free(q)
        free(a)
        raise MemoryError()

    cdef long long mask, total = (<long long> 1) << r
    cdef long long N, inner, bit
    cdef int i, j, k, l, x, ok
    cdef long long *Gx
    witnesses = []
    try:
        mask = 0
        while mask < total:
            for i in range(r):
                a[i] = (mask >> (r - 1 - i)) & 1
            for k in range(n):
                q[k] = pbase[k]
            for i in range(r):
                if not a[i]:
                    continue
                for k in range(n):
                    q[k] -= 2 * pP[i * n + k]
                for j in range(r):
                    if a[j]:
                        for k in range(n):
                            q[k] -= 2 * pQ[(i * r + j) * n + k]
            for k in range(n):
                qr[k] = q[k] - pR[k]
            ok = 1
            for x in range(g):
                Gx = pG + x * n * n
                N = 0
                for k in range(n):
                    if q[k]:
                        inner = 0
                        for l in range(n):
                            inner += Gx[k * n + l] * qr[l]
                        N += q[k] * inner
                if N & 1:
                    return -1, witnesses, (mask, x, N)
                # floor division by 2, then parity, matching Python semantics for negatives
                bit = (N >> 1) & 1
                if bit != prhs[x]:
                    witnesses.append((mask, x, bit))
                    ok = 0
                    break
            if ok:
                return mask, witnesses, None
            mask += 1
        return -1, witnesses, None
    finally:
        free(q)
        free(a)
