"""Pure-Python Spin^c class search; reference for the compiled ``_dsearch``.

Candidates ``d = d0 + 2 sum a_i e_i`` are enumerated for ``a`` in ``{0,1}^r``,
lexicographically with ``a_0`` most significant, i.e. ``mask`` ascending with
``a_i = (mask >> (r - 1 - i)) & 1``.  Only free coordinates of H^4 enter: the
Kronecker pairing kills every product with a torsion factor.

Inputs (all exact ints):
    base  free coords of q1'                                  length n
    P     free coords of e_i · d0                             r x n
    Q     free coords of e_i · e_j                            r x r x n
    R     free coords of q1(M)                                length n
    G     per generator x, G[x][k][l] = <x f_k f_l, [M]>      g x n x n
    rhs   per generator, right-hand bit of the congruence     length g

For each candidate, ``q = base - 2 (sum a_i P_i + sum a_i a_j Q_ij)`` and
``N_x = q^T G_x (q - R)``.  Returns ``(found, witnesses, violation)``:
``found`` is the first mask whose every ``N_x / 2`` matches ``rhs`` mod 2
(or -1), ``witnesses`` lists ``(mask, x, N_x / 2 mod 2)`` for the first failing
generator of each rejected mask, and ``violation`` is ``(mask, x, N_x)`` for
the first odd ``N_x`` met (the scan stops there).
"""

from __future__ import annotations


def scan(r, n, base, P, Q, R, G, rhs):
    g = len(G)
    witnesses = []
    for mask in range(1 << r):
        a = [(mask >> (r - 1 - i)) & 1 for i in range(r)]
        q = list(base)
        for i in range(r):
            if not a[i]:
                continue
            Pi = P[i]
            for k in range(n):
                q[k] -= 2 * Pi[k]
            for j in range(r):
                if a[j]:
                    Qij = Q[i][j]
                    for k in range(n):
                        q[k] -= 2 * Qij[k]
        qr = [q[k] - R[k] for k in range(n)]
        ok = True
        for x in range(g):
            Gx = G[x]
            N = 0
            for k in range(n):
                if q[k]:
                    row = Gx[k]
                    N += q[k] * sum(row[l] * qr[l] for l in range(n))
            if N % 2:
                return -1, witnesses, (mask, x, N)
            bit = (N // 2) % 2
            if bit != rhs[x]:
                witnesses.append((mask, x, bit))
                ok = False
                break
        if ok:
            return mask, witnesses, None
    return -1, witnesses, None
