"""Exact integer-matrix routines: Smith normal form and integer kernels.

Pure Python over arbitrary-precision ints.  The matrices handled here are
small (relation lattices on at most a dozen generators), so clarity beats
asymptotics.
"""

from __future__ import annotations


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factorization(n: int) -> list[tuple[int, int]]:
    """Sorted (prime, exponent) pairs of n >= 1."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for i in range(len(a))
    ]


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return (d, U, V) with U * mat * V diagonal, U and V unimodular.

    d lists the diagonal entries, nonnegative and with d[i] dividing
    d[i+1].  Zero rows/columns give trailing zero entries.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [list(row) for row in mat]
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")
    u = _identity(m)
    v = _identity(n)
    t = 0
    limit = min(m, n)
    while t < limit:
        # pick the nonzero entry of least magnitude in the trailing block
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        changed = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                for j in range(n):
                    a[i][j] -= q * a[t][j]
                for j in range(m):
                    u[i][j] -= q * u[t][j]
                if a[i][t]:
                    changed = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                for i in range(m):
                    a[i][j] -= q * a[i][t]
                for i in range(n):
                    v[i][j] -= q * v[i][t]
                if a[t][j]:
                    changed = True
        if changed:
            continue
        # force divisibility of every remaining entry by the pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(n):
                a[t][j] += a[offender][j]
            for j in range(m):
                u[t][j] += u[offender][j]
            continue
        t += 1
    for i in range(limit):
        if a[i][i] < 0:
            for j in range(n):
                a[i][j] = -a[i][j]
            for j in range(m):
                u[i][j] = -u[i][j]
    d = [a[i][i] for i in range(limit)]
    return d, u, v


def kernel_basis(mat: list[list[int]]) -> list[list[int]]:
    """Basis (as column vectors) of the integer kernel of mat."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    d, _, v = smith_normal_form(mat)
    basis = []
    for j in range(n):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            basis.append([v[i][j] for i in range(n)])
    return basis
