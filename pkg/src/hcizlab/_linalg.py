"""Exact and modular linear algebra on small dense integer matrices.

Fraction-free (Bareiss) elimination keeps every intermediate an integer, so
the cost is governed by the size of the determinant rather than by the
denominators that plain Gaussian elimination over ``Fraction`` would create.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


def bareiss_det(matrix) -> int:
    """Exact determinant of a square integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                num = rowi[j] * akk - aik * rowk[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division not exact"
                rowi[j] = q
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def bareiss_solve(matrix, rhs_columns):
    """Solve ``matrix @ X = rhs`` exactly for integer inputs.

    Fraction-free Gauss-Jordan on the augmented matrix. Returns a list of
    rows of ``Fraction``. Raises :class:`SingularMatrixError` if singular.
    """
    n = len(matrix)
    m = len(rhs_columns[0]) if n else 0
    a = [list(map(int, matrix[i])) + list(map(int, rhs_columns[i])) for i in range(n)]
    width = n + m
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[swap] = a[swap], a[k]
        rowk = a[k]
        akk = rowk[k]
        for i in range(n):
            if i == k:
                continue
            rowi = a[i]
            aik = rowi[k]
            if aik == 0:
                # the update then reduces to a rescale by akk / prev
                for j in range(k + 1, width):
                    q, rem = divmod(rowi[j] * akk, prev)
                    assert rem == 0
                    rowi[j] = q
                continue
            for j in range(k + 1, width):
                q, rem = divmod(rowi[j] * akk - aik * rowk[j], prev)
                assert rem == 0, "Bareiss division not exact"
                rowi[j] = q
            rowi[k] = 0
        # rows above k had their diagonal entries rescaled as well
        for i in range(k):
            a[i][i] = akk
        prev = akk
    det = prev
    return [[Fraction(a[i][n + j], det) for j in range(m)] for i in range(n)]


def exact_inverse(matrix):
    n = len(matrix)
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return bareiss_solve(matrix, eye)


def matmul_exact(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _inv_mod(x: np.ndarray, p: int) -> np.ndarray:
    """Elementwise modular inverse by Fermat's little theorem."""
    result = np.ones_like(x)
    base = x % p
    e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def batched_det_mod(mats: np.ndarray, p: int) -> np.ndarray:
    """Determinants modulo a prime ``p < 2**31`` of a stack of square matrices.

    Zero pivots are handled per matrix by a row swap (rare for random
    evaluation points, so the Python-level loop is almost never entered).
    """
    a = np.array(mats, dtype=np.int64) % p
    batch, n, _ = a.shape
    det = np.ones(batch, dtype=np.int64)
    for k in range(n):
        piv = a[:, k, k]
        zero = piv == 0
        if zero.any():
            for b in np.nonzero(zero)[0]:
                rows = np.nonzero(a[b, k + 1 :, k])[0]
                if rows.size == 0:
                    det[b] = 0
                    a[b, k, k] = 1  # neutral pivot; det already fixed at 0
                    continue
                r = k + 1 + rows[0]
                a[b, [k, r]] = a[b, [r, k]]
                det[b] = (p - det[b]) % p
            piv = a[:, k, k]
        det = det * piv % p
        inv = _inv_mod(piv, p)
        factors = a[:, k + 1 :, k] * inv[:, None] % p
        block = a[:, k + 1 :, k + 1 :]
        block -= factors[:, :, None] * a[:, k, None, k + 1 :] % p
        block[block < 0] += p
    return det


def det_mod(matrix, p: int) -> int:
    return int(batched_det_mod(np.asarray(matrix, dtype=np.int64)[None], p)[0])
