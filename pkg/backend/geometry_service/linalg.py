from typing import List, Tuple

import numpy as np

from field_service.galois_field import FieldSpec


def row_reduce(field: FieldSpec, matrix) -> Tuple[np.ndarray, List[int]]:
    """Reduced row-echelon form over GF(q), pivoting on the lowest row index.

    Returns the nonzero rows of the RREF and the pivot columns.
    """
    A = np.array(matrix, dtype=field.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("row_reduce expects a 2-D matrix")
    rows, cols = A.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(A[r:, c])
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = field.mul_array(A[r], field.inv_bits(int(A[r, c])))
        factors = A[:, c].copy()
        factors[r] = 0
        A ^= field.mul_array(factors[:, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(field: FieldSpec, matrix) -> int:
    return len(row_reduce(field, matrix)[1])


def nullspace(field: FieldSpec, matrix, ncols: int) -> np.ndarray:
    """Canonical (RREF) basis of {v : M v = 0}; characteristic 2, so no signs."""
    M = np.asarray(matrix, dtype=field.dtype).reshape(-1, ncols)
    R, pivots = row_reduce(field, M)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return np.zeros((0, ncols), dtype=field.dtype)
    basis = np.zeros((len(free), ncols), dtype=field.dtype)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = R[i, f]
    return row_reduce(field, basis)[0]
