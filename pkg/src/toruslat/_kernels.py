"""Hot inner loops: group tables, subgroup closure, action checks, Smith form.

Every kernel exists in two flavours.  The numba flavour is compiled with
``njit`` and written as explicit loops; the numpy flavour is vectorised and
runs uncompiled.  ``_accel.USE_NUMBA`` picks one at import time.  The Smith
normal form body is written once in array syntax that both numba and numpy
(including ``object`` dtype for exact big-integer arithmetic) accept.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# Entries are kept within +-2**31 on the int64 path so that any product of
# two entries fits in 63 bits; leaving the range triggers the exact path.
INT64_GUARD = 2**31


# ---------------------------------------------------------------------------
# multiplication table from the right-multiplication-by-generator table


def _mult_table_loops(R, parent, gen):
    n = R.shape[0]
    T = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        T[i, 0] = i
        for j in range(1, n):
            T[i, j] = R[T[i, parent[j]], gen[j]]
    return T


def _mult_table_vec(R, parent, gen):
    n = R.shape[0]
    T = np.empty((n, n), dtype=np.int64)
    T[:, 0] = np.arange(n)
    for j in range(1, n):
        T[:, j] = R[T[:, parent[j]], gen[j]]
    return T


# ---------------------------------------------------------------------------
# subgroup generated by a set of element indices


def _closure_loops(T, gens):
    n = T.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    mask[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        x = queue[head]
        head += 1
        for s in gens:
            y = T[x, s]
            if not mask[y]:
                mask[y] = True
                queue[tail] = y
                tail += 1
    return mask


def _closure_vec(T, gens):
    n = T.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    mask[0] = True
    if len(gens) == 0:
        return mask
    while True:
        members = np.nonzero(mask)[0]
        grown = mask.copy()
        grown[T[members][:, gens].ravel()] = True
        if grown.sum() == mask.sum():
            return mask
        mask = grown


# ---------------------------------------------------------------------------
# element orders


def _element_orders_loops(T):
    n = T.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        x = i
        k = 1
        while x != 0:
            x = T[x, i]
            k += 1
        out[i] = k
    return out


def _element_orders_vec(T):
    n = T.shape[0]
    idx = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while True:
        hit = (cur == 0) & (out == 0)
        out[hit] = k
        if (out > 0).all():
            return out
        cur = T[cur, idx]
        k += 1


# ---------------------------------------------------------------------------
# exhaustive homomorphism check  action[T[i, j]] == action[i] @ action[j]


def _is_homomorphism_loops(T, action):
    n = T.shape[0]
    r = action.shape[1]
    for i in range(n):
        for j in range(n):
            target = action[T[i, j]]
            for a in range(r):
                for b in range(r):
                    acc = 0
                    for c in range(r):
                        acc += action[i, a, c] * action[j, c, b]
                    if acc != target[a, b]:
                        return False
    return True


def _is_homomorphism_vec(T, action):
    n = T.shape[0]
    for i in range(n):
        if not np.array_equal(np.matmul(action[i], action), action[T[i]]):
            return False
    return True


# ---------------------------------------------------------------------------
# Smith normal form


def _swap_rows(A, L, i, j):
    if i != j:
        tmp = A[i, :].copy()
        A[i, :] = A[j, :]
        A[j, :] = tmp
        if L.shape[1] > 0:
            tmp2 = L[i, :].copy()
            L[i, :] = L[j, :]
            L[j, :] = tmp2


def _swap_cols(A, R, i, j):
    if i != j:
        tmp = A[:, i].copy()
        A[:, i] = A[:, j]
        A[:, j] = tmp
        if R.shape[0] > 0:
            tmp2 = R[:, i].copy()
            R[:, i] = R[:, j]
            R[:, j] = tmp2


def _out_of_range(X, limit):
    if X.size == 0:
        return False
    return np.abs(X).max() > limit


def _snf_body(A, L, R, limit):
    """Diagonalise ``A`` in place with divisibility chain.

    Row operations are mirrored on ``L`` (m x p), column operations on
    ``R`` (q x n).  Returns 1 as soon as an entry exceeds ``limit``
    (``limit <= 0`` disables the check), else 0.
    """
    m = A.shape[0]
    n = A.shape[1]
    t = 0
    while t < m and t < n:
        sub = np.abs(A[t:, t:])
        big = sub.max()
        if big == 0:
            break
        k = np.argmin(np.where(sub == 0, big + 1, sub))
        w = n - t
        _swap_rows(A, L, t, t + k // w)
        _swap_cols(A, R, t, t + k % w)
        while True:
            p = A[t, t]
            q = A[t + 1:, t] // p
            if np.any(q != 0):
                A[t + 1:, t:] -= np.outer(q, A[t, t:])
                if L.shape[1] > 0:
                    L[t + 1:, :] -= np.outer(q, L[t, :])
            q = A[t, t + 1:] // p
            if np.any(q != 0):
                A[t:, t + 1:] -= np.outer(A[t:, t], q)
                if R.shape[0] > 0:
                    R[:, t + 1:] -= np.outer(R[:, t], q)
            if limit > 0:
                if (_out_of_range(A[t:, t:], limit) or _out_of_range(L, limit)
                        or _out_of_range(R, limit)):
                    return 1
            col = np.abs(A[t + 1:, t])
            row = np.abs(A[t, t + 1:])
            cmax = col.max() if col.size > 0 else 0
            rmax = row.max() if row.size > 0 else 0
            if cmax > 0 or rmax > 0:
                top = max(cmax, rmax) + 1
                ci = np.argmin(np.where(col == 0, top, col)) if col.size > 0 else 0
                ri = np.argmin(np.where(row == 0, top, row)) if row.size > 0 else 0
                cval = col[ci] if cmax > 0 else top
                rval = row[ri] if rmax > 0 else top
                if cval <= rval:
                    _swap_rows(A, L, t, t + 1 + ci)
                else:
                    _swap_cols(A, R, t, t + 1 + ri)
                continue
            rest = A[t + 1:, t + 1:] % p
            nz = np.nonzero(rest)
            if len(nz[0]) > 0:
                i = t + 1 + nz[0][0]
                A[t, :] += A[i, :]
                if L.shape[1] > 0:
                    L[t, :] += L[i, :]
                if limit > 0 and (_out_of_range(A[t, :], limit)
                                  or _out_of_range(L[t, :], limit)):
                    return 1
                continue
            break
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if L.shape[1] > 0:
                L[t, :] = -L[t, :]
        t += 1
    return 0


if USE_NUMBA:
    mult_table = njit(_mult_table_loops)
    closure = njit(_closure_loops)
    element_orders = njit(_element_orders_loops)
    is_homomorphism = njit(_is_homomorphism_loops)
    _swap_rows = njit(_swap_rows)
    _swap_cols = njit(_swap_cols)
    _out_of_range = njit(_out_of_range)
    _snf_int64 = njit(_snf_body)
else:
    mult_table = _mult_table_vec
    closure = _closure_vec
    element_orders = _element_orders_vec
    is_homomorphism = _is_homomorphism_vec
    _snf_int64 = _snf_body


def _snf_exact(A, L, R):
    """Big-integer twin of ``_snf_body`` for Python-int object arrays.

    Kept separate because the compiled swap helpers reject object arrays.
    """
    m, n = A.shape
    t = 0
    while t < m and t < n:
        sub = np.abs(A[t:, t:])
        big = sub.max()
        if big == 0:
            break
        k = int(np.argmin(np.where(sub == 0, big + 1, sub)))
        w = n - t
        _py_swap_rows(A, L, t, t + k // w)
        _py_swap_cols(A, R, t, t + k % w)
        while True:
            p = A[t, t]
            q = A[t + 1:, t] // p
            if np.any(q != 0):
                A[t + 1:, t:] -= np.outer(q, A[t, t:])
                if L.shape[1]:
                    L[t + 1:, :] -= np.outer(q, L[t, :])
            q = A[t, t + 1:] // p
            if np.any(q != 0):
                A[t:, t + 1:] -= np.outer(A[t:, t], q)
                if R.shape[0]:
                    R[:, t + 1:] -= np.outer(R[:, t], q)
            col = np.abs(A[t + 1:, t])
            row = np.abs(A[t, t + 1:])
            cmax = col.max() if col.size else 0
            rmax = row.max() if row.size else 0
            if cmax > 0 or rmax > 0:
                top = max(cmax, rmax) + 1
                ci = int(np.argmin(np.where(col == 0, top, col))) if col.size else 0
                ri = int(np.argmin(np.where(row == 0, top, row))) if row.size else 0
                cval = col[ci] if cmax > 0 else top
                rval = row[ri] if rmax > 0 else top
                if cval <= rval:
                    _py_swap_rows(A, L, t, t + 1 + ci)
                else:
                    _py_swap_cols(A, R, t, t + 1 + ri)
                continue
            rest = A[t + 1:, t + 1:] % p
            nz = np.nonzero(rest)
            if len(nz[0]):
                i = t + 1 + int(nz[0][0])
                A[t, :] += A[i, :]
                if L.shape[1]:
                    L[t, :] += L[i, :]
                continue
            break
        if A[t, t] < 0:
            A[t, :] = -A[t, :]
            if L.shape[1]:
                L[t, :] = -L[t, :]
        t += 1
    return 0


def _py_swap_rows(A, L, i, j):
    if i != j:
        A[[i, j], :] = A[[j, i], :]
        if L.shape[1]:
            L[[i, j], :] = L[[j, i], :]


def _py_swap_cols(A, R, i, j):
    if i != j:
        A[:, [i, j]] = A[:, [j, i]]
        if R.shape[0]:
            R[:, [i, j]] = R[:, [j, i]]


def _fits_int64(X):
    if X.size == 0:
        return True
    if X.dtype != object:
        return bool(np.abs(X.astype(np.int64)).max() <= INT64_GUARD)
    return max(abs(int(v)) for v in X.flat) <= INT64_GUARD


def smith_reduce(A, L=None, R=None):
    """Return ``(D, L', R')`` with ``D = U A V`` diagonal, ``L' = U L``, ``R' = R V``.

    Tries the int64 kernel first and falls back to exact Python integers
    (``object`` arrays) when entries leave the guarded range.  The outputs
    are ``object`` arrays only when the fallback was needed.
    """
    A = np.asarray(A)
    m, n = A.shape
    if L is None:
        L = np.zeros((m, 0), dtype=np.int64)
    if R is None:
        R = np.zeros((0, n), dtype=np.int64)
    L = np.asarray(L)
    R = np.asarray(R)
    if _fits_int64(A) and _fits_int64(L) and _fits_int64(R):
        A64 = np.array(A, dtype=np.int64)
        L64 = np.array(L, dtype=np.int64)
        R64 = np.array(R, dtype=np.int64)
        if _snf_int64(A64, L64, R64, INT64_GUARD) == 0:
            return A64, L64, R64
    Ao = _to_object(A)
    Lo = _to_object(L)
    Ro = _to_object(R)
    _snf_exact(Ao, Lo, Ro)
    return Ao, Lo, Ro


def _to_object(X):
    out = np.empty(X.shape, dtype=object)
    flat = out.reshape(-1)
    for k, v in enumerate(np.asarray(X).reshape(-1)):
        flat[k] = int(v)
    return out


# ---------------------------------------------------------------------------
# exact matrix product


_FLOAT_EXACT = 2**52
_INT_EXACT = 2**62


def exact_matmul(A, B):
    """Integer matrix product that never overflows.

    Uses float64 BLAS when the result is provably exact, int64 when it
    provably fits, and Python integers otherwise.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    inner = A.shape[-1]
    if A.size == 0 or B.size == 0 or inner == 0:
        shape = A.shape[:-1] + B.shape[-1:]
        dt = object if (A.dtype == object or B.dtype == object) else np.int64
        return np.zeros(shape, dtype=dt)
    if A.dtype != object and B.dtype != object:
        amax = int(np.abs(A).max())
        bmax = int(np.abs(B).max())
        bound = amax * bmax * inner
        if bound < _FLOAT_EXACT:
            prod = np.matmul(A.astype(np.float64), B.astype(np.float64))
            return np.rint(prod).astype(np.int64)
        if bound < _INT_EXACT:
            return np.matmul(A.astype(np.int64), B.astype(np.int64))
    return np.matmul(_to_object(A), _to_object(B))
